use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;

use num_traits::Zero;

use super::modular::SplitPrime;
use super::{checked_lcm, CycloNumber, Rational, RootOfUnity};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single cyclotomic field.
#[derive(Clone)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    conductor: u64,
    entries: Vec<CycloNumber>,
}

impl CycloMatrix {
    /// Build from row-major entries, promoting everything to the lcm of the
    /// entry conductors.
    pub fn new(rows: usize, cols: usize, entries: Vec<CycloNumber>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut conductor = 1;
        for e in &entries {
            conductor = checked_lcm(conductor, e.conductor())?;
        }
        let entries = entries
            .into_iter()
            .map(|e| e.promote(conductor))
            .collect::<Result<_>>()?;
        Ok(CycloMatrix {
            rows,
            cols,
            conductor,
            entries,
        })
    }

    pub fn from_roots(rows: usize, cols: usize, roots: &[RootOfUnity]) -> Result<Self> {
        let mut conductor = 1u64;
        for r in roots {
            conductor = conductor.lcm(&r.order());
        }
        checked_lcm(conductor, 1)?;
        let entries = roots
            .iter()
            .map(|r| r.embed(conductor))
            .collect::<Result<_>>()?;
        Self::new(rows, cols, entries)
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            values
                .iter()
                .map(|&v| CycloNumber::from_integer(1, v))
                .collect(),
        )
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        let entries = (0..n * n)
            .map(|i| {
                if i / n == i % n {
                    CycloNumber::one(conductor)
                } else {
                    CycloNumber::zero(conductor)
                }
            })
            .collect();
        CycloMatrix {
            rows: n,
            cols: n,
            conductor,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloNumber] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[CycloNumber] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        CycloMatrix {
            rows: self.cols,
            cols: self.rows,
            conductor: self.conductor,
            entries,
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        t.entries = t.entries.iter().map(CycloNumber::conj).collect();
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let conductor = checked_lcm(self.conductor, other.conductor)?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CycloNumber::zero(conductor);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, other.cols, entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<CycloNumber> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(CycloNumber::one(self.conductor));
        }
        let mut m = self.clone();
        let (rank, negate) = m.bareiss()?;
        if rank < n {
            return Ok(CycloNumber::zero(self.conductor));
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Exact rank (dimension of the row space).
    ///
    /// Tries a certificate first: the rank modulo split primes is a lower
    /// bound and the number of distinct nonzero rows (or columns) an upper
    /// bound. Falls back to Bareiss elimination when the bounds differ.
    pub fn rank(&self) -> Result<usize> {
        match self.certified_rank() {
            Some(r) => Ok(r),
            None => self.bareiss_rank(),
        }
    }

    pub fn bareiss_rank(&self) -> Result<usize> {
        let mut m = self.clone();
        Ok(m.bareiss()?.0)
    }

    fn certified_rank(&self) -> Option<usize> {
        let upper = self
            .distinct_nonzero_lines(false)
            .min(self.distinct_nonzero_lines(true));
        let mut lower = 0;
        for bound in [1u64 << 31, 1 << 30] {
            let Some(sp) = SplitPrime::below(self.conductor, bound) else {
                continue;
            };
            let Some(image) = self
                .entries
                .iter()
                .map(|x| sp.reduce(x))
                .collect::<Option<Vec<u64>>>()
            else {
                continue;
            };
            lower = lower.max(sp.rank(self.rows, self.cols, image));
            if lower == upper {
                return Some(lower);
            }
        }
        None
    }

    fn distinct_nonzero_lines(&self, columns: bool) -> usize {
        let (outer, inner) = if columns {
            (self.cols, self.rows)
        } else {
            (self.rows, self.cols)
        };
        let mut seen = HashSet::new();
        for a in 0..outer {
            let line: Vec<&[Rational]> = (0..inner)
                .map(|b| {
                    if columns {
                        self.get(b, a)
                    } else {
                        self.get(a, b)
                    }
                    .coeffs()
                })
                .collect();
            if line.iter().any(|c| c.iter().any(|x| !x.is_zero())) {
                seen.insert(line);
            }
        }
        seen.len()
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.is_square() && self.rank()? == self.rows)
    }

    /// In-place Bareiss row echelon form. Returns the rank and whether an odd
    /// number of row swaps happened. After completion on a full-rank square
    /// matrix the last diagonal entry is the determinant up to that sign.
    fn bareiss(&mut self) -> Result<(usize, bool)> {
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = CycloNumber::one(self.conductor);
        let mut r = 0;
        let mut swapped = false;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
                swapped = !swapped;
            }
            let pivot = self.get(r, c).clone();
            let prev_inv = prev.inv()?;
            for i in r + 1..rows {
                let lead = self.get(i, c).clone();
                for j in c + 1..cols {
                    let v = pivot
                        .try_mul(self.get(i, j))?
                        .try_sub(&lead.try_mul(self.get(r, j))?)?
                        .try_mul(&prev_inv)?;
                    self.entries[i * cols + j] = v;
                }
                self.entries[i * cols + c] = CycloNumber::zero(self.conductor);
            }
            prev = pivot;
            r += 1;
        }
        Ok((r, swapped))
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloMatrix[N={}]{}", self.conductor, self)
    }
}

impl fmt::Display for CycloMatrix {
    /// Rows on separate lines with aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Entrywise equality of values; the ambient conductor is not compared.
impl PartialEq for CycloMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_two_by_two() {
        let m = CycloMatrix::from_integers(2, 2, &[1, 1, 1, -1]).unwrap();
        assert_eq!(m.det().unwrap(), CycloNumber::from_integer(1, -2));
    }

    #[test]
    fn rank_of_repeated_rows() {
        let m = CycloMatrix::from_integers(2, 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(m.rank().unwrap(), 1);
        assert_eq!(m.det().unwrap(), CycloNumber::zero(1));
    }

    #[test]
    fn det_needs_square() {
        let m = CycloMatrix::from_integers(1, 2, &[1, 2]).unwrap();
        assert_eq!(m.det(), Err(Error::NotSquare { rows: 1, cols: 2 }));
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn det_with_pivot_swap() {
        // [[0,1],[1,0]] has det -1
        let m = CycloMatrix::from_integers(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(m.det().unwrap(), CycloNumber::from_integer(1, -1));
        let m = CycloMatrix::from_integers(3, 3, &[0, 2, 1, 1, 1, 1, 3, 0, 5]).unwrap();
        // 0*(5-0) - 2*(5-3) + 1*(0-3) = -7
        assert_eq!(m.det().unwrap(), CycloNumber::from_integer(1, -7));
    }

    #[test]
    fn rank_skips_zero_columns() {
        let m = CycloMatrix::from_integers(3, 3, &[0, 1, 2, 0, 2, 4, 0, 0, 1]).unwrap();
        assert_eq!(m.rank().unwrap(), 2);
    }

    #[test]
    fn mixed_conductors_promote() {
        let m = CycloMatrix::new(
            1,
            2,
            vec![
                RootOfUnity::new(3, 1).to_cyclo(),
                RootOfUnity::new(4, 1).to_cyclo(),
            ],
        )
        .unwrap();
        assert_eq!(m.conductor(), 12);
    }
}
