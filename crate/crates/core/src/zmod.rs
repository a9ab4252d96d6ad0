//! Linear algebra over the ring Z/N via Howell normal form.
//!
//! The Howell form of a row module is an echelon basis with the extra
//! property that, for every column `c`, the basis rows whose pivot lies at or
//! after `c` span exactly the submodule of vectors vanishing before `c`. That
//! makes membership, canonical (lexicographically least) coset
//! representatives and kernels straightforward even when N is composite.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// A submodule of `(Z/N)^cols` in Howell form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Howell {
    modulus: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn combine(n: u64, a: i128, x: &[u64], b: i128, y: &[u64]) -> Vec<u64> {
    let n = n as i128;
    x.iter()
        .zip(y)
        .map(|(&p, &q)| ((a * p as i128 + b * q as i128).rem_euclid(n)) as u64)
        .collect()
}

/// A unit `u` of Z/n with `u * a ≡ gcd(a, n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = a.gcd(&n);
    let (a1, n1) = (a / g, n / g);
    let (_, inv, _) = ext_gcd(a1 as i128, n1 as i128);
    let mut u = inv.rem_euclid(n1.max(1) as i128) as u64;
    while u.gcd(&n) != 1 {
        u += n1;
    }
    u
}

impl Howell {
    /// Howell form of the row span of `rows` in `(Z/modulus)^cols`.
    pub fn new(rows: Vec<Vec<u64>>, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        let n = modulus;
        let mut pending: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length mismatch");
                r.into_iter().map(|x| x % n).collect::<Vec<_>>()
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..cols {
            let mut pivot: Option<Vec<u64>> = None;
            let mut rest = Vec::with_capacity(pending.len());
            for row in pending.drain(..) {
                if row[c] == 0 {
                    rest.push(row);
                    continue;
                }
                pivot = Some(match pivot.take() {
                    None => row,
                    Some(p) => {
                        let (g, s, t) = ext_gcd(p[c] as i128, row[c] as i128);
                        let (a, b) = (p[c] as i128 / g, row[c] as i128 / g);
                        let other = combine(n, b, &p, -a, &row);
                        if other.iter().any(|&x| x != 0) {
                            rest.push(other);
                        }
                        combine(n, s, &p, t, &row)
                    }
                });
            }
            if let Some(p) = pivot {
                let u = normalizing_unit(p[c], n);
                let p = combine(n, u as i128, &p, 0, &p);
                let ann = n / p[c];
                let extra = combine(n, ann as i128, &p, 0, &p);
                if extra.iter().any(|&x| x != 0) {
                    rest.push(extra);
                }
                basis.push(p);
                pivots.push(c);
            }
            pending = rest;
        }
        for i in 0..basis.len() {
            let (c, h) = (pivots[i], basis[i][pivots[i]]);
            for j in 0..i {
                let q = basis[j][c] / h;
                if q != 0 {
                    basis[j] = combine(n, 1, &basis[j], -(q as i128), &basis[i]);
                }
            }
        }
        Howell {
            modulus,
            cols,
            rows: basis,
            pivots,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of elements of the module.
    pub fn size(&self) -> BigUint {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &c)| BigUint::from(self.modulus / r[c]))
            .fold(BigUint::one(), |a, b| a * b)
    }

    /// Lexicographically least member of `v + module`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut w: Vec<u64> = v.iter().map(|x| x % n).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = w[c] / row[c];
            if q != 0 {
                w = combine(n, 1, &w, -(q as i128), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Every element, in a deterministic order. Only sensible for small modules.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.cols]];
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let steps = self.modulus / row[c];
            let mut next = Vec::with_capacity(out.len() * steps as usize);
            for base in &out {
                for k in 0..steps {
                    next.push(combine(self.modulus, 1, base, k as i128, row));
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `{x ∈ (Z/N)^unknowns : Σ_j a[i][j] x_j ≡ 0 for every equation i}`.
pub fn kernel(equations: &[Vec<u64>], unknowns: usize, modulus: u64) -> Howell {
    let (h, e) = transposed_howell(equations, unknowns, modulus);
    let mut rows = Vec::new();
    for (row, &c) in h.rows.iter().zip(&h.pivots) {
        if c >= e {
            rows.push(row[e..].to_vec());
        }
    }
    Howell::new(rows, unknowns, modulus)
}

fn transposed_howell(equations: &[Vec<u64>], unknowns: usize, modulus: u64) -> (Howell, usize) {
    let e = equations.len();
    let rows: Vec<Vec<u64>> = (0..unknowns)
        .map(|j| {
            let mut r: Vec<u64> = equations.iter().map(|eq| eq[j]).collect();
            r.extend((0..unknowns).map(|k| u64::from(j == k)));
            r
        })
        .collect();
    (Howell::new(rows, e + unknowns, modulus), e)
}

/// Lexicographically least solution of `A x ≡ b (mod N)`, if any.
pub fn solve_lexmin(
    equations: &[Vec<u64>],
    rhs: &[u64],
    unknowns: usize,
    modulus: u64,
) -> Option<Vec<u64>> {
    assert_eq!(equations.len(), rhs.len());
    let (h, e) = transposed_howell(equations, unknowns, modulus);
    let n = modulus;
    let mut w: Vec<u64> = rhs.iter().map(|x| x % n).collect();
    w.resize(e + unknowns, 0);
    let mut kernel_rows = Vec::new();
    let mut next = 0;
    for c in 0..e {
        if next < h.pivots.len() && h.pivots[next] == c {
            let row = &h.rows[next];
            if !w[c].is_multiple_of(row[c]) {
                return None;
            }
            let q = w[c] / row[c];
            w = combine(n, 1, &w, -(q as i128), row);
            next += 1;
        } else if w[c] != 0 {
            return None;
        }
    }
    for row in &h.rows[next..] {
        kernel_rows.push(row[e..].to_vec());
    }
    let x: Vec<u64> = w[e..].iter().map(|&s| (n - s % n) % n).collect();
    let ker = Howell::new(kernel_rows, unknowns, modulus);
    Some(ker.reduce(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(len: usize, n: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..n).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn apply(eqs: &[Vec<u64>], x: &[u64], n: u64) -> Vec<u64> {
        eqs.iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % n)
            .collect()
    }

    fn span_brute(rows: &[Vec<u64>], cols: usize, n: u64) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = all_vectors(rows.len(), n)
            .into_iter()
            .map(|c| {
                (0..cols)
                    .map(|j| rows.iter().zip(&c).map(|(r, k)| r[j] * k).sum::<u64>() % n)
                    .collect()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn cases() -> Vec<(Vec<Vec<u64>>, usize, u64)> {
        vec![
            (vec![vec![2, 4], vec![0, 6]], 2, 8),
            (vec![vec![3, 1, 2], vec![6, 2, 4]], 3, 9),
            (vec![vec![4, 2, 0], vec![2, 3, 1]], 3, 6),
            (vec![vec![2, 2], vec![2, 0]], 2, 4),
            (vec![vec![0, 0, 0]], 3, 12),
            (vec![vec![1, 5, 3], vec![2, 2, 2], vec![4, 0, 6]], 3, 8),
        ]
    }

    #[test]
    fn howell_span_matches_brute_force() {
        for (rows, cols, n) in cases() {
            let h = Howell::new(rows.clone(), cols, n);
            let brute = span_brute(&rows, cols, n);
            assert_eq!(h.elements(), brute, "{rows:?} mod {n}");
            assert_eq!(h.size(), BigUint::from(brute.len()));
            for v in all_vectors(cols, n) {
                assert_eq!(h.contains(&v), brute.binary_search(&v).is_ok());
            }
        }
    }

    #[test]
    fn reduce_gives_lexicographic_minimum_of_coset() {
        for (rows, cols, n) in cases() {
            let h = Howell::new(rows.clone(), cols, n);
            let span = span_brute(&rows, cols, n);
            for v in all_vectors(cols, n) {
                let best = span
                    .iter()
                    .map(|s| {
                        v.iter()
                            .zip(s)
                            .map(|(a, b)| (a + b) % n)
                            .collect::<Vec<_>>()
                    })
                    .min()
                    .unwrap();
                assert_eq!(h.reduce(&v), best);
            }
        }
    }

    #[test]
    fn kernel_and_solver_match_brute_force() {
        for (eqs, unknowns, n) in cases() {
            let ker = kernel(&eqs, unknowns, n);
            let brute: Vec<Vec<u64>> = all_vectors(unknowns, n)
                .into_iter()
                .filter(|x| apply(&eqs, x, n).iter().all(|&y| y == 0))
                .collect();
            assert_eq!(ker.elements(), brute);
            for b in all_vectors(eqs.len(), n) {
                let want = all_vectors(unknowns, n)
                    .into_iter()
                    .find(|x| apply(&eqs, x, n) == b);
                assert_eq!(solve_lexmin(&eqs, &b, unknowns, n), want, "{eqs:?} = {b:?}");
            }
        }
    }
}
