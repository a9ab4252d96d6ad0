//! Finite abelian groups given as products of cyclic factors.
//!
//! Elements are coordinate tuples and are enumerated in lexicographic order;
//! an element's position in that order is its *index*, which is what the
//! dense tables elsewhere in the crate are keyed by.

mod character;
pub mod smith;
mod subgroup;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use character::{character_table, characters, Character};
pub use subgroup::{all_subgroups, Quotient, Subgroup, SubgroupPresentation};

use crate::error::{Error, Result};

/// Default bound on group orders for enumerations.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z/n_1 × … × Z/n_r`. The trivial group is `[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Parse(
                "a group needs at least one cyclic factor".into(),
            ));
        }
        if factors.contains(&0) {
            return Err(Error::Parse("cyclic factors must be at least 1".into()));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![1] }
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup::new(vec![n]).expect("cyclic order must be positive")
    }

    /// Direct product with the factors of `other` appended.
    pub fn product(&self, other: &AbelianGroup) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.rank()])
    }

    /// The `i`-th standard generator (1 in factor `i`).
    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.0[i] = 1 % self.factors[i];
        e
    }

    pub fn element(&self, index: usize) -> Element {
        debug_assert!(index < self.order());
        let mut coords = vec![0; self.rank()];
        let mut rest = index;
        for (c, &n) in coords.iter_mut().zip(&self.factors).rev() {
            *c = (rest % n as usize) as u32;
            rest /= n as usize;
        }
        Element(coords)
    }

    pub fn index(&self, g: &Element) -> usize {
        g.0.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Element> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn contains(&self, g: &Element) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(c, n)| c < n)
    }

    pub fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{g} is not an element of {self}"
            )))
        }
    }

    /// Reduce arbitrary integer coordinates into an element.
    pub fn reduce(&self, coords: &[i64]) -> Element {
        Element(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
                .collect(),
        )
    }

    pub fn add(&self, g: &Element, h: &Element) -> Element {
        Element(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn try_add(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.add(g, h))
    }

    pub fn neg(&self, g: &Element) -> Element {
        Element(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        )
    }

    pub fn sub(&self, g: &Element, h: &Element) -> Element {
        self.add(g, &self.neg(h))
    }

    pub fn scale(&self, k: i64, g: &Element) -> Element {
        let coords: Vec<i64> = g.0.iter().map(|&c| c as i64 * k).collect();
        self.reduce(&coords)
    }

    pub fn element_order(&self, g: &Element) -> u64 {
        g.0.iter().zip(&self.factors).fold(1u64, |acc, (&c, &n)| {
            let n = n as u64;
            acc.lcm(&(n / (c as u64).gcd(&n)))
        })
    }

    /// Cayley table for index-based arithmetic.
    pub fn table(&self) -> GroupTable {
        let n = self.order();
        let elems = self.elements();
        let mut add = Vec::with_capacity(n * n);
        for g in &elems {
            for h in &elems {
                add.push(self.index(&self.add(g, h)));
            }
        }
        let neg = elems.iter().map(|g| self.index(&self.neg(g))).collect();
        GroupTable { order: n, add, neg }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// `Z2`, `Z4xZ2`, `z2xz2xz3`; also `trivial` and `1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "trivial" || t == "1" {
            return Ok(AbelianGroup::trivial());
        }
        let factors = t
            .split('x')
            .map(|part| {
                part.trim()
                    .strip_prefix('z')
                    .and_then(|n| n.parse::<u32>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad group literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::new(factors)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Addition and negation tables on element indices.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn element_orderings() {
        let e = |v: &[u32]| Element(v.to_vec());
        assert_eq!(g("Z2").elements(), vec![e(&[0]), e(&[1])]);
        assert_eq!(
            g("Z2xZ2").elements(),
            vec![e(&[0, 0]), e(&[0, 1]), e(&[1, 0]), e(&[1, 1])]
        );
        assert_eq!(g("Z4").elements().len(), 4);
        assert_eq!(g("Z4").elements()[3], e(&[3]));
    }

    #[test]
    fn index_roundtrip() {
        let grp = g("Z3xZ4xZ2");
        for (i, el) in grp.elements().iter().enumerate() {
            assert_eq!(grp.index(el), i);
        }
    }

    #[test]
    fn arithmetic() {
        let z4 = g("Z4");
        assert_eq!(
            z4.add(&Element(vec![3]), &Element(vec![2])),
            Element(vec![1])
        );
        assert_eq!(z4.neg(&Element(vec![1])), Element(vec![3]));
        assert_eq!(z4.element_order(&Element(vec![2])), 2);
        assert!(matches!(
            z4.try_add(&Element(vec![1]), &Element(vec![1, 0])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn literals() {
        assert_eq!(g("Z4xZ2").factors(), &[4, 2]);
        assert_eq!(g("z2XZ2xz3").factors(), &[2, 2, 3]);
        assert_eq!(g("trivial"), AbelianGroup::trivial());
        assert_eq!(g("Z2xZ4").to_string(), "Z2xZ4");
        assert!("Z0".parse::<AbelianGroup>().is_err());
        assert!("Zx2".parse::<AbelianGroup>().is_err());
        assert!("".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn exponent_and_order() {
        assert_eq!(g("Z4xZ6").exponent(), 12);
        assert_eq!(g("Z4xZ6").order(), 24);
        assert_eq!(AbelianGroup::trivial().order(), 1);
    }
}
