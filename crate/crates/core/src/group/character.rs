use std::fmt;

use super::{AbelianGroup, Element, SubgroupPresentation};
use crate::cyclotomic::{CycloMatrix, RootOfUnity};
use crate::error::{Error, Result};

/// `χ(g) = Π_i ζ_{n_i}^{coords[i]·g_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    parent: AbelianGroup,
    coords: Vec<u32>,
}

impl Character {
    pub fn new(parent: &AbelianGroup, coords: Vec<u32>) -> Result<Self> {
        parent.check(&Element(coords.clone()))?;
        Ok(Character {
            parent: parent.clone(),
            coords,
        })
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Character {
            parent: parent.clone(),
            coords: vec![0; parent.rank()],
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, g: &Element) -> RootOfUnity {
        let l = self.parent.exponent();
        let k = self
            .coords
            .iter()
            .zip(g.coords())
            .zip(self.parent.factors())
            .map(|((&c, &x), &n)| (c as u64 * x as u64 % n as u64) * (l / n as u64))
            .sum::<u64>()
            % l;
        RootOfUnity::new(l, k as i64)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.parent != other.parent {
            return Err(Error::ShapeMismatch(format!(
                "characters of {} and {}",
                self.parent, other.parent
            )));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.parent.factors())
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(Character {
            parent: self.parent.clone(),
            coords,
        })
    }

    pub fn inverse(&self) -> Character {
        let coords = self
            .coords
            .iter()
            .zip(self.parent.factors())
            .map(|(a, n)| (n - a) % n)
            .collect();
        Character {
            parent: self.parent.clone(),
            coords,
        }
    }

    /// Restriction to a subgroup, expressed as a character of the
    /// subgroup's cyclic-factor presentation.
    pub fn restrict(&self, pres: &SubgroupPresentation) -> Result<Character> {
        if pres.subgroup().parent() != &self.parent {
            return Err(Error::ShapeMismatch(
                "restriction to a foreign subgroup".into(),
            ));
        }
        let target = pres.group();
        let coords = pres
            .generator_images()
            .iter()
            .zip(target.factors())
            .map(|(img, &d)| {
                self.eval(img)
                    .exponent_in(d as u64)
                    .map(|k| k as u32)
                    .ok_or_else(|| {
                        Error::InternalInconsistency(format!(
                            "generator image {img} has order not dividing {d}"
                        ))
                    })
            })
            .collect::<Result<_>>()?;
        Character::new(target, coords)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{}", Element(self.coords.clone()))
    }
}

/// All characters, in the lexicographic order of their coordinates.
pub fn characters(group: &AbelianGroup) -> Vec<Character> {
    group
        .elements()
        .into_iter()
        .map(|e| Character {
            parent: group.clone(),
            coords: e.0,
        })
        .collect()
}

/// `|G| × |G|` table, rows in [`characters`] order, columns in element order.
pub fn character_table(group: &AbelianGroup) -> CycloMatrix {
    let elems = group.elements();
    let roots: Vec<RootOfUnity> = characters(group)
        .iter()
        .flat_map(|chi| elems.iter().map(move |g| chi.eval(g)))
        .collect();
    let n = group.order();
    CycloMatrix::from_roots(n, n, &roots).expect("character table conductor is the exponent")
}
