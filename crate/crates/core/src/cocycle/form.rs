use std::collections::BTreeMap;

use num_integer::Integer;

use super::{common_order, exponents};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element};

/// A quadratic form `q: G → C^×` on a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    group: AbelianGroup,
    values: Vec<RootOfUnity>,
}

/// First violated quadratic-form axiom, with its witness.
pub fn form_violation(group: &AbelianGroup, values: &[RootOfUnity]) -> Option<String> {
    let n = group.order();
    if values.len() != n {
        return Some(format!("expected {n} values, got {}", values.len()));
    }
    if !values[0].is_one() {
        return Some(format!("q(0) = {} is not 1", values[0]));
    }
    let t = group.table();
    for g in 0..n {
        if values[t.neg(g)] != values[g] {
            let e = group.element(g);
            return Some(format!("q(-g) != q(g) at g = {e}"));
        }
    }
    let l = common_order(values);
    let q = exponents(values, l);
    let sigma = |a: usize, b: usize| (q[t.add(a, b)] + 2 * l - q[a] - q[b]) % l;
    for a in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                if sigma(t.add(a, a2), b) != (sigma(a, b) + sigma(a2, b)) % l {
                    return Some(format!(
                        "polarization not bimultiplicative at (g, g', h) = ({}, {}, {})",
                        group.element(a),
                        group.element(a2),
                        group.element(b)
                    ));
                }
            }
        }
    }
    None
}

impl QuadraticForm {
    pub fn new(group: &AbelianGroup, values: Vec<RootOfUnity>) -> Result<Self> {
        if let Some(v) = form_violation(group, &values) {
            return Err(Error::InvalidQuadraticForm(v));
        }
        Ok(QuadraticForm {
            group: group.clone(),
            values,
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        QuadraticForm {
            group: group.clone(),
            values: vec![RootOfUnity::ONE; group.order()],
        }
    }

    /// `q(Σ a_i e_i) = Π q(e_i)^{a_i²} · Π_{i<j} σ_ij^{a_i a_j}` from generator
    /// values and cross pairings `σ_ij` (missing pairings are 1).
    pub fn from_generators(
        group: &AbelianGroup,
        gen_values: &[RootOfUnity],
        pairings: &BTreeMap<(usize, usize), RootOfUnity>,
    ) -> Result<Self> {
        if gen_values.len() != group.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator values for a group of rank {}",
                gen_values.len(),
                group.rank()
            )));
        }
        for &(i, j) in pairings.keys() {
            if i >= j || j >= group.rank() {
                return Err(Error::ShapeMismatch(format!("pairing index ({i},{j})")));
            }
        }
        let values = group
            .elements()
            .iter()
            .map(|g| generator_formula(g, gen_values, pairings))
            .collect();
        Self::new(group, values)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn value(&self, g: &Element) -> RootOfUnity {
        self.values[self.group.index(g)]
    }

    pub fn at(&self, index: usize) -> RootOfUnity {
        self.values[index]
    }

    /// Values in element order.
    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// `σ(g,h) = q(g+h) q(g)⁻¹ q(h)⁻¹`.
    pub fn polarization(&self) -> Bicharacter {
        let n = self.group.order();
        let t = self.group.table();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.values[t.add(a, b)] * self.values[a].inv() * self.values[b].inv());
            }
        }
        let sigma = Bicharacter {
            group: self.group.clone(),
            table,
        };
        for a in 0..n {
            for b in 0..n {
                assert_eq!(sigma.at(a, b), sigma.at(b, a), "polarization not symmetric");
                for c in 0..n {
                    assert_eq!(
                        sigma.at(t.add(a, b), c),
                        sigma.at(a, c) * sigma.at(b, c),
                        "polarization not bimultiplicative"
                    );
                }
            }
        }
        sigma
    }

    /// Least `N` with every value in `μ_N`.
    pub fn value_order(&self) -> u64 {
        self.values.iter().fold(1, |l, v| l.lcm(&v.order()))
    }
}

fn generator_formula(
    g: &Element,
    gen_values: &[RootOfUnity],
    pairings: &BTreeMap<(usize, usize), RootOfUnity>,
) -> RootOfUnity {
    let a = g.coords();
    let mut v: RootOfUnity = a
        .iter()
        .zip(gen_values)
        .map(|(&x, &t)| t.pow(x as i64 * x as i64))
        .product();
    for (&(i, j), &s) in pairings {
        v = v * s.pow(a[i] as i64 * a[j] as i64);
    }
    v
}

/// A function `G × G → C^×`, stored densely by element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    group: AbelianGroup,
    table: Vec<RootOfUnity>,
}

impl Bicharacter {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn at(&self, a: usize, b: usize) -> RootOfUnity {
        self.table[a * self.group.order() + b]
    }

    pub fn value(&self, g: &Element, h: &Element) -> RootOfUnity {
        self.at(self.group.index(g), self.group.index(h))
    }
}
