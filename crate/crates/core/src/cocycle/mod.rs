//! Abelian 3-cocycles `(Ψ, Ω)` on finite abelian groups with values in roots
//! of unity.
//!
//! Conventions, for all `a, b, c, d ∈ G`:
//!
//! * pentagon: `Ψ(b,c,d) Ψ(a,b+c,d) Ψ(a,b,c) = Ψ(a+b,c,d) Ψ(a,b,c+d)`
//! * H1: `Ω(a,b+c) = Ω(a,b) Ω(a,c) Ψ(a,b,c)⁻¹ Ψ(b,a,c) Ψ(b,c,a)⁻¹`
//! * H2: `Ω(a+b,c) = Ω(a,c) Ω(b,c) Ψ(a,b,c) Ψ(a,c,b)⁻¹ Ψ(c,a,b)`
//!
//! A 2-cochain `φ` acts by `Ψ ↦ Ψ·δφ` and `Ω(a,b) ↦ Ω(a,b) φ(b,a) φ(a,b)⁻¹`,
//! where `δφ(a,b,c) = φ(b,c) φ(a,b+c) φ(a+b,c)⁻¹ φ(a,b)⁻¹`.

mod classify;
mod form;
mod mu;
mod standard;

use std::fmt;

use num_integer::Integer;

pub use classify::{
    classify_h3ab, classify_h3ab_exhaustive, H3Class, MAX_CLASSIFY_ORDER, MAX_CLASSIFY_VALUES,
};
pub use form::{form_violation, Bicharacter, QuadraticForm};
pub use mu::{find_mu, MAX_MU_ORDER, MAX_MU_VALUES};
pub use standard::standard_cocycle;

use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element, Subgroup};

pub(crate) fn common_order(values: &[RootOfUnity]) -> u64 {
    values.iter().fold(1, |l, v| l.lcm(&v.order()))
}

/// Exponents `k` with `v = ζ_l^k`; `l` must be a multiple of every order.
pub(crate) fn exponents(values: &[RootOfUnity], l: u64) -> Vec<u64> {
    values
        .iter()
        .map(|v| v.exponent_in(l).expect("order divides the common order"))
        .collect()
}

/// The first failing coherence condition of a candidate cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Pentagon([Element; 4]),
    Hexagon1([Element; 3]),
    Hexagon2([Element; 3]),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pentagon([a, b, c, d]) => {
                write!(f, "pentagon fails at (a,b,c,d) = ({a}, {b}, {c}, {d})")
            }
            Violation::Hexagon1([a, b, c]) => {
                write!(f, "hexagon H1 fails at (a,b,c) = ({a}, {b}, {c})")
            }
            Violation::Hexagon2([a, b, c]) => {
                write!(f, "hexagon H2 fails at (a,b,c) = ({a}, {b}, {c})")
            }
        }
    }
}

/// A pair `(Ψ, Ω)` of dense tables; not necessarily a cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianCocycle {
    group: AbelianGroup,
    psi: Vec<RootOfUnity>,
    omega: Vec<RootOfUnity>,
}

impl AbelianCocycle {
    /// Tables in element-index order: `psi[(a·n + b)·n + c]`, `omega[a·n + b]`.
    pub fn new(
        group: &AbelianGroup,
        psi: Vec<RootOfUnity>,
        omega: Vec<RootOfUnity>,
    ) -> Result<Self> {
        let n = group.order();
        if psi.len() != n * n * n || omega.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "cocycle tables of sizes {}/{} on a group of order {n}",
                psi.len(),
                omega.len()
            )));
        }
        Ok(AbelianCocycle {
            group: group.clone(),
            psi,
            omega,
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        let n = group.order();
        AbelianCocycle {
            group: group.clone(),
            psi: vec![RootOfUnity::ONE; n * n * n],
            omega: vec![RootOfUnity::ONE; n * n],
        }
    }

    pub fn from_fn(
        group: &AbelianGroup,
        psi: impl Fn(&Element, &Element, &Element) -> RootOfUnity,
        omega: impl Fn(&Element, &Element) -> RootOfUnity,
    ) -> Self {
        let elems = group.elements();
        let mut p = Vec::with_capacity(elems.len().pow(3));
        let mut o = Vec::with_capacity(elems.len().pow(2));
        for a in &elems {
            for b in &elems {
                o.push(omega(a, b));
                for c in &elems {
                    p.push(psi(a, b, c));
                }
            }
        }
        AbelianCocycle {
            group: group.clone(),
            psi: p,
            omega: o,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn psi_at(&self, a: usize, b: usize, c: usize) -> RootOfUnity {
        let n = self.group.order();
        self.psi[(a * n + b) * n + c]
    }

    #[inline]
    pub fn omega_at(&self, a: usize, b: usize) -> RootOfUnity {
        self.omega[a * self.group.order() + b]
    }

    pub fn psi(&self, a: &Element, b: &Element, c: &Element) -> RootOfUnity {
        let g = &self.group;
        self.psi_at(g.index(a), g.index(b), g.index(c))
    }

    pub fn omega(&self, a: &Element, b: &Element) -> RootOfUnity {
        self.omega_at(self.group.index(a), self.group.index(b))
    }

    pub fn psi_table(&self) -> &[RootOfUnity] {
        &self.psi
    }

    pub fn omega_table(&self) -> &[RootOfUnity] {
        &self.omega
    }

    /// Trivial whenever an argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| {
            self.omega_at(a, 0).is_one()
                && self.omega_at(0, a).is_one()
                && (0..n).all(|b| {
                    self.psi_at(0, a, b).is_one()
                        && self.psi_at(a, 0, b).is_one()
                        && self.psi_at(a, b, 0).is_one()
                })
        })
    }

    fn exps(&self) -> (u64, Vec<u64>, Vec<u64>) {
        let l = common_order(&self.psi).lcm(&common_order(&self.omega));
        (l, exponents(&self.psi, l), exponents(&self.omega, l))
    }

    pub fn first_pentagon_violation(&self) -> Option<Violation> {
        let n = self.group.order();
        let t = self.group.table();
        let (l, p, _) = self.exps();
        let at = |a: usize, b: usize, c: usize| p[(a * n + b) * n + c];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = at(b, c, d) + at(a, t.add(b, c), d) + at(a, b, c);
                        let rhs = at(t.add(a, b), c, d) + at(a, b, t.add(c, d));
                        if lhs % l != rhs % l {
                            let e = |i| self.group.element(i);
                            return Some(Violation::Pentagon([e(a), e(b), e(c), e(d)]));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn first_hexagon_violation(&self) -> Option<Violation> {
        let n = self.group.order();
        let t = self.group.table();
        let (l, p, o) = self.exps();
        let ps = |a: usize, b: usize, c: usize| p[(a * n + b) * n + c];
        let om = |a: usize, b: usize| o[a * n + b];
        let e = |i| self.group.element(i);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // H1 with inverses moved across
                    let lhs = om(a, t.add(b, c)) + ps(a, b, c) + ps(b, c, a);
                    let rhs = om(a, b) + om(a, c) + ps(b, a, c);
                    if lhs % l != rhs % l {
                        return Some(Violation::Hexagon1([e(a), e(b), e(c)]));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = om(t.add(a, b), c) + ps(a, c, b);
                    let rhs = om(a, c) + om(b, c) + ps(a, b, c) + ps(c, a, b);
                    if lhs % l != rhs % l {
                        return Some(Violation::Hexagon2([e(a), e(b), e(c)]));
                    }
                }
            }
        }
        None
    }

    pub fn check_pentagon(&self) -> bool {
        self.first_pentagon_violation().is_none()
    }

    pub fn check_hexagons(&self) -> bool {
        self.first_hexagon_violation().is_none()
    }

    pub fn first_violation(&self) -> Option<Violation> {
        self.first_pentagon_violation()
            .or_else(|| self.first_hexagon_violation())
    }

    pub fn is_abelian_cocycle(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn validate(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(Error::NotACocycle(v.to_string())),
        }
    }

    /// `q(g) = Ω(g,g)`.
    pub fn trace_form(&self) -> Result<QuadraticForm> {
        self.validate()?;
        let n = self.group.order();
        let values: Vec<RootOfUnity> = (0..n).map(|g| self.omega_at(g, g)).collect();
        QuadraticForm::new(&self.group, values).map_err(|e| {
            Error::ConventionError(format!(
                "trace of a valid cocycle is not a quadratic form: {e}"
            ))
        })
    }

    pub fn apply_coboundary(&self, phi: &TwoCochain) -> Result<AbelianCocycle> {
        if phi.domain() != &Subgroup::whole(&self.group) {
            return Err(Error::ShapeMismatch(
                "cochain must be defined on the whole group".into(),
            ));
        }
        let n = self.group.order();
        let t = self.group.table();
        let f = |a: usize, b: usize| phi.at(a, b);
        let mut psi = Vec::with_capacity(n * n * n);
        let mut omega = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                omega.push(self.omega_at(a, b) * f(b, a) * f(a, b).inv());
                for c in 0..n {
                    let d = f(b, c) * f(a, t.add(b, c)) * f(t.add(a, b), c).inv() * f(a, b).inv();
                    psi.push(self.psi_at(a, b, c) * d);
                }
            }
        }
        let out = AbelianCocycle {
            group: self.group.clone(),
            psi,
            omega,
        };
        out.validate().map_err(|e| match e {
            Error::NotACocycle(v) => {
                Error::NotACocycle(format!("coboundary action broke the cocycle: {v}"))
            }
            other => other,
        })?;
        Ok(out)
    }
}

/// A normalized 2-cochain `φ: H × H → C^×` on a subgroup `H` (often all of `G`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    domain: Subgroup,
    values: Vec<RootOfUnity>,
}

impl TwoCochain {
    /// `values[i·|H| + j] = φ(h_i, h_j)`, `h_i` the domain elements in order.
    pub fn new(domain: &Subgroup, values: Vec<RootOfUnity>) -> Result<Self> {
        let m = domain.order();
        if values.len() != m * m {
            return Err(Error::ShapeMismatch(format!(
                "{} cochain values on a subgroup of order {m}",
                values.len()
            )));
        }
        for i in 0..m {
            if !values[i].is_one() || !values[i * m].is_one() {
                let h = domain.parent().element(domain.indices()[i]);
                return Err(Error::NotACocycle(format!(
                    "2-cochain not normalized at {h}"
                )));
            }
        }
        Ok(TwoCochain {
            domain: domain.clone(),
            values,
        })
    }

    pub fn on_group(group: &AbelianGroup, values: Vec<RootOfUnity>) -> Result<Self> {
        Self::new(&Subgroup::whole(group), values)
    }

    pub fn trivial(domain: &Subgroup) -> Self {
        TwoCochain {
            domain: domain.clone(),
            values: vec![RootOfUnity::ONE; domain.order().pow(2)],
        }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    /// By positions in the domain's element list.
    pub fn at(&self, i: usize, j: usize) -> RootOfUnity {
        self.values[i * self.domain.order() + j]
    }

    pub fn value(&self, a: &Element, b: &Element) -> Option<RootOfUnity> {
        let pos = |g: &Element| {
            let idx = self.domain.parent().index(g);
            self.domain.indices().binary_search(&idx).ok()
        };
        Some(self.at(pos(a)?, pos(b)?))
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    /// Positions `(i, j, k)` of the domain where `δφ ≠ Ψ`, if any.
    pub fn coboundary_mismatch(&self, c: &AbelianCocycle) -> Option<[Element; 3]> {
        let h = &self.domain;
        let idx = h.indices();
        let m = idx.len();
        let t = c.group().table();
        let pos = |g: usize| {
            idx.binary_search(&g)
                .expect("subgroup closed under addition")
        };
        for a in 0..m {
            for b in 0..m {
                let ab = pos(t.add(idx[a], idx[b]));
                for k in 0..m {
                    let bc = pos(t.add(idx[b], idx[k]));
                    let d =
                        self.at(b, k) * self.at(a, bc) * self.at(ab, k).inv() * self.at(a, b).inv();
                    if d != c.psi_at(idx[a], idx[b], idx[k]) {
                        let e = |i: usize| h.parent().element(idx[i]);
                        return Some([e(a), e(b), e(k)]);
                    }
                }
            }
        }
        None
    }
}
