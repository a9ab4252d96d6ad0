//! Pointed braided fusion categories `Vect_G^{(Ψ,Ω)}` seen as metric groups
//! `(G, q)`.

use std::sync::OnceLock;

use crate::cocycle::{standard_cocycle, AbelianCocycle, Bicharacter, QuadraticForm};
use crate::cyclotomic::{CycloMatrix, CycloNumber, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, AbelianGroup, Character, Element, Subgroup};

/// A metric group `(G, q)` with an optional explicit cocycle. When no
/// cocycle is given the standard one with trace `q` is used.
#[derive(Clone, Debug)]
pub struct PointedBFC {
    label: String,
    form: QuadraticForm,
    cocycle: Option<AbelianCocycle>,
    standard: OnceLock<AbelianCocycle>,
}

impl PartialEq for PointedBFC {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.form == other.form && self.cocycle == other.cocycle
    }
}

impl PointedBFC {
    pub fn from_form(label: impl Into<String>, form: QuadraticForm) -> Self {
        PointedBFC {
            label: label.into(),
            form,
            cocycle: None,
            standard: OnceLock::new(),
        }
    }

    pub fn from_cocycle(label: impl Into<String>, cocycle: AbelianCocycle) -> Result<Self> {
        let form = cocycle.trace_form()?;
        Ok(PointedBFC {
            label: label.into(),
            form,
            cocycle: Some(cocycle),
            standard: OnceLock::new(),
        })
    }

    /// Both a form and a cocycle; the cocycle's trace must equal the form.
    pub fn new(
        label: impl Into<String>,
        form: QuadraticForm,
        cocycle: Option<AbelianCocycle>,
    ) -> Result<Self> {
        if let Some(c) = &cocycle {
            if c.trace_form()? != form {
                return Err(Error::InvalidQuadraticForm(
                    "q differs from the trace of the given cocycle".into(),
                ));
            }
        }
        Ok(PointedBFC {
            label: label.into(),
            form,
            cocycle,
            standard: OnceLock::new(),
        })
    }

    /// `trivial`, `svect`, `semion`, `semion-bar`, `toric`, `double:<group>`.
    pub fn preset(name: &str) -> Result<Self> {
        let z2 = AbelianGroup::cyclic(2);
        let on_z2 = |label: &str, q1: RootOfUnity| {
            QuadraticForm::new(&z2, vec![RootOfUnity::ONE, q1]).map(|f| Self::from_form(label, f))
        };
        let key = name.trim().to_ascii_lowercase();
        match key.as_str() {
            "trivial" => Ok(Self::from_form(
                "trivial",
                QuadraticForm::trivial(&AbelianGroup::trivial()),
            )),
            "svect" => on_z2("svect", RootOfUnity::MINUS_ONE),
            "semion" => on_z2("semion", RootOfUnity::new(4, 1)),
            "semion-bar" => on_z2("semion-bar", RootOfUnity::new(4, 3)),
            "toric" => {
                let mut d = drinfeld_double(&z2)?;
                d.label = "toric".into();
                Ok(d)
            }
            _ => match key.strip_prefix("double:") {
                Some(g) => drinfeld_double(&g.parse()?),
                None => Err(Error::Parse(format!("unknown preset {name:?}"))),
            },
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &AbelianGroup {
        self.form.group()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    /// The explicitly supplied cocycle, if any.
    pub fn cocycle(&self) -> Option<&AbelianCocycle> {
        self.cocycle.as_ref()
    }

    /// The supplied cocycle, or the standard one for `q`.
    pub fn braiding_cocycle(&self) -> Result<&AbelianCocycle> {
        if let Some(c) = &self.cocycle {
            return Ok(c);
        }
        if let Some(c) = self.standard.get() {
            return Ok(c);
        }
        let c = standard_cocycle(&self.form)?;
        Ok(self.standard.get_or_init(|| c))
    }

    pub fn polarization(&self) -> Bicharacter {
        self.form.polarization()
    }

    /// `S[g][h] = σ(g,h)`, the double braiding.
    pub fn smatrix1_roots(&self) -> Result<Vec<RootOfUnity>> {
        let n = self.group().order();
        let sigma = self.polarization();
        let mut roots = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                roots.push(sigma.at(g, h));
            }
        }
        if let Some(c) = &self.cocycle {
            for g in 0..n {
                for h in 0..n {
                    if c.omega_at(g, h) * c.omega_at(h, g) != roots[g * n + h] {
                        return Err(Error::InternalInconsistency(format!(
                            "double braiding differs from the polarization at ({}, {})",
                            self.group().element(g),
                            self.group().element(h)
                        )));
                    }
                }
            }
        }
        Ok(roots)
    }

    pub fn smatrix1(&self) -> Result<CycloMatrix> {
        let n = self.group().order();
        CycloMatrix::from_roots(n, n, &self.smatrix1_roots()?)
    }

    /// Diagonal matrix of `q(g)`.
    pub fn tmatrix(&self) -> Result<CycloMatrix> {
        let n = self.group().order();
        let mut roots = vec![RootOfUnity::ONE; n * n];
        let mut zero = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    roots[i * n + j] = self.form.at(i);
                } else {
                    zero[i * n + j] = true;
                }
            }
        }
        let m = CycloMatrix::from_roots(n, n, &roots)?;
        let conductor = m.conductor();
        let entries = m
            .entries()
            .iter()
            .zip(&zero)
            .map(|(e, &z)| {
                if z {
                    CycloNumber::zero(conductor)
                } else {
                    e.clone()
                }
            })
            .collect();
        CycloMatrix::new(n, n, entries)
    }

    /// `Z₂ = {g : σ(g,h) = 1 for all h}`.
    pub fn mueger_center(&self) -> Result<Subgroup> {
        let g = self.group();
        let n = g.order();
        let sigma = self.polarization();
        let elems: Vec<Element> = (0..n)
            .filter(|&a| (0..n).all(|b| sigma.at(a, b).is_one()))
            .map(|a| g.element(a))
            .collect();
        Subgroup::from_elements(g, &elems)
            .map_err(|e| Error::InternalInconsistency(format!("Mueger center not a subgroup: {e}")))
    }

    /// Rank of the S-matrix is `|G|`; cross-checked against a trivial center.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        let by_rank = self.smatrix1()?.rank()? == self.group().order();
        let by_center = self.mueger_center()?.is_trivial();
        if by_rank != by_center {
            return Err(Error::InternalInconsistency(format!(
                "S-matrix full rank = {by_rank} but trivial Mueger center = {by_center}"
            )));
        }
        Ok(by_rank)
    }

    /// `σ ≡ 1`; cross-checked against `Z₂ = G`.
    pub fn is_symmetric(&self) -> Result<bool> {
        let sigma = self.polarization();
        let n = self.group().order();
        let trivial = (0..n).all(|a| (0..n).all(|b| sigma.at(a, b).is_one()));
        let whole = self.mueger_center()?.order() == n;
        if trivial != whole {
            return Err(Error::InternalInconsistency(format!(
                "sigma trivial = {trivial} but Mueger center is everything = {whole}"
            )));
        }
        Ok(trivial)
    }

    /// Subgroups `L` with `q|_L ≡ 1`.
    pub fn isotropic_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        let sigma = self.polarization();
        let mut out = Vec::new();
        for l in all_subgroups(self.group(), bound)? {
            if !l.indices().iter().all(|&i| self.form.at(i).is_one()) {
                continue;
            }
            for &a in l.indices() {
                for &b in l.indices() {
                    if !sigma.at(a, b).is_one() {
                        return Err(Error::InternalInconsistency(format!(
                            "isotropic subgroup {l} pairs nontrivially"
                        )));
                    }
                }
            }
            out.push(l);
        }
        Ok(out)
    }

    /// Isotropic subgroups with `|L|² = |G|`.
    pub fn lagrangian_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>> {
        let n = self.group().order();
        Ok(self
            .isotropic_subgroups(bound)?
            .into_iter()
            .filter(|l| l.order() * l.order() == n)
            .collect())
    }

    pub fn detect_center(&self, bound: usize) -> Result<CenterReport> {
        let nondegenerate = self.is_nondegenerate()?;
        let witnesses = self.lagrangian_subgroups(bound)?;
        Ok(CenterReport {
            nondegenerate,
            lagrangian_count: witnesses.len(),
            is_center: nondegenerate && !witnesses.is_empty(),
            degenerate_ambient: !nondegenerate,
            witnesses,
        })
    }
}

/// Whether a pointed category is a Drinfeld center, with Lagrangian witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterReport {
    pub nondegenerate: bool,
    pub lagrangian_count: usize,
    pub is_center: bool,
    /// Set when the category is degenerate, where "Lagrangian" is only formal.
    pub degenerate_ambient: bool,
    pub witnesses: Vec<Subgroup>,
}

/// The metric group `G × Ĝ` with `q(g, χ) = χ(g)`, `Ĝ` sharing the factors of `G`.
pub fn drinfeld_double(group: &AbelianGroup) -> Result<PointedBFC> {
    let label = format!("double:{group}");
    if group.is_trivial() {
        return Ok(PointedBFC::from_form(label, QuadraticForm::trivial(group)));
    }
    let r = group.rank();
    let doubled = group.product(group);
    let values = doubled
        .elements()
        .iter()
        .map(|e| {
            let chi = Character::new(group, e.0[r..].to_vec()).expect("coordinates in range");
            chi.eval(&Element(e.0[..r].to_vec()))
        })
        .collect();
    let form = QuadraticForm::new(&doubled, values)
        .map_err(|e| Error::InternalInconsistency(format!("double is not a metric group: {e}")))?;
    let b = PointedBFC::from_form(label, form);
    if !b.is_nondegenerate()? {
        return Err(Error::InternalInconsistency(format!(
            "double of {group} is degenerate"
        )));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_GROUP_ORDER as BOUND;

    fn z(n: u64, k: i64) -> RootOfUnity {
        RootOfUnity::new(n, k)
    }

    fn ints(n: usize, v: &[i64]) -> CycloMatrix {
        CycloMatrix::from_integers(n, n, v).unwrap()
    }

    #[test]
    fn smatrix1_examples() {
        let semion = PointedBFC::preset("semion").unwrap();
        assert_eq!(semion.smatrix1().unwrap(), ints(2, &[1, 1, 1, -1]));
        let sv = PointedBFC::preset("svect").unwrap();
        assert_eq!(sv.smatrix1().unwrap(), ints(2, &[1, 1, 1, 1]));
        assert_eq!(
            PointedBFC::preset("trivial").unwrap().smatrix1().unwrap(),
            ints(1, &[1])
        );
    }

    #[test]
    fn tmatrix_examples() {
        let t = PointedBFC::preset("semion").unwrap().tmatrix().unwrap();
        let expect = CycloMatrix::new(
            2,
            2,
            vec![
                z(1, 0).to_cyclo(),
                CycloNumber::zero(1),
                CycloNumber::zero(1),
                z(4, 1).to_cyclo(),
            ],
        )
        .unwrap();
        assert_eq!(t, expect);
        assert_eq!(
            PointedBFC::preset("svect").unwrap().tmatrix().unwrap(),
            ints(2, &[1, 0, 0, -1])
        );
    }

    #[test]
    fn centers_and_flags() {
        let sv = PointedBFC::preset("svect").unwrap();
        assert_eq!(sv.mueger_center().unwrap().order(), 2);
        assert!(!sv.is_nondegenerate().unwrap());
        assert!(sv.is_symmetric().unwrap());

        let semion = PointedBFC::preset("semion").unwrap();
        assert!(semion.mueger_center().unwrap().is_trivial());
        assert!(semion.is_nondegenerate().unwrap());
        assert!(!semion.is_symmetric().unwrap());

        let z4 = AbelianGroup::cyclic(4);
        let q = QuadraticForm::new(&z4, (0..4).map(|a| z(8, a * a)).collect()).unwrap();
        assert!(PointedBFC::from_form("z4", q)
            .mueger_center()
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn toric_double() {
        let t = PointedBFC::preset("toric").unwrap();
        assert_eq!(t.group().factors(), &[2, 2]);
        assert_eq!(t.form().values(), &[z(1, 0), z(1, 0), z(1, 0), z(2, 1)]);
        assert!(t.is_nondegenerate().unwrap());
        let lag = t.lagrangian_subgroups(BOUND).unwrap();
        let elems: Vec<Vec<Element>> = lag.iter().map(|l| l.elements()).collect();
        assert_eq!(
            elems,
            vec![
                vec![Element(vec![0, 0]), Element(vec![0, 1])],
                vec![Element(vec![0, 0]), Element(vec![1, 0])],
            ]
        );
        let report = t.detect_center(BOUND).unwrap();
        assert!(report.is_center);
        assert_eq!(report.lagrangian_count, 2);
    }

    #[test]
    fn doubles() {
        let d = drinfeld_double(&AbelianGroup::trivial()).unwrap();
        assert!(d.group().is_trivial());
        let d3 = drinfeld_double(&AbelianGroup::cyclic(3)).unwrap();
        assert_eq!(d3.group().order(), 9);
        let g_times_one = Subgroup::generated(d3.group(), &[Element(vec![1, 0])]).unwrap();
        assert!(d3
            .lagrangian_subgroups(BOUND)
            .unwrap()
            .contains(&g_times_one));
        for s in ["Z2", "Z3", "Z4"] {
            let d = PointedBFC::preset(&format!("double:{s}")).unwrap();
            assert!(d.detect_center(BOUND).unwrap().is_center, "{s}");
        }
    }

    #[test]
    fn semion_is_not_a_center() {
        let r = PointedBFC::preset("semion")
            .unwrap()
            .detect_center(BOUND)
            .unwrap();
        assert!(!r.is_center);
        assert_eq!(r.lagrangian_count, 0);
        let r = PointedBFC::preset("svect")
            .unwrap()
            .detect_center(BOUND)
            .unwrap();
        assert!(r.degenerate_ambient);
    }

    #[test]
    fn explicit_cocycle_must_match_form() {
        let sv = PointedBFC::preset("svect").unwrap();
        let semion = PointedBFC::preset("semion").unwrap();
        let c = semion.braiding_cocycle().unwrap().clone();
        assert!(PointedBFC::new("x", sv.form().clone(), Some(c.clone())).is_err());
        let b = PointedBFC::new("x", semion.form().clone(), Some(c)).unwrap();
        assert_eq!(b.smatrix1().unwrap(), semion.smatrix1().unwrap());
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(
            PointedBFC::preset("fibonacci"),
            Err(Error::Parse(_))
        ));
    }
}
