//! Braided module categories `(M_{H,μ}, σ_χ)` over a pointed braided fusion
//! category, their Schur classes, and the S-matrix of the 2-category of
//! braided module categories.

use crate::cocycle::{find_mu, QuadraticForm, TwoCochain, MAX_MU_VALUES};
use crate::cyclotomic::{CycloMatrix, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, character_table, characters, AbelianGroup, Character, Element, Quotient,
    Subgroup, SubgroupPresentation,
};
use crate::metric::PointedBFC;

/// `M_{H,μ}` with the braiding `σ_{M_k,U_g} = Ω(k,g) Ω(g,k) χ(g)`.
#[derive(Clone, Debug)]
pub struct BraidedModuleCat<'a> {
    base: &'a PointedBFC,
    subgroup: Subgroup,
    mu: TwoCochain,
    chi: Character,
    quotient: Quotient,
    value_order: u64,
}

impl<'a> BraidedModuleCat<'a> {
    pub fn base(&self) -> &'a PointedBFC {
        self.base
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn mu(&self) -> &TwoCochain {
        &self.mu
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    /// `G/H`, indexing the simple objects `M_k`.
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// The `N` for which `μ` was found in `μ_N`.
    pub fn value_order(&self) -> u64 {
        self.value_order
    }
}

/// Subgroups of the Mueger center, in subgroup order.
pub fn admissible_subgroups(base: &PointedBFC, bound: usize) -> Result<Vec<Subgroup>> {
    let center = base.mueger_center()?;
    Ok(all_subgroups(base.group(), bound)?
        .into_iter()
        .filter(|h| h.is_subgroup_of(&center))
        .collect())
}

fn subgroup_exponent(h: &Subgroup) -> u64 {
    h.presentation().group().exponent()
}

/// Tries `N = exp(H), 2·exp(H), 4·exp(H)` for `μ`.
pub fn build_module_cat<'a>(
    base: &'a PointedBFC,
    h: &Subgroup,
    chi: &Character,
) -> Result<BraidedModuleCat<'a>> {
    let g = base.group();
    if h.parent() != g {
        return Err(Error::NotSubgroup(format!("{h} is not a subgroup of {g}")));
    }
    if chi.parent() != g {
        return Err(Error::ShapeMismatch(format!(
            "{chi} is not a character of {g}"
        )));
    }
    if !h.is_subgroup_of(&base.mueger_center()?) {
        return Err(Error::NotAdmissible(h.to_string()));
    }
    let cocycle = base.braiding_cocycle()?;
    let e = subgroup_exponent(h);
    let mut tried = Vec::new();
    for n in [e, 2 * e, 4 * e] {
        if n > MAX_MU_VALUES {
            return Err(Error::BoundsExceeded(format!(
                "mu search for {h} needs value order {n} > {MAX_MU_VALUES}; tried {tried:?}"
            )));
        }
        tried.push(n);
        if let Some(mu) = find_mu(cocycle, h, n)? {
            return Ok(BraidedModuleCat {
                base,
                subgroup: h.clone(),
                mu,
                chi: chi.clone(),
                quotient: Quotient::new(g, h)?,
                value_order: n,
            });
        }
    }
    Err(Error::NoMuFound(tried))
}

/// `Ω(k,g) Ω(g,k) χ(g)`.
pub fn module_braiding(m: &BraidedModuleCat<'_>, k: &Element, g: &Element) -> Result<RootOfUnity> {
    let c = m.base.braiding_cocycle()?;
    Ok(c.omega(k, g) * c.omega(g, k) * m.chi.eval(g))
}

/// The S-matrix entry for `M` and a transparent `g`, computed on every simple
/// `M_k` (every `k ∈ G`) and required to agree.
pub fn smatrix2_entry(m: &BraidedModuleCat<'_>, g: &Element) -> Result<RootOfUnity> {
    let grp = m.base.group();
    grp.check(g)?;
    if !m.base.mueger_center()?.contains(g) {
        return Err(Error::NotTransparent(g.to_string()));
    }
    let elems = grp.elements();
    let first = module_braiding(m, &elems[0], g)?;
    for k in &elems[1..] {
        let v = module_braiding(m, k, g)?;
        if v != first {
            return Err(Error::WellDefinednessViolation(format!(
                "g = {g}: M_{} gives {first}, M_{k} gives {v}",
                elems[0]
            )));
        }
    }
    if first != m.chi.eval(g) {
        return Err(Error::InternalInconsistency(format!(
            "entry at g = {g} is {first}, expected chi(g) = {}",
            m.chi.eval(g)
        )));
    }
    Ok(first)
}

/// A class of braided module categories, determined by the restriction of
/// `χ` to the Mueger center.
#[derive(Clone, Debug)]
pub struct SchurClass {
    base_label: String,
    base_form: QuadraticForm,
    center: SubgroupPresentation,
    character: Character,
}

impl PartialEq for SchurClass {
    fn eq(&self, other: &Self) -> bool {
        self.base_form == other.base_form && self.character == other.character
    }
}

impl Eq for SchurClass {}

impl SchurClass {
    pub fn base_label(&self) -> &str {
        &self.base_label
    }

    pub fn center(&self) -> &SubgroupPresentation {
        &self.center
    }

    /// The restricted character, on the cyclic-factor form of the center.
    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn is_trivial(&self) -> bool {
        self.character.is_trivial()
    }
}

pub fn schur_class(m: &BraidedModuleCat<'_>) -> Result<SchurClass> {
    let center = m.base.mueger_center()?.presentation();
    let character = m.chi.restrict(&center)?;
    Ok(SchurClass {
        base_label: m.base.label().to_string(),
        base_form: m.base.form().clone(),
        center,
        character,
    })
}

/// One class per character of the center, each with a representative on
/// the regular module (`H = {0}`) and a lift of the character to `G`.
pub fn schur_classes(base: &PointedBFC) -> Result<Vec<(SchurClass, BraidedModuleCat<'_>)>> {
    let g = base.group();
    let center = base.mueger_center()?.presentation();
    let all = characters(g);
    let restricted: Vec<Character> = all
        .iter()
        .map(|c| c.restrict(&center))
        .collect::<Result<_>>()?;
    let trivial = Subgroup::trivial(g);
    let mut out = Vec::new();
    for psi in characters(center.group()) {
        let pos = restricted
            .iter()
            .position(|r| r == &psi)
            .ok_or_else(|| Error::LiftNotFound(psi.to_string()))?;
        let m = build_module_cat(base, &trivial, &all[pos])?;
        out.push((schur_class(&m)?, m));
    }
    Ok(out)
}

/// Rows are Schur classes, columns the center in group order.
#[derive(Clone, Debug)]
pub struct SMatrix2 {
    pub center: Subgroup,
    pub classes: Vec<SchurClass>,
    pub roots: Vec<RootOfUnity>,
    pub matrix: CycloMatrix,
    pub square: bool,
    pub invertible: bool,
}

impl SMatrix2 {
    pub fn entry(&self, class: usize, g: usize) -> RootOfUnity {
        self.roots[class * self.center.order() + g]
    }
}

pub fn smatrix2(base: &PointedBFC) -> Result<SMatrix2> {
    let reps = schur_classes(base)?;
    let center = base.mueger_center()?;
    let cols = center.elements();
    let mut roots = Vec::with_capacity(reps.len() * cols.len());
    for (_, m) in &reps {
        for g in &cols {
            roots.push(smatrix2_entry(m, g)?);
        }
    }
    let matrix = CycloMatrix::from_roots(reps.len(), cols.len(), &roots)?;
    let square = matrix.is_square();
    if !square {
        return Err(Error::InternalInconsistency(format!(
            "{} classes but {} transparent simples",
            reps.len(),
            cols.len()
        )));
    }
    let invertible = matrix.is_invertible()?;
    if !invertible {
        return Err(Error::InternalInconsistency(
            "2-categorical S-matrix is singular".into(),
        ));
    }
    Ok(SMatrix2 {
        center,
        classes: reps.into_iter().map(|(c, _)| c).collect(),
        roots,
        matrix,
        square,
        invertible,
    })
}

/// The S-matrix equals the character table of the center, after reading its
/// columns through the center's cyclic-factor presentation.
pub fn verify_character_table(base: &PointedBFC) -> Result<bool> {
    let s = smatrix2(base)?;
    let pres = s.center.presentation();
    let abstract_group: &AbelianGroup = pres.group();
    let table = character_table(abstract_group);
    let parent = base.group();
    let mut column_of = vec![0usize; abstract_group.order()];
    for a in abstract_group.elements() {
        let image = parent.index(&pres.embed(&a));
        let j =
            s.center.indices().binary_search(&image).map_err(|_| {
                Error::InternalInconsistency("presentation leaves the center".into())
            })?;
        column_of[abstract_group.index(&a)] = j;
    }
    let chars = characters(abstract_group);
    for (i, class) in s.classes.iter().enumerate() {
        if class.character() != &chars[i] {
            return Ok(false);
        }
        for (a, &j) in column_of.iter().enumerate() {
            if s.matrix.get(i, j) != table.get(i, a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pi0Report {
    pub pi0: usize,
    pub pi0_omega: usize,
    pub equal: bool,
}

pub fn pi0_report(base: &PointedBFC) -> Result<Pi0Report> {
    let pi0 = schur_classes(base)?.len();
    let pi0_omega = base.mueger_center()?.order();
    if pi0 != pi0_omega {
        return Err(Error::InternalInconsistency(format!(
            "{pi0} Schur classes but {pi0_omega} transparent simples"
        )));
    }
    Ok(Pi0Report {
        pi0,
        pi0_omega,
        equal: true,
    })
}

/// Pointwise product of restricted characters.
pub fn class_product(a: &SchurClass, b: &SchurClass) -> Result<SchurClass> {
    if a.base_form != b.base_form {
        return Err(Error::BaseMismatch);
    }
    Ok(SchurClass {
        base_label: a.base_label.clone(),
        base_form: a.base_form.clone(),
        center: a.center.clone(),
        character: a.character.mul(&b.character)?,
    })
}

/// `S_{ab, g} = S_{a,g} S_{b,g}` for all classes `a, b` and transparent `g`.
pub fn verify_group_hom(base: &PointedBFC) -> Result<bool> {
    let s = smatrix2(base)?;
    let m = s.center.order();
    for (i, a) in s.classes.iter().enumerate() {
        for (j, b) in s.classes.iter().enumerate() {
            let ab = class_product(a, b)?;
            let Some(k) = s.classes.iter().position(|c| c == &ab) else {
                return Ok(false);
            };
            if (0..m).any(|g| s.entry(k, g) != s.entry(i, g) * s.entry(j, g)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
