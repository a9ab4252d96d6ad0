//! The verification battery: every quadratic form on a roster of small
//! groups, run through every structural check.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::{
    classify_h3ab, find_mu, form_violation, standard_cocycle, QuadraticForm, MAX_CLASSIFY_ORDER,
    MAX_CLASSIFY_VALUES,
};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::group::{character_table, characters, AbelianGroup, Subgroup, DEFAULT_MAX_GROUP_ORDER};
use crate::metric::{drinfeld_double, PointedBFC};
use crate::modules::{
    admissible_subgroups, build_module_cat, pi0_report, schur_class, smatrix2, smatrix2_entry,
    verify_character_table, verify_group_hom,
};

pub const MAX_ENUMERATION_ORDER: usize = 16;

/// The groups of the default battery.
pub const DEFAULT_ROSTER: [&str; 4] = ["Z2", "Z3", "Z4", "Z2xZ2"];

fn odometer(radices: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (0..r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every quadratic form on `group`, with values in `μ_{2·exp(G)}`.
///
/// Forms are generated from generator values `q(e_i)` and cross pairings
/// `σ(e_i, e_j)`, then validated; the order is lexicographic in the
/// exponents of `(q(e_1), …, q(e_r), σ_12, σ_13, …)`.
pub fn enumerate_quadratic_forms(group: &AbelianGroup) -> Result<Vec<QuadraticForm>> {
    if group.order() > MAX_ENUMERATION_ORDER {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            bound: MAX_ENUMERATION_ORDER,
        });
    }
    let l = 2 * group.exponent();
    let f = group.factors();
    let r = group.rank();
    // necessary conditions on a single cyclic factor: q(n e) = 1 and q(-e) = q(e)
    let gen_choices: Vec<Vec<RootOfUnity>> = f
        .iter()
        .map(|&n| {
            let n = n as i64;
            (0..l as i64)
                .map(|k| RootOfUnity::new(l, k))
                .filter(|t| t.pow(n * n).is_one() && t.pow((n - 1) * (n - 1)) == *t)
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .collect();
    let pair_orders: Vec<u64> = pairs
        .iter()
        .map(|&(i, j)| (f[i] as u64).gcd(&(f[j] as u64)))
        .collect();
    let mut radices: Vec<u64> = gen_choices.iter().map(|c| c.len() as u64).collect();
    radices.extend(&pair_orders);
    let elems = group.elements();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for choice in odometer(&radices) {
        let taus: Vec<RootOfUnity> = (0..r).map(|i| gen_choices[i][choice[i] as usize]).collect();
        let sigmas: Vec<RootOfUnity> = pair_orders
            .iter()
            .zip(&choice[r..])
            .map(|(&d, &k)| RootOfUnity::new(d, k as i64))
            .collect();
        let values: Vec<RootOfUnity> = elems
            .iter()
            .map(|e| {
                let a = e.coords();
                let mut v: RootOfUnity = (0..r)
                    .map(|i| taus[i].pow(a[i] as i64 * a[i] as i64))
                    .product();
                for (&(i, j), &s) in pairs.iter().zip(&sigmas) {
                    v = v * s.pow(a[i] as i64 * a[j] as i64);
                }
                v
            })
            .collect();
        if form_violation(group, &values).is_none() && seen.insert(values.clone()) {
            out.push(QuadraticForm::new(group, values)?);
        }
    }
    Ok(out)
}

/// One battery input: a raw `q` table, validated as the first check.
#[derive(Clone, Debug)]
pub struct BatteryCase {
    pub label: String,
    pub group: AbelianGroup,
    pub values: Vec<RootOfUnity>,
    pub expect_symmetric: Option<bool>,
    pub expect_nondegenerate: Option<bool>,
}

impl BatteryCase {
    pub fn from_form(form: &QuadraticForm) -> Self {
        let label = format!(
            "{}[{}]",
            form.group(),
            form.values()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        BatteryCase {
            label,
            group: form.group().clone(),
            values: form.values().to_vec(),
            expect_symmetric: None,
            expect_nondegenerate: None,
        }
    }
}

/// Every quadratic form on every group of the default roster.
pub fn default_cases() -> Result<Vec<BatteryCase>> {
    let mut out = Vec::new();
    for g in DEFAULT_ROSTER {
        let group: AbelianGroup = g.parse()?;
        for form in enumerate_quadratic_forms(&group)? {
            let mut case = BatteryCase::from_form(&form);
            if form.is_trivial() {
                case.expect_symmetric = Some(true);
                case.expect_nondegenerate = Some(group.is_trivial());
            }
            out.push(case);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub case: String,
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatterySummary {
    pub pass: bool,
    pub results: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl BatterySummary {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

struct Recorder<'a> {
    case: &'a str,
    out: Vec<CheckResult>,
}

impl Recorder<'_> {
    fn record(&mut self, check: &str, outcome: Result<Option<String>>) -> bool {
        let witness = match outcome {
            Ok(None) => None,
            Ok(Some(w)) => Some(w),
            Err(e) => Some(e.to_string()),
        };
        let pass = witness.is_none();
        self.out.push(CheckResult {
            case: self.case.to_string(),
            check: check.to_string(),
            pass,
            witness,
        });
        pass
    }
}

fn ok_if(cond: bool, witness: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok((!cond).then(witness))
}

fn run_case(case: &BatteryCase) -> Vec<CheckResult> {
    let mut rec = Recorder {
        case: &case.label,
        out: Vec::new(),
    };
    let form = QuadraticForm::new(&case.group, case.values.clone());
    let form = match form {
        Ok(f) => {
            rec.record("quadratic-form", Ok(None));
            f
        }
        Err(e) => {
            rec.record("quadratic-form", Err(e));
            return rec.out;
        }
    };
    let b = PointedBFC::from_form(case.label.clone(), form.clone());
    let n = case.group.order();

    rec.record(
        "standard-cocycle",
        standard_cocycle(&form).map(|c| (!c.is_normalized()).then(|| "not normalized".to_string())),
    );
    rec.record(
        "character-table",
        verify_character_table(&b)
            .map(|ok| (!ok).then(|| "S differs from the center's character table".into())),
    );
    rec.record(
        "pi0-bijection",
        pi0_report(&b).map(|r| {
            (!r.equal).then(|| format!("{} classes vs {} transparent", r.pi0, r.pi0_omega))
        }),
    );
    rec.record(
        "full-rank",
        smatrix2(&b).and_then(|s| {
            let det = s.matrix.det()?;
            ok_if(!det.is_zero(), || "determinant is zero".into())
        }),
    );
    rec.record(
        "group-hom",
        verify_group_hom(&b).map(|ok| (!ok).then(|| "S(ab, g) != S(a, g) S(b, g)".into())),
    );
    rec.record(
        "nondegeneracy-equivalence",
        (|| {
            let full_rank = b.smatrix1()?.rank()? == n;
            let trivial_center = b.mueger_center()?.is_trivial();
            b.is_nondegenerate()?;
            ok_if(full_rank == trivial_center, || {
                format!("rank full = {full_rank}, center trivial = {trivial_center}")
            })
        })(),
    );
    rec.record("well-definedness", well_definedness(&b));
    if b.is_symmetric().unwrap_or(false) {
        rec.record(
            "symmetric-character-table",
            smatrix2(&b).map(|s| {
                (s.matrix != character_table(&case.group))
                    .then(|| "S differs from the character table of G".into())
            }),
        );
    }
    if let Some(want) = case.expect_symmetric {
        rec.record(
            "pinned-symmetric",
            b.is_symmetric()
                .map(|got| (got != want).then(|| format!("expected {want}, got {got}"))),
        );
    }
    if let Some(want) = case.expect_nondegenerate {
        rec.record(
            "pinned-nondegenerate",
            b.is_nondegenerate()
                .map(|got| (got != want).then(|| format!("expected {want}, got {got}"))),
        );
    }
    rec.out
}

/// Every admissible `H`, every character `χ` of `G` and every transparent
/// `g`: the entry agrees over all simples and the Schur class ignores `H`.
fn well_definedness(b: &PointedBFC) -> Result<Option<String>> {
    let g = b.group();
    let center = b.mueger_center()?;
    let regular = Subgroup::trivial(g);
    for h in admissible_subgroups(b, DEFAULT_MAX_GROUP_ORDER)? {
        for chi in characters(g) {
            let m = build_module_cat(b, &h, &chi)?;
            for t in center.elements() {
                smatrix2_entry(&m, &t)?;
            }
            let reference = schur_class(&build_module_cat(b, &regular, &chi)?)?;
            if schur_class(&m)? != reference {
                return Ok(Some(format!("Schur class of {chi} depends on H = {h}")));
            }
        }
    }
    Ok(None)
}

fn run_group(group: &AbelianGroup, forms: &BTreeSet<Vec<RootOfUnity>>) -> Vec<CheckResult> {
    let label = group.to_string();
    let mut rec = Recorder {
        case: &label,
        out: Vec::new(),
    };
    rec.record(
        "drinfeld-double",
        drinfeld_double(group).and_then(|d| {
            let r = d.detect_center(DEFAULT_MAX_GROUP_ORDER)?;
            ok_if(r.nondegenerate && r.is_center, || format!("{r:?}"))
        }),
    );
    let values = 2 * group.exponent();
    if group.order() <= MAX_CLASSIFY_ORDER && values <= MAX_CLASSIFY_VALUES {
        rec.record(
            "classification",
            classify_h3ab(group, values).map(|classes| {
                let got: BTreeSet<Vec<RootOfUnity>> =
                    classes.iter().map(|c| c.form.values().to_vec()).collect();
                (&got != forms)
                    .then(|| format!("{} classes vs {} quadratic forms", got.len(), forms.len()))
            }),
        );
    }
    rec.out
}

/// Runs every check on every case, plus per-group checks for each distinct
/// group among valid cases. Results keep the input order.
pub fn run_all(cases: &[BatteryCase]) -> BatterySummary {
    let mut warnings = Vec::new();
    if cases.is_empty() {
        warnings.push("empty roster: no checks were run".to_string());
    }
    let mut results: Vec<CheckResult> = cases.par_iter().map(run_case).collect::<Vec<_>>().concat();
    let mut groups: BTreeMap<String, (AbelianGroup, BTreeSet<Vec<RootOfUnity>>)> = BTreeMap::new();
    let mut order = Vec::new();
    for case in cases {
        if form_violation(&case.group, &case.values).is_some() {
            continue;
        }
        let key = case.group.to_string();
        let entry = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (case.group.clone(), BTreeSet::new())
        });
        entry.1.insert(case.values.clone());
    }
    let per_group: Vec<Vec<CheckResult>> = order
        .par_iter()
        .map(|k| {
            let (g, forms) = &groups[k];
            run_group(g, forms)
        })
        .collect();
    results.extend(per_group.concat());
    BatterySummary {
        pass: results.iter().all(|r| r.pass),
        results,
        warnings,
    }
}

/// Checks not tied to a roster entry: the semion admits no braided module
/// category on `H = Z/2` although sVect does.
pub fn run_global() -> Vec<CheckResult> {
    let mut rec = Recorder {
        case: "global",
        out: Vec::new(),
    };
    rec.record(
        "braiding-existence",
        (|| {
            let semion = PointedBFC::preset("semion")?;
            let svect = PointedBFC::preset("svect")?;
            let z2 = semion.group().clone();
            let whole = Subgroup::whole(&z2);
            let chi = crate::group::Character::trivial(&z2);
            if !matches!(
                build_module_cat(&semion, &whole, &chi),
                Err(Error::NotAdmissible(_))
            ) {
                return Ok(Some("semion on Z/2 was not rejected".into()));
            }
            for n in 1..=8 {
                if find_mu(semion.braiding_cocycle()?, &whole, n)?.is_some() {
                    return Ok(Some(format!("mu found for the semion at N = {n}")));
                }
            }
            build_module_cat(&svect, &whole, &chi)?;
            Ok(None)
        })(),
    );
    rec.out
}

/// The default roster plus the global checks.
pub fn run_default() -> Result<BatterySummary> {
    let mut s = run_all(&default_cases()?);
    s.results.extend(run_global());
    s.pass = s.results.iter().all(|r| r.pass);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn form_counts() {
        assert_eq!(enumerate_quadratic_forms(&g("Z2")).unwrap().len(), 4);
        assert_eq!(enumerate_quadratic_forms(&g("Z3")).unwrap().len(), 3);
        assert_eq!(enumerate_quadratic_forms(&g("Z4")).unwrap().len(), 8);
        assert_eq!(enumerate_quadratic_forms(&g("Z2xZ2")).unwrap().len(), 32);
        assert_eq!(
            enumerate_quadratic_forms(&AbelianGroup::trivial())
                .unwrap()
                .len(),
            1
        );
        assert!(enumerate_quadratic_forms(&g("Z17")).is_err());
    }

    #[test]
    fn z2_order() {
        let q1: Vec<RootOfUnity> = enumerate_quadratic_forms(&g("Z2"))
            .unwrap()
            .iter()
            .map(|q| q.at(1))
            .collect();
        let expect: Vec<RootOfUnity> = (0..4).map(|k| RootOfUnity::new(4, k)).collect();
        assert_eq!(q1, expect);
    }

    #[test]
    fn corrupted_case_fails_with_witness() {
        let case = BatteryCase {
            label: "bad".into(),
            group: g("Z3"),
            values: vec![
                RootOfUnity::ONE,
                RootOfUnity::new(3, 1),
                RootOfUnity::new(3, 2),
            ],
            expect_symmetric: None,
            expect_nondegenerate: None,
        };
        let s = run_all(&[case]);
        assert!(!s.pass);
        let f: Vec<&CheckResult> = s.failures().collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].check, "quadratic-form");
        assert!(f[0].witness.as_deref().unwrap().contains("(1)"));
    }

    #[test]
    fn empty_roster_is_vacuous() {
        let s = run_all(&[]);
        assert!(s.pass);
        assert!(s.results.is_empty());
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn small_roster_passes() {
        let cases: Vec<BatteryCase> = enumerate_quadratic_forms(&g("Z2"))
            .unwrap()
            .iter()
            .map(BatteryCase::from_form)
            .collect();
        let s = run_all(&cases);
        assert!(s.pass, "{:?}", s.failures().collect::<Vec<_>>());
        assert!(run_global().iter().all(|r| r.pass));
    }
}
