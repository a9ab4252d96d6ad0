//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! runtime against the budget; the process fails if any criterion does.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use smatrix_core::battery::{enumerate_quadratic_forms, DEFAULT_ROSTER};
use smatrix_core::cocycle::{
    classify_h3ab, classify_h3ab_exhaustive, find_mu, form_violation, QuadraticForm,
};
use smatrix_core::cyclotomic::poly::{mul_int, x_pow_minus_one};
use smatrix_core::cyclotomic::{
    cyclotomic_polynomial, euler_phi, CycloMatrix, CycloNumber, RootOfUnity,
};
use smatrix_core::group::{character_table, characters, AbelianGroup, Character, Subgroup};
use smatrix_core::metric::{drinfeld_double, PointedBFC};
use smatrix_core::modules::{
    admissible_subgroups, build_module_cat, module_braiding, pi0_report, smatrix2, smatrix2_entry,
    verify_character_table, verify_group_hom,
};
use smatrix_core::Error;

type Outcome = Result<(), String>;

fn group(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn battery() -> Vec<PointedBFC> {
    DEFAULT_ROSTER
        .iter()
        .flat_map(|g| enumerate_quadratic_forms(&group(g)).unwrap())
        .map(|q| PointedBFC::from_form(format!("{}", q.group()), q))
        .collect()
}

fn describe(b: &PointedBFC) -> String {
    let q: Vec<String> = b.form().values().iter().map(ToString::to_string).collect();
    format!("{} q = [{}]", b.group(), q.join(", "))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// All `q: G → μ_{2·exp(G)}` passing the form axioms, by exhausting every
/// function.
fn all_forms_brute(g: &AbelianGroup) -> BTreeSet<Vec<RootOfUnity>> {
    let l = 2 * g.exponent();
    let n = g.order();
    let total = (l as usize).pow(n as u32 - 1);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let mut values = vec![RootOfUnity::ONE];
        for _ in 1..n {
            values.push(RootOfUnity::new(l, (c % l as usize) as i64));
            c /= l as usize;
        }
        if form_violation(g, &values).is_none() {
            out.insert(values);
        }
    }
    out
}

fn c1_character_table() -> Outcome {
    for (g, want) in DEFAULT_ROSTER.iter().zip([4, 3, 8, 32]) {
        let g = group(g);
        let forms = enumerate_quadratic_forms(&g).map_err(err)?;
        let brute = all_forms_brute(&g);
        let got: BTreeSet<Vec<RootOfUnity>> = forms.iter().map(|q| q.values().to_vec()).collect();
        ensure(forms.len() == want && got == brute, || {
            format!(
                "{g}: {} forms, brute force {}, expected {want}",
                forms.len(),
                brute.len()
            )
        })?;
        for q in forms {
            let b = PointedBFC::from_form("case", q);
            ensure(verify_character_table(&b).map_err(err)?, || describe(&b))?;
        }
    }
    Ok(())
}

fn c2_symmetric_case() -> Outcome {
    for g in ["Z2", "Z2xZ2"] {
        let g = group(g);
        let b = PointedBFC::from_form("trivial-q", QuadraticForm::trivial(&g));
        let s = smatrix2(&b).map_err(err)?;
        ensure(s.matrix == character_table(&g), || {
            format!("{g}: {:?}", s.matrix)
        })?;
    }
    let b = PointedBFC::from_form("z2", QuadraticForm::trivial(&group("Z2")));
    let expect = CycloMatrix::from_integers(2, 2, &[1, 1, 1, -1]).unwrap();
    ensure(smatrix2(&b).map_err(err)?.matrix == expect, || {
        "Z2 table is not [[1,1],[1,-1]]".into()
    })
}

fn c3_pi0() -> Outcome {
    for b in battery() {
        let r = pi0_report(&b).map_err(err)?;
        ensure(r.equal && r.pi0 == r.pi0_omega, || {
            format!("{}: {r:?}", describe(&b))
        })?;
    }
    Ok(())
}

fn c4_full_rank() -> Outcome {
    for b in battery() {
        let s = smatrix2(&b).map_err(err)?;
        let det = s.matrix.det().map_err(err)?;
        ensure(s.matrix.is_square() && !det.is_zero(), || describe(&b))?;
    }
    Ok(())
}

fn c5_group_hom() -> Outcome {
    for b in battery() {
        ensure(verify_group_hom(&b).map_err(err)?, || describe(&b))?;
    }
    Ok(())
}

fn c6_nondegeneracy() -> Outcome {
    for b in battery() {
        let n = b.group().order();
        let full_rank = b.smatrix1().map_err(err)?.rank().map_err(err)? == n;
        // transparent elements straight from the double braiding
        let c = b.braiding_cocycle().map_err(err)?;
        let elems = b.group().elements();
        let transparent = elems
            .iter()
            .filter(|g| {
                elems
                    .iter()
                    .all(|h| (c.omega(g, h) * c.omega(h, g)).is_one())
            })
            .count();
        let flag = b.is_nondegenerate().map_err(err)?;
        ensure(full_rank == (transparent == 1) && flag == full_rank, || {
            format!(
                "{}: rank full {full_rank}, {transparent} transparent",
                describe(&b)
            )
        })?;
    }
    Ok(())
}

/// Lagrangian subgroups by scanning every subset of the group.
fn lagrangians_brute(b: &PointedBFC) -> usize {
    let g = b.group();
    let elems = g.elements();
    let n = elems.len();
    (0u64..1 << n)
        .filter(|mask| {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let closed = members.iter().all(|&i| {
                members
                    .iter()
                    .all(|&j| mask >> g.index(&g.sub(&elems[i], &elems[j])) & 1 == 1)
            });
            !members.is_empty()
                && closed
                && members.len() * members.len() == n
                && members.iter().all(|&i| b.form().at(i).is_one())
        })
        .count()
}

fn c7_drinfeld() -> Outcome {
    for g in DEFAULT_ROSTER {
        let d = drinfeld_double(&group(g)).map_err(err)?;
        let r = d.detect_center(256).map_err(err)?;
        ensure(r.nondegenerate && r.is_center, || {
            format!("double of {g}: {r:?}")
        })?;
    }
    let toric = PointedBFC::preset("toric").map_err(err)?;
    let found = toric.lagrangian_subgroups(256).map_err(err)?.len();
    let brute = lagrangians_brute(&toric);
    ensure(found == 2 && brute == 2, || {
        format!("toric: {found} Lagrangians, brute force {brute}")
    })
}

/// Normalized `μ` on `Z/2` with `δμ = Ψ`, by trying every value of `μ(1,1)`.
fn mu_exists_brute(psi: impl Fn(usize, usize, usize) -> RootOfUnity, n: u64) -> bool {
    (0..n as i64).any(|k| {
        let mu = |a: usize, b: usize| {
            if a == 1 && b == 1 {
                RootOfUnity::new(n, k)
            } else {
                RootOfUnity::ONE
            }
        };
        (0..8).all(|t| {
            let (a, b, c) = (t >> 2 & 1, t >> 1 & 1, t & 1);
            let d = mu(b, c) * mu(a, (b + c) % 2) * mu((a + b) % 2, c).inv() * mu(a, b).inv();
            d == psi(a, b, c)
        })
    })
}

fn c8_braiding_existence() -> Outcome {
    let semion = PointedBFC::preset("semion").map_err(err)?;
    let z2 = semion.group().clone();
    let whole = Subgroup::whole(&z2);
    let chi = Character::trivial(&z2);
    let r = build_module_cat(&semion, &whole, &chi);
    ensure(matches!(r, Err(Error::NotAdmissible(_))), || {
        format!("semion on Z/2 gave {:?}", r.map(|m| m.value_order()))
    })?;
    let c = semion.braiding_cocycle().map_err(err)?;
    for n in 1..=8 {
        let solver = find_mu(c, &whole, n).map_err(err)?;
        let brute = mu_exists_brute(|a, b, k| c.psi_at(a, b, k), n);
        ensure(solver.is_none() && !brute, || {
            format!("semion: mu at N = {n}")
        })?;
    }
    let svect = PointedBFC::preset("svect").map_err(err)?;
    build_module_cat(&svect, &whole, &chi).map_err(err)?;
    Ok(())
}

fn c9_well_defined() -> Outcome {
    for b in battery() {
        let g = b.group();
        let center = b.mueger_center().map_err(err)?;
        for h in admissible_subgroups(&b, 256).map_err(err)? {
            for chi in characters(g) {
                let m = build_module_cat(&b, &h, &chi).map_err(err)?;
                for t in center.elements() {
                    let entry = smatrix2_entry(&m, &t).map_err(err)?;
                    for k in g.elements() {
                        let v = module_braiding(&m, &k, &t).map_err(err)?;
                        ensure(v == entry, || {
                            format!("{}: H = {h}, {chi}, k = {k}, g = {t}", describe(&b))
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn c10_classification() -> Outcome {
    let g = group("Z2");
    let classes = classify_h3ab(&g, 4).map_err(err)?;
    let q1: BTreeSet<RootOfUnity> = classes.iter().map(|c| c.form.at(1)).collect();
    let expect: BTreeSet<RootOfUnity> = (0..4).map(|k| RootOfUnity::new(4, k)).collect();
    ensure(classes.len() == 4 && q1 == expect, || {
        format!("classes keyed by {q1:?}")
    })?;
    let orbits = classify_h3ab_exhaustive(&g, 4).map_err(err)?;
    let mut traces = BTreeSet::new();
    for orbit in &orbits {
        let fibre: BTreeSet<Vec<RootOfUnity>> = orbit
            .iter()
            .map(|c| (0..2).map(|i| c.omega_at(i, i)).collect())
            .collect();
        ensure(fibre.len() == 1, || "orbit with several traces".into())?;
        ensure(traces.insert(fibre.into_iter().next().unwrap()), || {
            "two orbits share a trace".into()
        })?;
    }
    ensure(orbits.len() == 4, || format!("{} orbits", orbits.len()))?;
    for c in &classes {
        let size = orbits
            .iter()
            .find(|o| o[0].omega_at(1, 1) == c.form.at(1))
            .map_or(0, Vec::len);
        ensure(c.size == size.into(), || {
            format!("class q(1) = {}: size {}", c.form.at(1), c.size)
        })?;
    }
    Ok(())
}

fn small_groups() -> Vec<AbelianGroup> {
    let mut out: Vec<AbelianGroup> = (1..=8).map(AbelianGroup::cyclic).collect();
    for f in [vec![2, 2], vec![2, 3], vec![2, 4], vec![2, 2, 2]] {
        out.push(AbelianGroup::new(f).unwrap());
    }
    out
}

fn c11_kernel() -> Outcome {
    for n in 1..=48u64 {
        let phi = cyclotomic_polynomial(n);
        let totient = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64;
        ensure(
            phi.len() as u64 == totient + 1 && euler_phi(n) == totient,
            || format!("deg Phi_{n}"),
        )?;
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .fold(vec![BigInt::from(1)], |acc, d| {
                mul_int(&acc, &cyclotomic_polynomial(d))
            });
        ensure(product == x_pow_minus_one(n), || {
            format!("prod Phi_d != x^{n} - 1")
        })?;
        // Φ_N vanishes at ζ_N, evaluated root by root
        let mut value = CycloNumber::zero(n);
        for (i, c) in phi.iter().enumerate() {
            let term = RootOfUnity::new(n, i as i64)
                .to_cyclo()
                .scale(&c.clone().into());
            value = &value + &term;
        }
        ensure(value.is_zero(), || format!("Phi_{n}(z{n}) != 0"))?;
    }
    for g in small_groups() {
        let n = g.order();
        let t = character_table(&g);
        let gram = t.mul(&t.conj_transpose()).map_err(err)?;
        let mut scaled = vec![0i64; n * n];
        for i in 0..n {
            scaled[i * n + i] = n as i64;
        }
        ensure(
            gram == CycloMatrix::from_integers(n, n, &scaled).unwrap(),
            || format!("{g}: T T* != |G| Id"),
        )?;
        let det = t.det().map_err(err)?;
        let norm = det.try_mul(&det.conj()).map_err(err)?;
        let expect = CycloNumber::from_integer(1, (n as i64).pow(n as u32));
        ensure(norm == expect, || format!("{g}: |det|^2 = {norm}"))?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion {
            name: "character table of the center",
            budget: s(10),
            run: c1_character_table,
        },
        Criterion {
            name: "symmetric case gives the character table of G",
            budget: s(1),
            run: c2_symmetric_case,
        },
        Criterion {
            name: "pi0 bijection with transparent simples",
            budget: s(5),
            run: c3_pi0,
        },
        Criterion {
            name: "2-categorical S-matrix has full rank",
            budget: s(10),
            run: c4_full_rank,
        },
        Criterion {
            name: "Schur classes form a group homomorphism",
            budget: s(5),
            run: c5_group_hom,
        },
        Criterion {
            name: "rank of S equals |G| iff trivial center",
            budget: s(5),
            run: c6_nondegeneracy,
        },
        Criterion {
            name: "Drinfeld doubles and toric Lagrangians",
            budget: s(5),
            run: c7_drinfeld,
        },
        Criterion {
            name: "braiding exists iff H is transparent",
            budget: s(1),
            run: c8_braiding_existence,
        },
        Criterion {
            name: "S-matrix entries independent of the simple",
            budget: s(5),
            run: c9_well_defined,
        },
        Criterion {
            name: "H3_ab(Z2) classified by q(1)",
            budget: s(5),
            run: c10_classification,
        },
        Criterion {
            name: "cyclotomic kernel and character-table determinants",
            budget: s(5),
            run: c11_kernel,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("over budget {} ms", c.budget.as_millis())
            })
        });
        let ms = elapsed.as_millis();
        let budget = c.budget.as_millis();
        match outcome {
            Ok(()) => println!("PASS  {:>2}  {}  ({ms} ms / {budget} ms)", i + 1, c.name),
            Err(w) => {
                failed += 1;
                println!(
                    "FAIL  {:>2}  {}  ({ms} ms / {budget} ms): {w}",
                    i + 1,
                    c.name
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
