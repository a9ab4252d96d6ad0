use proptest::prelude::*;

use smatrix_core::battery::enumerate_quadratic_forms;
use smatrix_core::cocycle::{standard_cocycle, QuadraticForm, TwoCochain};
use smatrix_core::cyclotomic::{CycloMatrix, CycloNumber, RootOfUnity};
use smatrix_core::group::{
    all_subgroups, character_table, characters, AbelianGroup, Character, Quotient,
};
use smatrix_core::io::{category_from_json, category_to_json};
use smatrix_core::metric::{drinfeld_double, PointedBFC};
use smatrix_core::modules::{admissible_subgroups, build_module_cat, schur_class, smatrix2};

fn root(max_order: u64) -> impl Strategy<Value = RootOfUnity> {
    (1..=max_order, 0..max_order as i64 * 4).prop_map(|(n, k)| RootOfUnity::new(n, k))
}

fn group(max_order: usize) -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(1u32..=8, 1..=3)
        .prop_filter("order bound", move |f| {
            f.iter().product::<u32>() as usize <= max_order
        })
        .prop_map(|f| AbelianGroup::new(f).unwrap())
}

/// A quadratic form on a group of order at most `max_order`.
fn form(max_order: usize) -> impl Strategy<Value = QuadraticForm> {
    (group(max_order), any::<prop::sample::Index>()).prop_map(|(g, i)| {
        let forms = enumerate_quadratic_forms(&g).unwrap();
        forms[i.index(forms.len())].clone()
    })
}

/// A normalized 2-cochain on the whole group with values in `μ_n`.
fn cochain(g: &AbelianGroup, n: u64, seed: &[i64]) -> TwoCochain {
    let m = g.order();
    let values = (0..m * m)
        .map(|p| {
            let (i, j) = (p / m, p % m);
            if i == 0 || j == 0 {
                RootOfUnity::ONE
            } else {
                RootOfUnity::new(n, seed[p % seed.len()])
            }
        })
        .collect();
    TwoCochain::on_group(g, values).unwrap()
}

fn cyclo(n: u64, coeffs: &[i64]) -> CycloNumber {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| &CycloNumber::zeta_pow(n, i as u64) * &CycloNumber::from_integer(n, c))
        .fold(CycloNumber::zero(n), |a, b| &a + &b)
}

/// Inverse through the adjugate.
fn inverse3(m: &CycloMatrix) -> CycloMatrix {
    let det = m.det().unwrap();
    let mut entries = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            // cofactor C[j][i]
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = m.get(rows[0], cols[0]) * m.get(rows[1], cols[1])
                - m.get(rows[0], cols[1]) * m.get(rows[1], cols[0]);
            let cof = if (i + j) % 2 == 0 { minor } else { -minor };
            entries.push(cof.try_div(&det).unwrap());
        }
    }
    CycloMatrix::new(3, 3, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_has_its_true_order(r in root(24)) {
        let n = r.order();
        let z = r.to_cyclo();
        prop_assert!(z.pow(n).is_one());
        for m in 1..n {
            prop_assert!(!z.pow(m).is_one());
        }
    }

    #[test]
    fn root_storage_is_canonical(n in 1u64..=24, k in -48i64..48, s in 1u64..=5) {
        let a = RootOfUnity::new(n, k);
        let b = RootOfUnity::new(n * s, k * s as i64);
        prop_assert_eq!(a, b);
        prop_assert!(a.exponent() < a.order().max(1));
    }

    #[test]
    fn embedding_is_multiplicative(r in root(24), s in root(24)) {
        let n = num_integer::lcm(r.order(), s.order());
        let lhs = (r * s).embed(n).unwrap();
        let rhs = r.embed(n).unwrap().try_mul(&s.embed(n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_axioms(n in prop::sample::select(vec![3u64, 4, 5, 8, 12]),
                    a in prop::collection::vec(-3i64..=3, 1..6),
                    b in prop::collection::vec(-3i64..=3, 1..6),
                    c in prop::collection::vec(-3i64..=3, 1..6)) {
        let (a, b, c) = (cyclo(n, &a), cyclo(n, &b), cyclo(n, &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).try_div(&b).unwrap(), a.clone());
        }
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn det_times_det_of_inverse(entries in prop::collection::vec(root(6), 9)) {
        let m = CycloMatrix::from_roots(3, 3, &entries).unwrap();
        prop_assume!(m.is_invertible().unwrap());
        let inv = inverse3(&m);
        let n = m.conductor();
        prop_assert_eq!(m.mul(&inv).unwrap(), CycloMatrix::identity(3, n));
        prop_assert!(m.det().unwrap().try_mul(&inv.det().unwrap()).unwrap().is_one());
    }

    #[test]
    fn rank_matches_bareiss(pool in prop::collection::vec(prop::collection::vec(root(6), 4), 1..4),
                            picks in prop::collection::vec((any::<prop::sample::Index>(), 0i64..3), 4),
                            zero_row in any::<bool>()) {
        // rows drawn from a small pool, some scaled, so ranks vary
        let mut entries = Vec::new();
        for (r, (i, s)) in picks.iter().enumerate() {
            for x in &pool[i.index(pool.len())] {
                let v = if zero_row && r == 0 { CycloNumber::zero(1) } else { CycloNumber::from_integer(1, s + 1) };
                entries.push(&v * &x.to_cyclo());
            }
        }
        let m = CycloMatrix::new(4, 4, entries).unwrap();
        prop_assert_eq!(m.rank().unwrap(), m.bareiss_rank().unwrap());
        prop_assert_eq!(m.transpose().rank().unwrap(), m.bareiss_rank().unwrap());
    }

    #[test]
    fn subgroup_lattice(g in group(16)) {
        let subs = all_subgroups(&g, 16).unwrap();
        for h in &subs {
            prop_assert_eq!(g.order() % h.order(), 0);
            for k in &subs {
                let meet = h.intersection(k).unwrap();
                prop_assert!(subs.contains(&meet));
            }
        }
    }

    #[test]
    fn character_table_has_full_rank(g in group(16)) {
        prop_assert_eq!(character_table(&g).rank().unwrap(), g.order());
    }

    #[test]
    fn characters_are_homomorphisms(g in group(12), i in any::<prop::sample::Index>()) {
        let chars = characters(&g);
        let chi = &chars[i.index(chars.len())];
        for a in g.elements() {
            for b in g.elements() {
                prop_assert_eq!(chi.eval(&g.add(&a, &b)), chi.eval(&a) * chi.eval(&b));
            }
        }
    }

    #[test]
    fn quotient_fibres(g in group(16), i in any::<prop::sample::Index>()) {
        let subs = all_subgroups(&g, 16).unwrap();
        let h = &subs[i.index(subs.len())];
        let q = Quotient::new(&g, h).unwrap();
        prop_assert_eq!(q.group().order() * h.order(), g.order());
        let mut fibre = vec![0usize; q.group().order()];
        for x in g.elements() {
            fibre[q.coset_index(&x)] += 1;
        }
        prop_assert!(fibre.iter().all(|&f| f == h.order()));
    }

    #[test]
    fn restriction_is_a_homomorphism(g in group(16),
                                     i in any::<prop::sample::Index>(),
                                     a in any::<prop::sample::Index>(),
                                     b in any::<prop::sample::Index>()) {
        let subs = all_subgroups(&g, 16).unwrap();
        let pres = subs[i.index(subs.len())].presentation();
        let chars = characters(&g);
        let (chi, psi) = (&chars[a.index(chars.len())], &chars[b.index(chars.len())]);
        let lhs = chi.mul(psi).unwrap().restrict(&pres).unwrap();
        let rhs = chi.restrict(&pres).unwrap().mul(&psi.restrict(&pres).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn standard_cocycle_has_trace_q(q in form(8)) {
        let c = standard_cocycle(&q).unwrap();
        prop_assert!(c.is_abelian_cocycle() && c.is_normalized());
        prop_assert_eq!(c.trace_form().unwrap(), q);
    }

    #[test]
    fn coboundary_preserves_trace_and_s(q in form(4), seed in prop::collection::vec(0i64..4, 1..16)) {
        let c = standard_cocycle(&q).unwrap();
        let twisted = c.apply_coboundary(&cochain(q.group(), 4, &seed)).unwrap();
        prop_assert_eq!(twisted.trace_form().unwrap(), q.clone());
        let a = PointedBFC::from_cocycle("c", c).unwrap();
        let b = PointedBFC::from_cocycle("c", twisted).unwrap();
        prop_assert_eq!(a.smatrix1().unwrap(), b.smatrix1().unwrap());
    }

    #[test]
    fn smatrix1_symmetric_with_unit_row(q in form(16)) {
        let b = PointedBFC::from_form("q", q);
        let roots = b.smatrix1_roots().unwrap();
        let n = b.group().order();
        for g in 0..n {
            prop_assert!(roots[g].is_one() && roots[g * n].is_one());
            for h in 0..n {
                prop_assert_eq!(roots[g * n + h], roots[h * n + g]);
            }
        }
    }

    #[test]
    fn mueger_center_is_closed(q in form(16)) {
        let b = PointedBFC::from_form("q", q);
        let z = b.mueger_center().unwrap();
        let g = b.group();
        for x in z.elements() {
            prop_assert!(z.contains(&g.neg(&x)));
            for y in z.elements() {
                prop_assert!(z.contains(&g.add(&x, &y)));
            }
        }
    }

    #[test]
    fn smatrix2_unit_row_and_column(q in form(8)) {
        let b = PointedBFC::from_form("q", q);
        let s = smatrix2(&b).unwrap();
        let n = s.center.order();
        prop_assert!(s.square && s.invertible);
        prop_assert!(s.classes[0].is_trivial());
        for j in 0..n {
            prop_assert!(s.entry(0, j).is_one());
        }
        for i in 0..s.classes.len() {
            prop_assert!(s.entry(i, 0).is_one());
        }
    }

    #[test]
    fn schur_class_ignores_h(q in form(8), i in any::<prop::sample::Index>()) {
        let b = PointedBFC::from_form("q", q);
        let chars = characters(b.group());
        let chi = &chars[i.index(chars.len())];
        let classes: Vec<_> = admissible_subgroups(&b, 256)
            .unwrap()
            .iter()
            .map(|h| schur_class(&build_module_cat(&b, h, chi).unwrap()).unwrap())
            .collect();
        prop_assert!(classes.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn schur_classes_agree_iff_restrictions_agree(q in form(8),
                                                  a in any::<prop::sample::Index>(),
                                                  c in any::<prop::sample::Index>()) {
        let b = PointedBFC::from_form("q", q);
        let g = b.group();
        let chars = characters(g);
        let (x, y) = (&chars[a.index(chars.len())], &chars[c.index(chars.len())]);
        let h = smatrix_core::group::Subgroup::trivial(g);
        let sx = schur_class(&build_module_cat(&b, &h, x).unwrap()).unwrap();
        let sy = schur_class(&build_module_cat(&b, &h, y).unwrap()).unwrap();
        let z = b.mueger_center().unwrap();
        let same = z.elements().iter().all(|t| x.eval(t) == y.eval(t));
        prop_assert_eq!(sx == sy, same);
    }

    #[test]
    fn doubles_are_nondegenerate(g in group(4)) {
        let d = drinfeld_double(&g).unwrap();
        prop_assert!(d.is_nondegenerate().unwrap());
        prop_assert!(d.detect_center(256).unwrap().lagrangian_count >= 1);
    }

    #[test]
    fn category_json_round_trip(q in form(8), seed in prop::collection::vec(0i64..4, 1..16), twist in any::<bool>()) {
        let b = if twist && q.group().order() <= 4 {
            let c = standard_cocycle(&q).unwrap().apply_coboundary(&cochain(q.group(), 4, &seed)).unwrap();
            PointedBFC::from_cocycle("twisted", c).unwrap()
        } else {
            PointedBFC::from_form("plain", q)
        };
        let text = serde_json::to_string(&category_to_json(&b)).unwrap();
        let back = category_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn trivial_character_restricts_trivially() {
    let g: AbelianGroup = "Z2xZ4".parse().unwrap();
    for h in all_subgroups(&g, 16).unwrap() {
        assert!(Character::trivial(&g)
            .restrict(&h.presentation())
            .unwrap()
            .is_trivial());
    }
}
