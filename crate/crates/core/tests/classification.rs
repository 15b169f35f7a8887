mod support;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use superalg::algebra::{check_leibniz_super, symmetrized_products_in_annihilator, BimoduleSpec, Element};
use superalg::catalog::{
    assemble, bimodule_m1, bimodule_m2, bimodule_m3, bimodule_m4, module_n1, module_n2, sl2, superalgebra_s1,
    superalgebra_s2, OddBracketTable,
};
use superalg::classify::{
    annihilator_prefilter, classify, classify_with, generate_constraints, generate_constraints_with,
    s2_family, solve, verify_rescaling_isomorphism, ConstraintSystem, GenerateOptions,
};
use superalg::linalg::{dense_to_sparse, primitive_integer, Matrix, RowSpace, Scalar};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

const NO_PREFILTER: GenerateOptions = GenerateOptions {
    strict_symmetry: false,
    prefilter: false,
};

fn named(cs: &ConstraintSystem, v: &[Scalar]) -> BTreeMap<String, Scalar> {
    cs.unknowns()
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(u, c)| (u.to_string(), c.clone()))
        .collect()
}

fn grid() -> Vec<(String, BimoduleSpec)> {
    let mut out = Vec::new();
    for n in 0..=6 {
        out.push((format!("n1:{n}"), module_n1(n)));
        out.push((format!("n2:{n}"), module_n2(n)));
    }
    for n in 2..=6 {
        out.push((format!("m1:{n}"), bimodule_m1(n).unwrap()));
        out.push((format!("m2:{n}"), bimodule_m2(n).unwrap()));
    }
    for (n, k) in [(4, 2), (6, 2), (6, 3)] {
        out.push((format!("m3:{n}:{k}"), bimodule_m3(n, k).unwrap()));
        out.push((format!("m4:{n}:{k}"), bimodule_m4(n, k).unwrap()));
    }
    out
}

#[test]
fn two_dimensional_simple_module_gives_s1_and_s2() {
    let c = classify(&sl2(), &module_n1(1)).unwrap();
    assert_eq!(c.dimension(), 1);
    assert_eq!(c.representatives[0].algebra, superalgebra_s1());
    assert_eq!(c.representatives[1].algebra, superalgebra_s2());
    for r in &c.representatives {
        assert!(check_leibniz_super(&r.algebra).is_empty());
    }
    let got = named(&c.system, &c.representatives[1].point);
    let expected: BTreeMap<String, Scalar> = [("a_0_0", s(2)), ("c_0_1", s(1)), ("b_1_1", s(2))]
        .into_iter()
        .map(|(k, v)| (k.into(), v))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn brute_force_agrees_with_solver_on_integer_box() {
    let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
    let space = solve(&cs);
    assert_eq!(space.dimension(), 1);
    let p = primitive_integer(&space.basis()[0]);
    let mut from_solver = BTreeSet::new();
    for t in -2i64..=2 {
        let v: Vec<Scalar> = p.iter().map(|x| x * s(t)).collect();
        if v.iter().all(|x| x.abs() <= s(2)) {
            from_solver.insert(named(&cs, &v));
        }
    }
    let from_sweep: BTreeSet<BTreeMap<String, Scalar>> = support::brute_force_n1_1(-2, 2)
        .into_iter()
        .map(|m| m.into_iter().map(|(k, v)| (k, s(v))).collect())
        .collect();
    assert_eq!(from_sweep.len(), 3);
    assert_eq!(from_sweep, from_solver);
}

#[test]
fn simple_modules_of_dimension_at_least_three_are_rigid() {
    for n in 2..=8 {
        let c = classify(&sl2(), &module_n1(n)).unwrap();
        assert_eq!(c.dimension(), 0, "n = {n}");
        assert_eq!(c.verdict(), "[L1,L1]=0");
    }
}

#[test]
fn one_dimensional_module_regression() {
    assert_eq!(classify(&sl2(), &module_n1(0)).unwrap().dimension(), 0);
}

#[test]
fn zero_left_action_is_rigid() {
    for n in 0..=8 {
        assert_eq!(classify(&sl2(), &module_n2(n)).unwrap().dimension(), 0, "n = {n}");
    }
}

#[test]
fn two_summand_families_are_rigid() {
    for n in 2..=6 {
        for (name, m) in [("m1", bimodule_m1(n).unwrap()), ("m2", bimodule_m2(n).unwrap())] {
            let c = classify(&sl2(), &m).unwrap();
            assert_eq!(c.dimension(), 0, "{name}:{n}");
            assert_eq!(c.representative_names(), ["zero"]);
        }
    }
}

#[test]
fn prefilter_flags_the_symmetric_summand() {
    for n in 2..=6 {
        let m1 = bimodule_m1(n).unwrap();
        let flagged: BTreeSet<String> = annihilator_prefilter(&sl2(), &m1)
            .unwrap()
            .into_iter()
            .map(|i| m1.labels()[i].clone())
            .collect();
        let ys: BTreeSet<String> = (0..=n - 2).map(|j| format!("y_{j}")).collect();
        assert_eq!(flagged, ys, "m1:{n}");

        let m2 = bimodule_m2(n).unwrap();
        let flagged: BTreeSet<String> = annihilator_prefilter(&sl2(), &m2)
            .unwrap()
            .into_iter()
            .map(|i| m2.labels()[i].clone())
            .collect();
        let xs: BTreeSet<String> = (0..=n).map(|i| format!("x_{i}")).collect();
        assert_eq!(flagged, xs, "m2:{n}");

        assert!(annihilator_prefilter(&sl2(), &module_n1(n)).unwrap().is_empty());
    }
}

#[test]
fn chain_families_are_rigid() {
    for (n, k) in [(4, 2), (6, 2), (6, 3), (8, 3)] {
        for m in [bimodule_m3(n, k).unwrap(), bimodule_m4(n, k).unwrap()] {
            let c = classify(&sl2(), &m).unwrap();
            assert_eq!(c.dimension(), 0, "({n},{k})");
        }
    }
}

#[test]
fn prefilter_is_conservative() {
    for (id, m) in grid() {
        let with = classify(&sl2(), &m).unwrap();
        let without = classify_with(&sl2(), &m, NO_PREFILTER).unwrap();
        assert!(with.space.same_span(&without.space), "{id}");
        assert_eq!(with.dimension(), without.dimension(), "{id}");
    }
}

fn hand_rows(cs: &ConstraintSystem, n: usize) -> RowSpace {
    support::hand_system(
        n,
        |kind, i, j| cs.unknown_named(&format!("{kind}_{i}_{j}")).expect("declared"),
        cs.unknowns().len(),
    )
}

fn leading_even(cs: &ConstraintSystem) -> ConstraintSystem {
    cs.restrict(|t| !cs.is_odd(t[0]) && cs.is_odd(t[1]) && cs.is_odd(t[2]))
}

#[test]
fn generated_even_odd_odd_rows_match_hand_equations() {
    for n in 1..=6 {
        let cs = generate_constraints_with(&sl2(), &module_n1(n), NO_PREFILTER).unwrap();
        let hand = hand_rows(&cs, n);
        let generated = leading_even(&cs).row_space();
        assert_eq!(generated.to_matrix(), hand.to_matrix(), "n = {n}");
        assert_eq!(generated.nullspace(), hand.nullspace(), "n = {n}");
    }
}

#[test]
fn full_system_against_hand_equations() {
    for n in 1..=6 {
        let cs = generate_constraints_with(&sl2(), &module_n1(n), NO_PREFILTER).unwrap();
        let hand = hand_rows(&cs, n);
        let full = cs.row_space();
        // the full system always refines the hand equations
        for row in hand.to_matrix().sparse_rows() {
            assert!(full.contains(row), "n = {n}");
        }
        let hand_dim = hand.nullspace().len();
        if n % 2 == 0 || n == 1 {
            assert_eq!(full.to_matrix(), hand.to_matrix(), "n = {n}");
        } else {
            // odd triples are needed to kill a_{i,n-1-i}
            assert_eq!(hand_dim, 1, "n = {n}");
            assert_eq!(full.nullspace().len(), 0, "n = {n}");
        }
    }
}

#[test]
fn alternating_sign_relation_is_implied() {
    for n in 2..=6 {
        let cs = generate_constraints_with(&sl2(), &module_n1(n), NO_PREFILTER).unwrap();
        let rows = cs.row_space();
        let base = cs.unknown_named(&format!("a_0_{}", n - 1)).unwrap();
        for i in 0..n {
            let j = n - 1 - i;
            let target = cs.unknown_named(&format!("a_{}_{}", i.min(j), i.max(j))).unwrap();
            let mut v = vec![Scalar::zero(); cs.unknowns().len()];
            v[target] += Scalar::one();
            v[base] -= Scalar::sign_power(i as u32);
            assert!(rows.contains(&dense_to_sparse(&v)), "n = {n}, i = {i}");
        }
    }
}

#[test]
fn strict_mode_recovers_symmetry() {
    let strict = GenerateOptions {
        strict_symmetry: true,
        prefilter: false,
    };
    for (id, m) in [
        ("n1:1", module_n1(1)),
        ("n1:2", module_n1(2)),
        ("n1:3", module_n1(3)),
        ("m1:2", bimodule_m1(2).unwrap()),
        ("m2:2", bimodule_m2(2).unwrap()),
    ] {
        let c = classify_with(&sl2(), &m, strict).unwrap();
        assert!(c.space.is_symmetric(), "{id}");
        let default = classify_with(&sl2(), &m, NO_PREFILTER).unwrap();
        assert_eq!(c.dimension(), default.dimension(), "{id}");
    }
}

#[test]
fn symmetrized_products_of_s2_lie_in_annihilator() {
    assert!(symmetrized_products_in_annihilator(&superalgebra_s2())
        .unwrap()
        .is_empty());
    assert!(symmetrized_products_in_annihilator(&superalgebra_s1())
        .unwrap()
        .is_empty());
}

#[test]
fn rescaling_at_rational_squares() {
    for c in [s(1), s(4), Scalar::ratio(9, 4), s(25)] {
        assert!(verify_rescaling_isomorphism(&c).unwrap(), "c = {c}");
    }
    assert_eq!(s2_family(&s(1)), superalgebra_s2());
    assert!(verify_rescaling_isomorphism(&s(3)).is_err());
}

#[test]
fn constraint_export_is_deterministic() {
    let a = generate_constraints(&sl2(), &bimodule_m1(3).unwrap()).unwrap();
    let b = generate_constraints(&sl2(), &bimodule_m1(3).unwrap()).unwrap();
    assert_eq!(
        serde_json::to_string(&a.to_json()).unwrap(),
        serde_json::to_string(&b.to_json()).unwrap()
    );
    let triples: Vec<[usize; 3]> = a.rows().iter().map(|r| r.triple).collect();
    let mut sorted = triples.clone();
    sorted.sort();
    assert_eq!(triples, sorted);
}

fn zero_action_module(m: usize) -> BimoduleSpec {
    BimoduleSpec::new(
        sl2(),
        (0..m).map(|i| format!("z_{i}")).collect(),
        vec![Matrix::zeros(m, m); 3],
        vec![Matrix::zeros(m, m); 3],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_action_admits_only_zero_bracket(
        m in 1usize..4,
        seed in prop::collection::vec((0usize..4, 0usize..4, 0usize..3, -3i64..=3), 1..6),
    ) {
        let module = zero_action_module(m);
        prop_assert_eq!(classify(&sl2(), &module).unwrap().dimension(), 0);
        let mut table = OddBracketTable::zero(m, 3);
        for (i, j, c, v) in seed {
            let (i, j) = (i % m, j % m);
            let mut entry = table.get(i, j).cloned().unwrap_or_else(|| Element::zero(3));
            entry.add_term(c, &s(v));
            table.set(i, j, entry).unwrap();
        }
        let algebra = assemble(&sl2(), &module, &table).unwrap();
        prop_assert_eq!(check_leibniz_super(&algebra).is_empty(), table.is_zero());
    }

    #[test]
    fn every_family_member_is_a_superalgebra(p in -40i64..=40, q in 1i64..=12) {
        let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
        let space = solve(&cs);
        let t = Scalar::ratio(p, q);
        let v: Vec<Scalar> = space.basis()[0].iter().map(|x| x * &t).collect();
        let table = space.table(&v, 2, 3).unwrap();
        let algebra = assemble(&sl2(), &module_n1(1), &table).unwrap();
        prop_assert!(check_leibniz_super(&algebra).is_empty());
    }

    #[test]
    fn rescaling_holds_for_any_rational_square(p in 1i64..=30, q in 1i64..=30, neg in any::<bool>()) {
        let r = Scalar::ratio(if neg { -p } else { p }, q);
        prop_assert!(verify_rescaling_isomorphism(&(&r * &r)).unwrap());
    }

    #[test]
    fn off_family_points_fail(perturb in 0usize..9, delta in prop_oneof![Just(-1i64), Just(1)]) {
        let cs = generate_constraints(&sl2(), &module_n1(1)).unwrap();
        let space = solve(&cs);
        let mut v = primitive_integer(&space.basis()[0]);
        v[perturb] += s(delta);
        let table = space.table(&v, 2, 3).unwrap();
        let algebra = assemble(&sl2(), &module_n1(1), &table).unwrap();
        prop_assert!(!check_leibniz_super(&algebra).is_empty());
    }
}
