use latpoly::combinatorics::{antichains, count_selectors};
use latpoly::graph::{build_big_permutograph, build_permutohedron_graph, Permutograph};
use latpoly::lattice::{
    antichain_from_truth_table, canonicalize, check_dpl, check_separation, order_statistic_polynomial,
    poly_equal, synthesize_polynomial, truth_table_01, IntegralFunction, LatticePolynomial, VarSet,
};
use latpoly::perm::all_permutations;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn family(n: usize) -> impl Strategy<Value = LatticePolynomial> {
    prop::collection::vec(1u64..(1u64 << n), 1..6)
        .prop_map(move |bits| LatticePolynomial::new(n, bits.into_iter().map(VarSet::from_bits).collect()).unwrap())
}

fn poly(max_n: usize) -> impl Strategy<Value = LatticePolynomial> {
    (1..=max_n).prop_flat_map(family)
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent_and_preserves_values(p in poly(6)) {
        let c = canonicalize(&p);
        prop_assert_eq!(&canonicalize(c.as_polynomial()), &c);
        prop_assert!(poly_equal(&p, c.as_polynomial()));
        for a in all_permutations(p.order()) {
            prop_assert_eq!(p.eval(&a).unwrap(), c.eval(&a).unwrap());
        }
        let sets = c.sets();
        for (i, s) in sets.iter().enumerate() {
            for t in &sets[i + 1..] {
                prop_assert!(!s.is_subset(*t) && !t.is_subset(*s));
            }
        }
        prop_assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn truth_table_round_trip(p in poly(6)) {
        let table = truth_table_01(&p).unwrap();
        prop_assert_eq!(antichain_from_truth_table(p.order(), &table).unwrap(), canonicalize(&p));
    }

    #[test]
    fn induced_functions_satisfy_both_properties(p in poly(4)) {
        let n = p.order();
        if n >= 2 {
            let g = build_permutohedron_graph(n).unwrap();
            let f = IntegralFunction::from_polynomial(&p, g.vertices()).unwrap();
            prop_assert!(check_dpl(&f, &g).unwrap().is_ok());
            prop_assert!(check_separation(&f).is_ok());
            let back = synthesize_polynomial(&f).unwrap();
            prop_assert_eq!(back, canonicalize(&p));
        }
    }
}

fn round_trip_on(g: &Permutograph, p: &LatticePolynomial) {
    let f = IntegralFunction::from_polynomial(p, g.vertices()).unwrap();
    assert!(check_dpl(&f, g).unwrap().is_ok());
    assert!(check_separation(&f).is_ok());
    let k = synthesize_polynomial(&f).unwrap();
    for (a, v) in f.iter() {
        assert_eq!(k.eval(a).unwrap(), v);
    }
}

#[test]
fn every_antichain_round_trips_on_both_graphs() {
    for n in 2..=4 {
        let graphs = [build_big_permutograph(n).unwrap(), build_permutohedron_graph(n).unwrap()];
        for a in antichains(n).unwrap() {
            for g in &graphs {
                round_trip_on(g, a.as_polynomial());
            }
        }
    }
}

#[test]
fn all_functions_on_s3() {
    let g = build_big_permutograph(3).unwrap();
    let pi = build_permutohedron_graph(3).unwrap();
    let vertices = g.vertices().to_vec();
    let mut dpl_count = 0;
    for code in 0..3usize.pow(6) {
        let mut c = code;
        let entries = vertices
            .iter()
            .map(|v| {
                let value = c % 3 + 1;
                c /= 3;
                (v.clone(), value)
            })
            .collect();
        let f = IntegralFunction::new(3, entries).unwrap();
        let sep = check_separation(&f).is_ok();
        assert_eq!(check_dpl(&f, &g).unwrap().is_ok(), sep);
        assert_eq!(check_dpl(&f, &pi).unwrap().is_ok(), sep);
        if sep {
            dpl_count += 1;
            let k = synthesize_polynomial(&f).unwrap();
            assert!(f.iter().all(|(a, v)| k.eval(a).unwrap() == v));
        }
    }
    // DPL functions on all of S_3 are exactly the 18 selectors
    assert_eq!(dpl_count, 18);
}

#[test]
fn perturbations_break_both_or_neither() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 3..=5 {
        let g = build_big_permutograph(n).unwrap();
        let pi = build_permutohedron_graph(n).unwrap();
        let all = antichains(n.min(5)).unwrap();
        for _ in 0..40 {
            let a = &all[rng.gen_range(0..all.len())];
            let f = IntegralFunction::from_polynomial(a.as_polynomial(), g.vertices()).unwrap();
            let v = g.vertices()[rng.gen_range(0..g.vertices().len())].clone();
            let f2 = f.with_value(&v, rng.gen_range(1..=n)).unwrap();
            let sep = check_separation(&f2).is_ok();
            assert_eq!(check_dpl(&f2, &g).unwrap().is_ok(), sep);
            assert_eq!(check_dpl(&f2, &pi).unwrap().is_ok(), sep);
        }
    }
}

#[test]
fn order_statistics_pick_the_kth_entry() {
    for n in 1..=6 {
        for k in 1..=n {
            let p = order_statistic_polynomial(n, k).unwrap();
            for a in all_permutations(n) {
                assert_eq!(p.eval(&a).unwrap(), a.images()[k - 1]);
            }
        }
    }
}

#[test]
fn selector_truth_tables_are_distinct() {
    for d in 1..=4 {
        let tables: HashSet<Vec<bool>> = antichains(d)
            .unwrap()
            .iter()
            .map(|a| truth_table_01(a.as_polynomial()).unwrap())
            .collect();
        assert_eq!(tables.len() as u64, u64::try_from(count_selectors(d).unwrap()).unwrap());
    }
}
