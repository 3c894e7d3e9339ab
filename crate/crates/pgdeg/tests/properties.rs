mod common;

use pgdeg::closure::ClosureSpace;
use pgdeg::corpus;
use pgdeg::degree::{self, decalage_degrees};
use pgdeg::roots::{RootKind, RootSystem};
use pgdeg::segal::{check_segal_generic, dec_bot, SegalOutcome, SegalVariant};
use pgdeg::symcore::SymSet;
use proptest::prelude::*;
use std::sync::Arc;

use common::{bits, corpus_groupoids, SEGAL_CORPUS, SMALL_WEYL};

fn views() -> Vec<Arc<dyn SymSet>> {
    ["na", "skeleton:2,3", "sphere:1", "bcom:S3"]
        .iter()
        .map(|s| corpus::make(s).unwrap().symset(3).unwrap())
        .chain([dec_bot(corpus::make("na").unwrap().symset(3).unwrap())])
        .collect()
}

fn arb_map(from: usize, to: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..=to, from + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_functorial(
        which in 0usize..5,
        (p, n, m) in (0usize..=3, 0usize..=3, 0usize..=3),
        pick in any::<prop::sample::Index>(),
        seeds in (arb_map(3, 3), arb_map(3, 3)),
    ) {
        let x_set = &views()[which];
        let xs = x_set.simplices(p).unwrap();
        prop_assume!(!xs.is_empty());
        // β: [n] → [p], α: [m] → [n]
        let beta: Vec<usize> = seeds.0[..=n].iter().map(|v| v % (p + 1)).collect();
        let alpha: Vec<usize> = seeds.1[..=m].iter().map(|v| v % (n + 1)).collect();
        prop_assert_eq!(common::functoriality(x_set.as_ref(), pick.get(&xs), &beta, &alpha), Ok(()));
    }

    #[test]
    fn simplicial_identities(which in 0usize..5, p in 2usize..=3, pick in any::<prop::sample::Index>(), i in 0usize..=3, j in 0usize..=3) {
        let x_set = &views()[which];
        let xs = x_set.simplices(p).unwrap();
        prop_assume!(!xs.is_empty());
        prop_assert_eq!(common::simplicial_identities(x_set.as_ref(), pick.get(&xs), i.min(j), i.max(j)), Ok(()));
    }
}

/// Closure spaces on at most seven points, given by generating closed sets.
fn arb_space() -> impl Strategy<Value = ClosureSpace> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0..n, 0..=n), 0..=9).prop_map(move |gens| ClosureSpace::new(n, gens))
    })
}

fn arb_family(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(proptest::collection::vec(0..n, 0..=n), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn core_monotone_and_closure_invariant(cs in arb_space(), fam in arb_family(7), extra in arb_family(7)) {
        let n = cs.ground_size();
        prop_assert_eq!(common::core_laws(&cs, &bits(n, &fam), &bits(n, &extra)), Ok(()));
    }

    #[test]
    fn adjunction_and_critical_correspondence(cs in arb_space(), fam in arb_family(7)) {
        prop_assert_eq!(common::adjunction_laws(&cs, &bits(cs.ground_size(), &fam)), Ok(()));
    }

    #[test]
    fn helly_number_is_max_critical_size(cs in arb_space()) {
        prop_assert_eq!(common::helly_laws(&cs), Ok(()));
    }
}

#[test]
fn symmetric_collapse_and_hierarchy() {
    for spec in SEGAL_CORPUS {
        for k in 1..=2 {
            common::collapse_and_hierarchy(spec, k).unwrap();
        }
    }
}

#[test]
fn generic_witnesses_replay() {
    for spec in SEGAL_CORPUS {
        let p = corpus::make(spec).unwrap();
        let view = p.symset(4).unwrap();
        if let SegalOutcome::Fail { witness } = check_segal_generic(view.as_ref(), SegalVariant::LowerOdd(1), 4).unwrap() {
            assert!(witness.replay_family(view.as_ref()).unwrap(), "{spec}");
        }
    }
}

#[test]
fn decalage_keeps_degree() {
    for (spec, deg) in [("na", 3), ("skeleton:1,3", 2), ("bcom:S3", 2), ("sphere:1", 2), ("representable:2", 1)] {
        let view = corpus::make(spec).unwrap().symset(6).unwrap();
        let got = decalage_degrees(view, 4, 2).unwrap();
        assert_eq!(got, [Some(deg); 3], "{spec}");
    }
}

#[test]
fn reduction_keeps_degree() {
    for (spec, p) in corpus_groupoids() {
        let pg = p.partial_groupoid().unwrap();
        let r = degree::reduction_invariance_check(pg).unwrap();
        assert!(r.holds, "{spec}: {r:?}");
    }
}

#[test]
fn degree_at_most_dimension_plus_one() {
    for (spec, p) in corpus_groupoids() {
        assert!(degree::degree_bound_check(p.partial_groupoid().unwrap()).unwrap(), "{spec}");
    }
}

#[test]
fn action_closure_is_real_cone() {
    for (kind, rank) in SMALL_WEYL {
        common::closure_is_cone(kind, rank).unwrap();
    }
}

#[test]
fn cones_are_closure_operators() {
    let rs = RootSystem::build(RootKind::B, 3).unwrap();
    let n = rs.positive_count();
    for mask in 0u32..1 << n {
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let (z, r) = (rs.cone_z(&a), rs.cone_r(&a));
        assert!(a.iter().all(|x| z.contains(x)));
        assert!(z.iter().all(|x| r.contains(x)));
        assert_eq!(rs.cone_r(&r), r);
        assert_eq!(rs.cone_z(&z), z);
    }
}
