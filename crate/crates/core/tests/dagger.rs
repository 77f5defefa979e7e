mod common;

use midfix::cli::random_relations;
use midfix::dagger::{
    all_relations, dagger_laws_check, rel_compose, rel_dagger, DaggerError, FinRel, FinSet,
};
use proptest::prelude::*;

fn any_relation(max: usize) -> impl Strategy<Value = FinRel> {
    (0..=max, 0..=max).prop_flat_map(|(m, n)| {
        prop::collection::vec(any::<bool>(), m * n).prop_map(move |bits| {
            let pairs = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).zip(bits).filter(|(_, b)| *b).map(|(p, _)| p);
            FinRel::from_indices(FinSet::range(m), FinSet::range(n), pairs.collect::<Vec<_>>())
        })
    })
}

/// Composable pair `X → Y → Z` over sets of size at most `max`.
fn composable(max: usize) -> impl Strategy<Value = (FinRel, FinRel)> {
    (0..=max, 0..=max, 0..=max).prop_flat_map(|(x, y, z)| {
        (prop::collection::vec(any::<bool>(), x * y), prop::collection::vec(any::<bool>(), y * z)).prop_map(
            move |(r, s)| {
                let build = |m: usize, n: usize, bits: Vec<bool>| {
                    let pairs: Vec<(usize, usize)> = (0..m)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .zip(bits)
                        .filter(|(_, b)| *b)
                        .map(|(p, _)| p)
                        .collect();
                    FinRel::from_indices(FinSet::range(m), FinSet::range(n), pairs)
                };
                (build(x, y, r), build(y, z, s))
            },
        )
    })
}

#[test]
fn thousand_random_relations_obey_the_laws() {
    let sample = random_relations(17, 1000, 4);
    let objects: Vec<FinSet> = (0..=4).map(FinSet::range).collect();
    let r = dagger_laws_check(&objects, &sample);
    assert!(r.passed(), "{:#?}", r.checks);
    assert!(r.composable_pairs > 1000);
}

#[test]
fn mismatched_composition_fails() {
    let r = FinRel::identity(&FinSet::range(2));
    let s = FinRel::identity(&FinSet::range(3));
    assert!(matches!(rel_compose(&r, &s), Err(DaggerError::ObjectMismatch { .. })));
}

#[test]
fn iso_matches_bijection_oracle() {
    for m in 0..=3 {
        for rel in all_relations(&FinSet::range(m), &FinSet::range(m)) {
            let functional = (0..m).all(|i| rel.pairs().iter().filter(|p| p.0 == i).count() == 1);
            let injective = (0..m).all(|j| rel.pairs().iter().filter(|p| p.1 == j).count() == 1);
            assert_eq!(rel.is_iso(), functional && injective, "{rel}");
        }
    }
}

proptest! {
    #[test]
    fn dagger_is_an_involution(r in any_relation(4)) {
        prop_assert_eq!(rel_dagger(&rel_dagger(&r)), r.clone());
        prop_assert_eq!(rel_dagger(&r).labelled_pairs().into_iter().collect::<std::collections::BTreeSet<_>>(), common::converse_pairs(&r));
    }

    #[test]
    fn composition_matches_oracle_and_reverses((r, s) in composable(4)) {
        let rs = rel_compose(&r, &s).unwrap();
        prop_assert_eq!(rs.labelled_pairs().into_iter().collect::<std::collections::BTreeSet<_>>(), common::compose_pairs(&r, &s));
        prop_assert_eq!(rel_dagger(&rs), rel_compose(&rel_dagger(&s), &rel_dagger(&r)).unwrap());
    }
}
