use midfix::signature::{enumerate_rank, f_enumerate, Signature, SignatureError, Term};
use proptest::prelude::*;

fn any_signature() -> impl Strategy<Value = Signature> {
    prop::collection::vec(0usize..=2, 1..=3).prop_map(|arities| {
        Signature::new(arities.into_iter().enumerate().map(|(i, a)| (format!("o{i}"), a))).unwrap()
    })
}

fn count(sig: &Signature, x: usize) -> usize {
    sig.ops().iter().map(|o| x.pow(o.arity as u32)).sum()
}

#[test]
fn arity_mismatch_is_reported() {
    let err = Term::flat(&Signature::naturals(), 1, "s", &[]).unwrap_err();
    assert!(matches!(err, SignatureError::ArityMismatch { expected: 1, got: 0, .. }));
}

proptest! {
    #[test]
    fn f_enumerate_has_expected_size(sig in any_signature(), x in 0usize..4) {
        let ts = f_enumerate(&sig, x);
        prop_assert_eq!(ts.len(), count(&sig, x));
        let mut sorted = ts.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), ts.len());
    }

    #[test]
    fn levels_follow_the_recurrence(sig in any_signature(), x in 0usize..3) {
        let mut c = x;
        for k in 0..=3 {
            if c > 100_000 {
                let capped = matches!(enumerate_rank(&sig, x, k, 100_000), Err(SignatureError::CapExceeded { .. }));
                prop_assert!(capped);
                break;
            }
            let level = enumerate_rank(&sig, x, k, 100_000).unwrap();
            prop_assert_eq!(level.len(), c);
            c = count(&sig, c);
        }
    }

    #[test]
    fn unfolding_raises_rank_and_extends(sig in any_signature(), n in 1usize..4, seed in any::<u64>(), times in 0usize..4) {
        let mut gen = midfix::fixcat::random::InstanceGen::new(seed, Default::default());
        let b = gen.coalgebra_of_size(&sig, n);
        for x in 0..b.len() {
            let t = Term::generator(x).unfold(b.structure(), times);
            prop_assert_eq!(t.rank(), times);
            let next = t.unfold_once(b.structure());
            prop_assert!(t.tree().is_prefix_of(next.tree()));
        }
    }

    #[test]
    fn map_leaves_composes(sig in any_signature(), x in 1usize..4, k in 0usize..3) {
        let level = enumerate_rank(&sig, x, k, 100_000).unwrap();
        let g = |v: usize| (v + 1) % x;
        let h = |v: usize| (v * 2) % x;
        for t in level.iter().take(200) {
            prop_assert_eq!(t.map_leaves(g).map_leaves(h), t.map_leaves(|v| h(g(v))));
        }
    }
}
