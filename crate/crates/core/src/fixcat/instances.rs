//! Small named signatures, and coalgebras and algebras over `{z: 0, s: 1}`.

use crate::signature::Signature;

use super::{Algebra, Coalgebra};

/// `p ↦ s(p)`: a single diverging loop.
pub fn loop_coalgebra() -> Coalgebra {
    Coalgebra::from_rows(Signature::naturals(), &["p"], &[("p", "s", vec!["p"])]).expect("valid")
}

/// `p ↦ z`: halts immediately.
pub fn stop_coalgebra() -> Coalgebra {
    Coalgebra::from_rows(Signature::naturals(), &["p"], &[("p", "z", vec![])]).expect("valid")
}

/// `x ↦ s(y), y ↦ s(x)`: a two-cycle.
pub fn swap_coalgebra() -> Coalgebra {
    Coalgebra::from_rows(
        Signature::naturals(),
        &["x", "y"],
        &[("x", "s", vec!["y"]), ("y", "s", vec!["x"])],
    )
    .expect("valid")
}

/// `x ↦ s(y), y ↦ z`: halts after two steps.
pub fn chain_coalgebra() -> Coalgebra {
    Coalgebra::from_rows(
        Signature::naturals(),
        &["x", "y"],
        &[("x", "s", vec!["y"]), ("y", "z", vec![])],
    )
    .expect("valid")
}

/// `A = {0, 1}` with `z ↦ 0` and `s(i) ↦ 1 - i`.
pub fn parity_algebra() -> Algebra {
    let sig = Signature::naturals();
    let z = sig.op("z").expect("z");
    Algebra::from_fn(sig, vec!["0".into(), "1".into()], move |op, args| {
        if op == z {
            0
        } else {
            1 - args[0]
        }
    })
    .expect("valid")
}

/// `{a: 1, b: 1}`: infinite binary words.
pub fn streams() -> Signature {
    Signature::new([("a", 1), ("b", 1)]).expect("valid")
}

/// `{leaf: 0, node: 2}`: binary trees.
pub fn binary_trees() -> Signature {
    Signature::new([("leaf", 0), ("node", 2)]).expect("valid")
}

/// `{k: 0}`: a single constant.
pub fn constant() -> Signature {
    Signature::new([("k", 0)]).expect("valid")
}

/// Every signature above, naturals first.
pub fn signatures() -> Vec<(&'static str, Signature)> {
    vec![
        ("naturals", Signature::naturals()),
        ("streams", streams()),
        ("binary_trees", binary_trees()),
        ("constant", constant()),
    ]
}

/// `x ↦ node(x, y), y ↦ leaf`: an infinite left spine of leaves.
pub fn spine_coalgebra() -> Coalgebra {
    Coalgebra::from_rows(binary_trees(), &["x", "y"], &[("x", "node", vec!["x", "y"]), ("y", "leaf", vec![])])
        .expect("valid")
}
