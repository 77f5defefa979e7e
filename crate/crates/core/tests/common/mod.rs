//! Brute-force oracles shared by the integration tests. Each one recomputes
//! a quantity from definitions without going through the code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use midfix::dagger::FinRel;
use midfix::fixcat::{Algebra, Coalgebra};
use midfix::lattice::{FinLattice, MonotoneMap};
use midfix::signature::{Signature, Tree};

/// Every partial order on `{0..n}` that is a lattice, as `leq` matrices,
/// found by trying all `2^(n²)` relations. Deduplicated up to isomorphism.
pub fn lattice_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut classes: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << (n * n)) {
        let leq: Vec<Vec<bool>> =
            (0..n).map(|a| (0..n).map(|b| mask >> (a * n + b) & 1 == 1).collect()).collect();
        if !is_partial_order(&leq) || !has_all_joins_and_meets(&leq) {
            continue;
        }
        let canon = permutations(n)
            .iter()
            .map(|p| (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| leq[p[a]][p[b]]).collect())
            .min()
            .unwrap();
        if classes.insert(canon) {
            out.push(leq);
        }
    }
    out
}

fn is_partial_order(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|a| leq[a][a])
        && (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a][b] && leq[b][a])))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])))
}

fn has_all_joins_and_meets(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).all(|a| (0..n).all(|b| least_upper(leq, a, b).is_some() && greatest_lower(leq, a, b).is_some()))
}

fn least_upper(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let ubs: Vec<usize> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| leq[u][v]))
}

fn greatest_lower(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lbs: Vec<usize> = (0..n).filter(|&l| leq[l][a] && leq[l][b]).collect();
    lbs.iter().copied().find(|&l| lbs.iter().all(|&v| leq[v][l]))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of monotone maps, counted over all `n^n` functions.
pub fn count_monotone(l: &FinLattice) -> usize {
    let n = l.len();
    let mut count = 0;
    let mut f = vec![0usize; n];
    loop {
        if (0..n).all(|a| (0..n).all(|b| !l.leq(a, b) || l.leq(f[a], f[b]))) {
            count += 1;
        }
        if !odometer(&mut f, n) {
            return count;
        }
    }
}

pub fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Least fixpoint above `x`, by scanning all elements.
pub fn least_fixpoint_above(f: &MonotoneMap, x: usize) -> Option<usize> {
    let l = f.lattice();
    let above: Vec<usize> = (0..l.len()).filter(|&p| f.apply(p) == p && l.leq(x, p)).collect();
    above.iter().copied().find(|&p| above.iter().all(|&q| l.leq(p, q)))
}

pub fn greatest_fixpoint_below(f: &MonotoneMap, y: usize) -> Option<usize> {
    let l = f.lattice();
    let below: Vec<usize> = (0..l.len()).filter(|&p| f.apply(p) == p && l.leq(p, y)).collect();
    below.iter().copied().find(|&p| below.iter().all(|&q| l.leq(q, p)))
}

/// Greatest lower bound of `set` by scanning all elements.
pub fn inf(l: &FinLattice, set: &[usize]) -> usize {
    let lbs: Vec<usize> = (0..l.len()).filter(|&z| set.iter().all(|&s| l.leq(z, s))).collect();
    lbs.iter().copied().find(|&z| lbs.iter().all(|&w| l.leq(w, z))).unwrap()
}

pub fn sup(l: &FinLattice, set: &[usize]) -> usize {
    let ubs: Vec<usize> = (0..l.len()).filter(|&z| set.iter().all(|&s| l.leq(s, z))).collect();
    ubs.iter().copied().find(|&z| ubs.iter().all(|&w| l.leq(z, w))).unwrap()
}

/// All maps `f : B → A` with `a ∘ F(f) ∘ b = f`, by trying every function.
pub fn brute_force_homs(b: &Coalgebra, a: &Algebra) -> Vec<Vec<usize>> {
    let (n, m) = (b.len(), a.len());
    let mut out = Vec::new();
    if m == 0 && n > 0 {
        return out;
    }
    let mut f = vec![0usize; n];
    loop {
        let ok = (0..n).all(|x| match b.step(x).tree() {
            Tree::Node(op, kids) => {
                let args: Vec<usize> = kids
                    .iter()
                    .map(|k| match k {
                        Tree::Leaf(y) => f[*y],
                        Tree::Node(..) => unreachable!(),
                    })
                    .collect();
                a.apply_op(*op, &args) == f[x]
            }
            Tree::Leaf(_) => unreachable!(),
        });
        if ok {
            out.push(f.clone());
        }
        if n == 0 || !odometer(&mut f, m) {
            return out;
        }
    }
}

/// `|Fᵏ(X)|` from `c₀ = x`, `c_{k+1} = Σ_σ c_k^{ar(σ)}`, saturating at `u128::MAX`.
pub fn level_counts(sig: &Signature, x: u128, depth: usize) -> Vec<u128> {
    let mut c = vec![x];
    for _ in 0..depth {
        let prev = *c.last().unwrap();
        c.push(sig.ops().iter().fold(0u128, |acc, o| acc.saturating_add(prev.saturating_pow(o.arity as u32))));
    }
    c
}

/// Converse computed on labelled pairs.
pub fn converse_pairs(r: &FinRel) -> BTreeSet<(String, String)> {
    r.labelled_pairs().into_iter().map(|(x, y)| (y, x)).collect()
}

/// Composite computed on labelled pairs.
pub fn compose_pairs(r: &FinRel, s: &FinRel) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for (x, y) in r.labelled_pairs() {
        for (y2, z) in s.labelled_pairs() {
            if y == y2 {
                out.insert((x.clone(), z));
            }
        }
    }
    out
}
