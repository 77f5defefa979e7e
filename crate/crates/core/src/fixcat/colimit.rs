//! The algebra `μ(b) = colim(B → F(B) → F²(B) → …)` of a finite coalgebra.
//!
//! A point of the colimit is a pair `(n, t)` with `t ∈ Fⁿ(B)`, where
//! `(n, t)` is identified with `(n + 1, Fⁿ(b)(t))`. Two generators are equal
//! in the colimit iff some finite unfolding makes them syntactically equal;
//! [`ColimEq`] computes that relation as a least fixpoint on `B × B`, and
//! [`mu_eq`] lifts it to arbitrary representatives.
//!
//! This is the categorical colimit. It can be strictly finer than the
//! equivalence generated by "x is related to the generators of b(x)": for the
//! two-cycle `x ↦ s(y), y ↦ s(x)` the two orbits stay distinct here, since
//! no unfolding of `x` ever equals the corresponding unfolding of `y`.

use std::collections::{BTreeMap, BTreeSet};

use crate::signature::{OpId, SignatureError, Term, Tree};

use super::{Algebra, CoalgToAlgHom, Coalgebra, FixcatError};

/// Colimit equality on generators, `x ≈ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimEq {
    rel: Vec<Vec<bool>>,
    canonical: Vec<usize>,
    rounds: usize,
}

impl ColimEq {
    /// Least relation containing the diagonal and closed under: if `b(x)`
    /// and `b(y)` have the same root symbol and their leaves are pairwise
    /// related, then `x ≈ y`. Saturates in at most `|B|²` rounds.
    pub fn compute(b: &Coalgebra) -> Self {
        let n = b.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut rounds = 0;
        loop {
            let mut added = Vec::new();
            for x in 0..n {
                for y in (x + 1)..n {
                    if rel[x][y] {
                        continue;
                    }
                    let (tx, ty) = (b.step(x), b.step(y));
                    if tx.root() == ty.root()
                        && tx.leaves().iter().zip(ty.leaves()).all(|(&u, v)| rel[u][v])
                    {
                        added.push((x, y));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            rounds += 1;
            for (x, y) in added {
                rel[x][y] = true;
                rel[y][x] = true;
            }
        }
        let canonical = (0..n).map(|x| (0..n).find(|&y| rel[x][y]).unwrap_or(x)).collect();
        ColimEq { rel, canonical, rounds }
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rel[x][y]
    }

    /// Smallest element of the class of `x`.
    pub fn canonical(&self, x: usize) -> usize {
        self.canonical[x]
    }

    /// Number of saturation rounds that added pairs.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// The distinct generator classes, each listed by its members.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by_rep: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &c) in self.canonical.iter().enumerate() {
            by_rep.entry(c).or_default().push(x);
        }
        by_rep.into_values().collect()
    }

    /// Replaces every leaf by its class representative.
    pub fn normalize(&self, tree: &Tree) -> Tree {
        tree.map_leaves(&|x| self.canonical[x])
    }
}

/// Classes of the equivalence generated by `x ~ y` whenever `y` occurs in
/// `b(x)`. Coarser than [`ColimEq`] in general; kept for comparison.
pub fn successor_orbits(b: &Coalgebra) -> Vec<Vec<usize>> {
    let n = b.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for x in 0..n {
        for y in b.step(x).leaves() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        by_root.entry(r).or_default().push(x);
    }
    by_root.into_values().collect()
}

/// A representative `(rank, t)` of a point of `μ(b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MuElement {
    term: Term,
}

impl MuElement {
    pub fn new(term: Term) -> Self {
        MuElement { term }
    }

    /// The orbit point `(0, x)`.
    pub fn generator(x: usize) -> Self {
        MuElement { term: Term::generator(x) }
    }

    pub fn rank(&self) -> usize {
        self.term.rank()
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    /// The same point one chain step later.
    pub fn unfold_once(&self, b: &Coalgebra) -> MuElement {
        MuElement { term: self.term.unfold_once(b.structure()) }
    }

    pub fn pad_to(&self, b: &Coalgebra, rank: usize) -> MuElement {
        debug_assert!(rank >= self.rank());
        MuElement { term: self.term.unfold(b.structure(), rank - self.rank()) }
    }

    pub fn render(&self, b: &Coalgebra) -> String {
        format!("{}@{}", b.render(&self.term), self.rank())
    }
}

/// Equality in the colimit: pad the lower representative to the common rank,
/// then require equal skeletons with generator leaves related by `eq`.
pub fn mu_eq(b: &Coalgebra, eq: &ColimEq, e1: &MuElement, e2: &MuElement) -> bool {
    let n = e1.rank().max(e2.rank());
    let (t1, t2) = (e1.pad_to(b, n), e2.pad_to(b, n));
    t1.term.tree().same_skeleton(t2.term.tree())
        && t1.term.leaves().iter().zip(t2.term.leaves()).all(|(&x, y)| eq.related(x, y))
}

/// `σ(e₁, …, e_m)` in the algebra `μ(b)`: pad the arguments to a common
/// rank `n` and form the rank-`n+1` term.
pub fn mu_algebra_apply(
    b: &Coalgebra,
    op: OpId,
    args: &[MuElement],
) -> Result<MuElement, FixcatError> {
    let arity = b.sig().arity(op);
    if args.len() != arity {
        return Err(FixcatError::Signature(SignatureError::ArityMismatch {
            symbol: b.sig().name(op).to_owned(),
            expected: arity,
            got: args.len(),
        }));
    }
    let n = args.iter().map(MuElement::rank).max().unwrap_or(0);
    let children = args.iter().map(|e| e.pad_to(b, n).term.into_tree()).collect();
    Ok(MuElement { term: Term::from_parts(n + 1, Tree::Node(op, children)) })
}

/// The map `μ(b) → A` induced by a coalgebra-to-algebra homomorphism `f`:
/// fold the representative through `a`, valuing generators by `f`.
pub fn induced_alg_hom(a: &Algebra, f: &CoalgToAlgHom, e: &MuElement) -> usize {
    a.eval(e.term.tree(), &|x| f.apply(x))
}

/// Canonical representatives of the points of `μ(b)` up to some rank,
/// with an index for looking points up.
#[derive(Debug, Clone)]
pub struct MuClasses {
    elements: Vec<MuElement>,
    // by_rank[n]: every normalized rank-n tree representing a listed class.
    by_rank: Vec<BTreeMap<Tree, usize>>,
    eq: ColimEq,
}

impl MuClasses {
    /// Minimal-rank canonical representatives, ordered by rank then term.
    pub fn elements(&self) -> &[MuElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Highest rank covered: every point with a representative of at most
    /// this rank is listed.
    pub fn max_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn colim_eq(&self) -> &ColimEq {
        &self.eq
    }

    /// Index of the class of `e`, or `None` if `e`'s rank exceeds the covered range.
    pub fn class_of(&self, e: &MuElement) -> Option<usize> {
        let level = self.by_rank.get(e.rank())?;
        let key = self.eq.normalize(e.term.tree());
        Some(*level.get(&key).expect("every normalized term of a covered rank is listed"))
    }

    /// Number of listed classes whose canonical rank is at most `rank`.
    pub fn count_up_to(&self, rank: usize) -> usize {
        self.elements.iter().filter(|e| e.rank() <= rank).count()
    }
}

/// Points of `μ(b)` having a representative of rank at most `max_rank`.
///
/// Fails with `CapExceeded` if any level has more than `cap` normalized terms.
pub fn mu_enumerate(b: &Coalgebra, max_rank: usize, cap: usize) -> Result<MuClasses, FixcatError> {
    let eq = ColimEq::compute(b);
    let mut classes = MuClasses { elements: Vec::new(), by_rank: Vec::new(), eq };
    for _ in 0..=max_rank {
        extend(b, &mut classes, cap)?;
    }
    Ok(classes)
}

/// Like [`mu_enumerate`], but stops at the highest rank that fits in `cap`
/// instead of failing. `None` if not even rank 0 fits.
pub fn mu_enumerate_within(b: &Coalgebra, max_rank: usize, cap: usize) -> Option<MuClasses> {
    let eq = ColimEq::compute(b);
    let mut classes = MuClasses { elements: Vec::new(), by_rank: Vec::new(), eq };
    for _ in 0..=max_rank {
        if extend(b, &mut classes, cap).is_err() {
            break;
        }
    }
    (!classes.by_rank.is_empty()).then_some(classes)
}

/// Adds the next rank. Every normalized term of the new rank is either the
/// unfolding of an already listed class or a new class.
fn extend(b: &Coalgebra, classes: &mut MuClasses, cap: usize) -> Result<(), FixcatError> {
    let eq = &classes.eq;
    let level: Vec<Tree> = match classes.by_rank.last() {
        None => {
            let reps: BTreeSet<usize> = (0..b.len()).map(|x| eq.canonical(x)).collect();
            reps.into_iter().map(Tree::Leaf).collect()
        }
        Some(prev) => {
            let prev_terms: Vec<Tree> = prev.keys().cloned().collect();
            let count = b.sig().apply_count(prev_terms.len() as u128);
            if count > cap as u128 {
                return Err(FixcatError::Signature(SignatureError::CapExceeded {
                    level: classes.by_rank.len(),
                    count,
                    cap,
                }));
            }
            b.sig().apply_to(&prev_terms)
        }
    };
    let rank = classes.by_rank.len();
    let mut index: BTreeMap<Tree, usize> = match classes.by_rank.last() {
        None => BTreeMap::new(),
        Some(prev) => prev
            .iter()
            .map(|(t, &c)| (eq.normalize(&t.substitute(&|x| b.step(x).tree().clone())), c))
            .collect(),
    };
    let fresh: Vec<Tree> = level.into_iter().filter(|t| !index.contains_key(t)).collect();
    let total = classes.elements.len() + fresh.len();
    if total > cap {
        return Err(FixcatError::Signature(SignatureError::CapExceeded {
            level: rank,
            count: total as u128,
            cap,
        }));
    }
    for t in fresh {
        index.insert(t.clone(), classes.elements.len());
        classes.elements.push(MuElement { term: Term::from_parts(rank, t) });
    }
    classes.by_rank.push(index);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::instances::*;
    use super::*;
    use crate::signature::Signature;

    fn names(b: &Coalgebra, classes: &MuClasses) -> Vec<String> {
        classes.elements().iter().map(|e| b.render(e.term())).collect()
    }

    #[test]
    fn colim_eq_examples() {
        let sig = Signature::naturals();
        let shared = Coalgebra::from_rows(
            sig.clone(),
            &["x", "y"],
            &[("x", "s", vec!["x"]), ("y", "s", vec!["x"])],
        )
        .unwrap();
        assert!(ColimEq::compute(&shared).related(0, 1));
        assert!(!ColimEq::compute(&swap_coalgebra()).related(0, 1));
        let stops =
            Coalgebra::from_rows(sig, &["x", "y"], &[("x", "z", vec![]), ("y", "z", vec![])])
                .unwrap();
        let eq = ColimEq::compute(&stops);
        assert!(eq.related(0, 1) && eq.related(0, 0));
    }

    #[test]
    fn swap_orbits_differ_from_colimit() {
        let b = swap_coalgebra();
        assert_eq!(successor_orbits(&b), vec![vec![0, 1]]);
        assert_eq!(ColimEq::compute(&b).classes(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn mu_eq_examples() {
        let b = loop_coalgebra();
        let eq = ColimEq::compute(&b);
        let p = MuElement::generator(0);
        let sp = MuElement::new(Term::flat(b.sig(), 1, "s", &[0]).unwrap());
        let z = MuElement::new(Term::flat(b.sig(), 1, "z", &[]).unwrap());
        assert!(mu_eq(&b, &eq, &p, &sp));
        assert!(!mu_eq(&b, &eq, &z, &sp));
        assert!(mu_eq(&b, &eq, &z, &z));
    }

    #[test]
    fn mu_enumerate_loop() {
        let b = loop_coalgebra();
        let classes = mu_enumerate(&b, 3, 1000).unwrap();
        assert_eq!(names(&b, &classes), vec!["p", "z", "s(z)", "s(s(z))"]);
        let ranks: Vec<usize> = classes.elements().iter().map(MuElement::rank).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3]);
    }

    #[test]
    fn mu_enumerate_empty_is_initial_prefix() {
        let b = Coalgebra::empty(Signature::naturals());
        let classes = mu_enumerate(&b, 3, 1000).unwrap();
        assert_eq!(names(&b, &classes), vec!["z", "s(z)", "s(s(z))"]);
    }

    #[test]
    fn mu_enumerate_without_constants() {
        let sig = Signature::new([("s", 1)]).unwrap();
        let b = Coalgebra::from_rows(sig, &["p"], &[("p", "s", vec!["p"])]).unwrap();
        assert_eq!(mu_enumerate(&b, 3, 1000).unwrap().len(), 1);
    }

    #[test]
    fn mu_enumerate_cap() {
        let b = loop_coalgebra();
        let err = mu_enumerate(&b, 10, 4).unwrap_err();
        assert!(matches!(err, FixcatError::Signature(SignatureError::CapExceeded { .. })));
        let partial = mu_enumerate_within(&b, 10, 4).unwrap();
        assert_eq!(partial.max_rank(), 3);
    }

    #[test]
    fn algebra_apply_examples() {
        let b = loop_coalgebra();
        let eq = ColimEq::compute(&b);
        let (s, z) = (b.sig().op("s").unwrap(), b.sig().op("z").unwrap());
        let zc = mu_algebra_apply(&b, z, &[]).unwrap();
        assert_eq!(zc.rank(), 1);
        let p = MuElement::generator(0);
        let sp = mu_algebra_apply(&b, s, std::slice::from_ref(&p)).unwrap();
        assert!(mu_eq(&b, &eq, &sp, &p));
        let sz = mu_algebra_apply(&b, s, std::slice::from_ref(&zc)).unwrap();
        assert!(!mu_eq(&b, &eq, &sz, &zc));
        assert!(matches!(
            mu_algebra_apply(&b, s, &[]),
            Err(FixcatError::Signature(SignatureError::ArityMismatch { .. }))
        ));
    }

    #[test]
    fn induced_alg_hom_examples() {
        let b = stop_coalgebra();
        let a = parity_algebra();
        let f = CoalgToAlgHom::new(&b, &a, vec![0]).unwrap();
        assert_eq!(induced_alg_hom(&a, &f, &MuElement::generator(0)), 0);
        let s = b.sig().op("s").unwrap();
        let z = b.sig().op("z").unwrap();
        let ssz = MuElement::new(
            Term::new(b.sig(), 1, 3, Tree::Node(s, vec![Tree::Node(s, vec![Tree::Node(z, vec![])])]))
                .unwrap(),
        );
        assert_eq!(induced_alg_hom(&a, &f, &ssz), 0);
        let zc = MuElement::new(Term::flat(b.sig(), 1, "z", &[]).unwrap());
        assert_eq!(
            induced_alg_hom(&a, &f, &MuElement::generator(0)),
            induced_alg_hom(&a, &f, &zc)
        );
    }

    #[test]
    fn class_lookup() {
        let b = loop_coalgebra();
        let classes = mu_enumerate(&b, 3, 1000).unwrap();
        let sp = MuElement::new(Term::flat(b.sig(), 1, "s", &[0]).unwrap());
        assert_eq!(classes.class_of(&sp), Some(0));
        assert_eq!(classes.class_of(&sp.pad_to(&b, 5)), None);
    }
}
