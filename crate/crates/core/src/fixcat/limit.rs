//! Finite stages of the coalgebra `ν(a) = lim(A ← F(A) ← F²(A) ← …)`.
//!
//! `ν(a)` is generally uncountable, so it is never built as a set. Instead
//! [`NuApprox`] materializes the first few stages with their projections,
//! and [`NuPointStream`] presents a single point lazily as its sequence of
//! components.

use std::collections::BTreeMap;

use crate::signature::{enumerate_rank, Term, Tree};

use super::{Algebra, CoalgToAlgHom, Coalgebra, FixcatError};

/// The chain map `Fᵏ(a) : F^{k+1}(A) → Fᵏ(A)`: every deepest operation node,
/// whose children are carrier elements, is evaluated by `a`.
pub fn collapse_bottom(t: &Term, a: &Algebra) -> Result<Term, FixcatError> {
    if t.rank() == 0 {
        return Err(FixcatError::WrongRank { expected: 1, got: 0 });
    }
    let k = t.rank() - 1;
    Ok(Term::from_parts(k, collapse(t.tree(), k, a)))
}

fn collapse(tree: &Tree, remaining: usize, a: &Algebra) -> Tree {
    match tree {
        Tree::Node(..) if remaining == 0 => Tree::Leaf(a.apply(tree)),
        Tree::Node(op, cs) => Tree::Node(*op, cs.iter().map(|c| collapse(c, remaining - 1, a)).collect()),
        Tree::Leaf(_) => unreachable!("leaves sit below the collapsed layer"),
    }
}

/// Stages `Fᵏ(A)` for `k ≤ depth` of the limit chain, with projections.
#[derive(Debug, Clone)]
pub struct NuApprox {
    levels: Vec<Vec<Term>>,
    projections: Vec<Vec<usize>>,
}

impl NuApprox {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Vec<Term>] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// `projections()[k][i]` is the index in level `k` of the image of
    /// `levels()[k + 1][i]`.
    pub fn projections(&self) -> &[Vec<usize>] {
        &self.projections
    }

    /// Projects an index at level `from` down to level `to ≤ from`.
    pub fn project(&self, from: usize, to: usize, mut i: usize) -> usize {
        for k in (to..from).rev() {
            i = self.projections[k][i];
        }
        i
    }
}

/// `Fᵏ(A)` for `k = 0..=depth`, each projected onto the previous stage by
/// [`collapse_bottom`]. Fails if any stage exceeds `cap` terms.
pub fn nu_approx(a: &Algebra, depth: usize, cap: usize) -> Result<NuApprox, FixcatError> {
    let mut levels = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        levels.push(enumerate_rank(a.sig(), a.len(), k, cap)?);
    }
    let mut projections = Vec::with_capacity(depth);
    for k in 0..depth {
        let index: BTreeMap<&Term, usize> =
            levels[k].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let proj = levels[k + 1]
            .iter()
            .map(|t| collapse_bottom(t, a).map(|img| index[&img]))
            .collect::<Result<Vec<_>, _>>()?;
        projections.push(proj);
    }
    Ok(NuApprox { levels, projections })
}

/// Stages of the terminal coalgebra `ν(1)`, the limit for the unique
/// algebra on a one-element set.
pub fn terminal_coalgebra_approx(
    sig: &crate::signature::Signature,
    depth: usize,
    cap: usize,
) -> Result<NuApprox, FixcatError> {
    nu_approx(&Algebra::terminal(sig.clone()), depth, cap)
}

/// A point of `ν(a)` given by its components: the image of `x ∈ B` under the
/// morphism `b → ν(a)` induced by a coalgebra-to-algebra homomorphism `f`.
///
/// `component(k) = Fᵏ(f)(k-fold unfolding of x along b)`.
#[derive(Debug, Clone)]
pub struct NuPointStream {
    coalgebra: Coalgebra,
    algebra: Algebra,
    hom: Vec<usize>,
    start: usize,
}

impl NuPointStream {
    pub fn component(&self, k: usize) -> Term {
        let unfolded = Term::generator(self.start).unfold(self.coalgebra.structure(), k);
        unfolded.map_leaves(|y| self.hom[y])
    }

    pub fn components(&self, depth: usize) -> Vec<Term> {
        let mut out = Vec::with_capacity(depth + 1);
        let mut t = Term::generator(self.start);
        for _ in 0..=depth {
            out.push(t.map_leaves(|y| self.hom[y]));
            t = t.unfold_once(self.coalgebra.structure());
        }
        out
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Depths `k < depth` at which `collapse_bottom(component(k+1)) ≠ component(k)`.
    pub fn compatibility_violations(&self, depth: usize) -> Vec<usize> {
        let comps = self.components(depth);
        (0..depth)
            .filter(|&k| {
                collapse_bottom(&comps[k + 1], &self.algebra).map_or(true, |c| c != comps[k])
            })
            .collect()
    }

    pub fn render(&self, k: usize) -> String {
        self.algebra.render(&self.component(k))
    }
}

/// The morphism `b → ν(a)` induced by `f`, evaluated at `x`.
pub fn induced_coalg_hom(
    b: &Coalgebra,
    a: &Algebra,
    f: &CoalgToAlgHom,
    x: usize,
) -> NuPointStream {
    NuPointStream { coalgebra: b.clone(), algebra: a.clone(), hom: f.map().to_vec(), start: x }
}

/// Infinite-trace semantics of `x`: its image under the unique morphism
/// from `b` into the terminal coalgebra `ν(1)`.
pub fn infinite_trace(b: &Coalgebra, x: usize) -> NuPointStream {
    NuPointStream {
        coalgebra: b.clone(),
        algebra: Algebra::terminal(b.sig().clone()),
        hom: vec![0; b.len()],
        start: x,
    }
}

#[cfg(test)]
mod tests {
    use super::super::instances::*;
    use super::*;
    use crate::signature::Signature;

    fn render_all(a: &Algebra, ts: &[Term]) -> Vec<String> {
        ts.iter().map(|t| a.render(t)).collect()
    }

    #[test]
    fn collapse_examples() {
        let one = Algebra::terminal(Signature::naturals());
        let sig = one.sig().clone();
        let s = sig.op("s").unwrap();
        let z = sig.op("z").unwrap();
        let ss = Term::new(&sig, 1, 2, Tree::Node(s, vec![Tree::Node(s, vec![Tree::Leaf(0)])])).unwrap();
        assert_eq!(one.render(&collapse_bottom(&ss, &one).unwrap()), "s(*)");
        let zt = Term::new(&sig, 1, 1, Tree::Node(z, vec![])).unwrap();
        assert_eq!(collapse_bottom(&zt, &one).unwrap(), Term::generator(0));
        let par = parity_algebra();
        let s0 = Term::flat(par.sig(), 2, "s", &[0]).unwrap();
        assert_eq!(collapse_bottom(&s0, &par).unwrap(), Term::generator(1));
        assert!(collapse_bottom(&Term::generator(0), &par).is_err());
    }

    #[test]
    fn nu_approx_sizes() {
        let one = Algebra::terminal(Signature::naturals());
        assert_eq!(nu_approx(&one, 3, 100).unwrap().level_sizes(), vec![1, 2, 3, 4]);
        let k = Signature::new([("k", 0)]).unwrap();
        assert_eq!(terminal_coalgebra_approx(&k, 4, 100).unwrap().level_sizes(), vec![1, 1, 1, 1, 1]);
        let d0 = nu_approx(&parity_algebra(), 0, 100).unwrap();
        assert_eq!(d0.level_sizes(), vec![2]);
        assert!(d0.projections().is_empty());
        let streams = Signature::new([("a", 1), ("b", 1)]).unwrap();
        assert_eq!(terminal_coalgebra_approx(&streams, 3, 100).unwrap().level_sizes(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn projections_compose() {
        let approx = nu_approx(&parity_algebra(), 3, 100).unwrap();
        let par = parity_algebra();
        for (i, t) in approx.levels()[3].iter().enumerate() {
            let two_steps = collapse_bottom(&collapse_bottom(t, &par).unwrap(), &par).unwrap();
            assert_eq!(approx.levels()[1][approx.project(3, 1, i)], two_steps);
        }
    }

    #[test]
    fn loop_trace_diverges() {
        let t = infinite_trace(&loop_coalgebra(), 0);
        let one = Algebra::terminal(Signature::naturals());
        assert_eq!(
            render_all(&one, &t.components(3)),
            vec!["*", "s(*)", "s(s(*))", "s(s(s(*)))"]
        );
        assert!(t.compatibility_violations(8).is_empty());
    }

    #[test]
    fn stop_trace_terminates() {
        let t = infinite_trace(&stop_coalgebra(), 0);
        let one = Algebra::terminal(Signature::naturals());
        assert_eq!(render_all(&one, &t.components(3)), vec!["*", "z", "z", "z"]);
        assert!(t.components(5).iter().enumerate().all(|(k, c)| c.rank() == k));
    }

    #[test]
    fn component_zero_is_hom_value() {
        let b = stop_coalgebra();
        let a = parity_algebra();
        let f = CoalgToAlgHom::new(&b, &a, vec![0]).unwrap();
        let p = induced_coalg_hom(&b, &a, &f, 0);
        assert_eq!(p.component(0), Term::generator(0));
        assert!(p.compatibility_violations(6).is_empty());
    }
}
