//! Seeded random signatures, coalgebras and algebras for property suites.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::signature::{Signature, Term, Tree};

use super::{Algebra, Coalgebra};

/// Shape limits for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub max_ops: usize,
    pub max_arity: usize,
    pub max_carrier: usize,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape { max_ops: 3, max_arity: 2, max_carrier: 3 }
    }
}

/// Deterministic instance generator; the same seed yields the same sequence.
#[derive(Debug, Clone)]
pub struct InstanceGen {
    rng: ChaCha8Rng,
    shape: InstanceShape,
}

const SYMBOLS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

impl InstanceGen {
    pub fn new(seed: u64, shape: InstanceShape) -> Self {
        InstanceGen { rng: ChaCha8Rng::seed_from_u64(seed), shape }
    }

    pub fn signature(&mut self) -> Signature {
        let n = self.rng.random_range(1..=self.shape.max_ops.min(SYMBOLS.len()));
        let ops: Vec<(&str, usize)> = (0..n)
            .map(|i| (SYMBOLS[i], self.rng.random_range(0..=self.shape.max_arity)))
            .collect();
        Signature::new(ops).expect("distinct symbols")
    }

    /// Carrier size drawn from `0..=max_carrier`.
    pub fn coalgebra(&mut self, sig: &Signature) -> Coalgebra {
        let n = self.rng.random_range(0..=self.shape.max_carrier);
        self.coalgebra_of_size(sig, n)
    }

    pub fn coalgebra_of_size(&mut self, sig: &Signature, n: usize) -> Coalgebra {
        let carrier: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        // Without generators only constants are available.
        let usable: Vec<usize> = (0..sig.len()).filter(|&op| n > 0 || sig.arity(op) == 0).collect();
        if usable.is_empty() {
            return Coalgebra::empty(sig.clone());
        }
        let structure = (0..n)
            .map(|_| {
                let op = usable[self.rng.random_range(0..usable.len())];
                let kids = (0..sig.arity(op)).map(|_| Tree::Leaf(self.rng.random_range(0..n))).collect();
                Term::new(sig, n, 1, Tree::Node(op, kids)).expect("well-formed")
            })
            .collect();
        Coalgebra::new(sig.clone(), carrier, structure).expect("valid coalgebra")
    }

    /// Carrier size drawn from `1..=max_carrier`, table filled uniformly.
    pub fn algebra(&mut self, sig: &Signature) -> Algebra {
        let n = self.rng.random_range(1..=self.shape.max_carrier.max(1));
        let carrier: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let rng = std::cell::RefCell::new(&mut self.rng);
        Algebra::from_fn(sig.clone(), carrier, |_, _| rng.borrow_mut().random_range(0..n))
            .expect("total table")
    }
}
