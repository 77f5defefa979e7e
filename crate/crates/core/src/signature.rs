//! Polynomial endofunctors on finite sets, presented by signatures.
//!
//! A signature `{σ: ar(σ)}` presents `F(X) = Σ_σ X^ar(σ)`. Elements of
//! `F^n(X)` are stored as trees of uniform leaf depth: every generator leaf
//! sits at depth exactly `n`, and any branch that stops earlier ends in a
//! constant. The rank is stored alongside the tree so that `z ∈ F(X)` and
//! `z ∈ F²(X)` stay distinct chain elements.

use std::fmt;

use thiserror::Error;

/// Default bound on the number of terms any enumeration may produce.
pub const DEFAULT_TERM_CAP: usize = 100_000;

/// Index of an operation symbol within its [`Signature`].
pub type OpId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("operation symbol must be non-empty")]
    EmptySymbol,
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("operation `{symbol}` expects {expected} arguments, got {got}")]
    ArityMismatch { symbol: String, expected: usize, got: usize },
    #[error("generator index {index} outside a carrier of size {size}")]
    UnknownGenerator { index: usize, size: usize },
    #[error("leaf at depth {depth} in a term of rank {rank}")]
    RaggedLeaf { depth: usize, rank: usize },
    #[error("operation node at depth {depth} in a term of rank {rank}")]
    NodeTooDeep { depth: usize, rank: usize },
    #[error("enumeration cap exceeded at level {level}: {count} terms > cap {cap}")]
    CapExceeded { level: usize, count: u128, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

/// A finite list of operation symbols with arities, kept sorted by symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<Operation>,
}

impl Signature {
    pub fn new<S: Into<String>>(
        ops: impl IntoIterator<Item = (S, usize)>,
    ) -> Result<Self, SignatureError> {
        let mut ops: Vec<Operation> = ops
            .into_iter()
            .map(|(name, arity)| Operation { name: name.into(), arity })
            .collect();
        ops.sort_by(|a, b| a.name.cmp(&b.name));
        for w in ops.windows(2) {
            if w[0].name == w[1].name {
                return Err(SignatureError::DuplicateSymbol(w[0].name.clone()));
            }
        }
        if ops.iter().any(|o| o.name.is_empty()) {
            return Err(SignatureError::EmptySymbol);
        }
        Ok(Signature { ops })
    }

    /// `{z: 0, s: 1}`, presenting `F(X) = 1 + X`.
    pub fn naturals() -> Self {
        Self::new([("s", 1), ("z", 0)]).expect("valid")
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn op(&self, name: &str) -> Option<OpId> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn require(&self, name: &str) -> Result<OpId, SignatureError> {
        self.op(name).ok_or_else(|| SignatureError::UnknownSymbol(name.to_owned()))
    }

    pub fn name(&self, op: OpId) -> &str {
        &self.ops[op].name
    }

    pub fn arity(&self, op: OpId) -> usize {
        self.ops[op].arity
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }

    /// `|F(X)| = Σ_σ |X|^ar(σ)`, saturating.
    pub fn apply_count(&self, x: u128) -> u128 {
        self.ops
            .iter()
            .map(|o| x.saturating_pow(o.arity as u32))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// `|F^k(X)|` for `k = 0..=depth`, by the recurrence `c_{k+1} = Σ_σ c_k^ar(σ)`.
    pub fn level_sizes(&self, x: usize, depth: usize) -> Vec<u128> {
        let mut out = Vec::with_capacity(depth + 1);
        let mut c = x as u128;
        out.push(c);
        for _ in 0..depth {
            c = self.apply_count(c);
            out.push(c);
        }
        out
    }

    /// All `σ(t₁, …, t_m)` with each `tᵢ` drawn from `children`, in
    /// lexicographic order of `(σ, t₁, …, t_m)` when `children` is sorted.
    pub fn apply_to(&self, children: &[Tree]) -> Vec<Tree> {
        let mut out = Vec::new();
        for (op, o) in self.ops.iter().enumerate() {
            for_each_tuple(children.len(), o.arity, |idx| {
                out.push(Tree::Node(op, idx.iter().map(|&i| children[i].clone()).collect()));
            });
        }
        out
    }
}

fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if len > 0 && n == 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    loop {
        f(&idx);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Shape of an element of `F^n(X)`. Generators are carrier indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(usize),
    Node(OpId, Vec<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(x) => out.push(*x),
            Tree::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn map_leaves(&self, g: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(x) => Tree::Leaf(g(*x)),
            Tree::Node(op, cs) => Tree::Node(*op, cs.iter().map(|c| c.map_leaves(g)).collect()),
        }
    }

    /// Replaces every leaf `x` by `subst(x)`.
    pub fn substitute(&self, subst: &impl Fn(usize) -> Tree) -> Tree {
        match self {
            Tree::Leaf(x) => subst(*x),
            Tree::Node(op, cs) => Tree::Node(*op, cs.iter().map(|c| c.substitute(subst)).collect()),
        }
    }

    /// Bottom-up evaluation: leaves through `leaf`, nodes through `node`.
    pub fn fold<T>(&self, leaf: &impl Fn(usize) -> T, node: &impl Fn(OpId, Vec<T>) -> T) -> T {
        match self {
            Tree::Leaf(x) => leaf(*x),
            Tree::Node(op, cs) => node(*op, cs.iter().map(|c| c.fold(leaf, node)).collect()),
        }
    }

    /// Same operation nodes with leaves erased; two trees have equal skeletons
    /// iff they differ only in generator labels.
    pub fn same_skeleton(&self, other: &Tree) -> bool {
        match (self, other) {
            (Tree::Leaf(_), Tree::Leaf(_)) => true,
            (Tree::Node(a, xs), Tree::Node(b, ys)) => {
                a == b && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.same_skeleton(y))
            }
            _ => false,
        }
    }

    /// Whether `self`, with leaves treated as holes, is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &Tree) -> bool {
        match (self, other) {
            (Tree::Leaf(_), _) => true,
            (Tree::Node(a, xs), Tree::Node(b, ys)) => {
                a == b && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.is_prefix_of(y))
            }
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, cs) => 1 + cs.iter().map(Tree::size).sum::<usize>(),
        }
    }

    /// Renders with operation names from `sig` and generator names from `gens`.
    pub fn render(&self, sig: &Signature, gens: &[String]) -> String {
        match self {
            Tree::Leaf(x) => gens.get(*x).cloned().unwrap_or_else(|| format!("#{x}")),
            Tree::Node(op, cs) if cs.is_empty() => sig.name(*op).to_owned(),
            Tree::Node(op, cs) => {
                let args: Vec<String> = cs.iter().map(|c| c.render(sig, gens)).collect();
                format!("{}({})", sig.name(*op), args.join(","))
            }
        }
    }
}

/// An element of `F^rank(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    rank: usize,
    tree: Tree,
}

impl Term {
    pub fn generator(x: usize) -> Self {
        Term { rank: 0, tree: Tree::Leaf(x) }
    }

    /// Pairs a tree with its rank, checking the uniform-depth invariants.
    pub fn new(
        sig: &Signature,
        generators: usize,
        rank: usize,
        tree: Tree,
    ) -> Result<Self, SignatureError> {
        check_tree(sig, generators, rank, 0, &tree)?;
        Ok(Term { rank, tree })
    }

    /// Builds a rank-1 term `σ(x₁, …, x_m)`.
    pub fn flat(
        sig: &Signature,
        generators: usize,
        symbol: &str,
        args: &[usize],
    ) -> Result<Self, SignatureError> {
        let op = sig.require(symbol)?;
        let tree = Tree::Node(op, args.iter().map(|&x| Tree::Leaf(x)).collect());
        Self::new(sig, generators, 1, tree)
    }

    pub(crate) fn from_parts(rank: usize, tree: Tree) -> Self {
        Term { rank, tree }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    /// Root operation, or `None` for a bare generator.
    pub fn root(&self) -> Option<OpId> {
        match &self.tree {
            Tree::Leaf(_) => None,
            Tree::Node(op, _) => Some(*op),
        }
    }

    /// Moves one step along the chain `X → F(X) → F²(X) → …` of a
    /// coalgebra structure: every generator leaf `x` is replaced by the
    /// rank-1 term `step[x]`. The rank goes up by exactly one.
    pub fn unfold_once(&self, step: &[Term]) -> Term {
        debug_assert!(step.iter().all(|t| t.rank == 1));
        Term {
            rank: self.rank + 1,
            tree: self.tree.substitute(&|x| step[x].tree.clone()),
        }
    }

    pub fn unfold(&self, step: &[Term], times: usize) -> Term {
        (0..times).fold(self.clone(), |t, _| t.unfold_once(step))
    }

    /// `F^rank(g)`: relabels generators, keeping shape and rank.
    pub fn map_leaves(&self, g: impl Fn(usize) -> usize) -> Term {
        Term { rank: self.rank, tree: self.tree.map_leaves(&g) }
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.tree.leaves()
    }

    pub fn render(&self, sig: &Signature, gens: &[String]) -> String {
        self.tree.render(sig, gens)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature, gens: &'a [String]) -> impl fmt::Display + 'a {
        Rendered { term: self, sig, gens }
    }
}

struct Rendered<'a> {
    term: &'a Term,
    sig: &'a Signature,
    gens: &'a [String],
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.term.render(self.sig, self.gens), self.term.rank)
    }
}

fn check_tree(
    sig: &Signature,
    generators: usize,
    rank: usize,
    depth: usize,
    tree: &Tree,
) -> Result<(), SignatureError> {
    match tree {
        Tree::Leaf(x) => {
            if *x >= generators {
                return Err(SignatureError::UnknownGenerator { index: *x, size: generators });
            }
            if depth != rank {
                return Err(SignatureError::RaggedLeaf { depth, rank });
            }
            Ok(())
        }
        Tree::Node(op, cs) => {
            let Some(o) = sig.ops.get(*op) else {
                return Err(SignatureError::UnknownSymbol(format!("#{op}")));
            };
            if depth >= rank {
                return Err(SignatureError::NodeTooDeep { depth, rank });
            }
            if cs.len() != o.arity {
                return Err(SignatureError::ArityMismatch {
                    symbol: o.name.clone(),
                    expected: o.arity,
                    got: cs.len(),
                });
            }
            cs.iter().try_for_each(|c| check_tree(sig, generators, rank, depth + 1, c))
        }
    }
}

/// `F(X)` for a carrier of `generators` elements, as rank-1 terms.
pub fn f_enumerate(sig: &Signature, generators: usize) -> Vec<Term> {
    let gens: Vec<Tree> = (0..generators).map(Tree::Leaf).collect();
    sig.apply_to(&gens).into_iter().map(|t| Term { rank: 1, tree: t }).collect()
}

/// `F^n(X)` as rank-`n` terms, or `CapExceeded` if any level would hold
/// more than `cap` terms. Never truncates.
pub fn enumerate_rank(
    sig: &Signature,
    generators: usize,
    n: usize,
    cap: usize,
) -> Result<Vec<Term>, SignatureError> {
    let sizes = sig.level_sizes(generators, n);
    if let Some((level, &count)) = sizes.iter().enumerate().find(|(_, &c)| c > cap as u128) {
        return Err(SignatureError::CapExceeded { level, count, cap });
    }
    let mut level: Vec<Tree> = (0..generators).map(Tree::Leaf).collect();
    for _ in 0..n {
        level = sig.apply_to(&level);
    }
    Ok(level.into_iter().map(|tree| Term { rank: n, tree }).collect())
}
