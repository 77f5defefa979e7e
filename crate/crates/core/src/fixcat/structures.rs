use std::collections::{BTreeMap, BTreeSet};

use crate::signature::{f_enumerate, OpId, Signature, SignatureError, Term, Tree};

use super::FixcatError;

/// A finite `F`-coalgebra `b : B → F(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    sig: Signature,
    carrier: Vec<String>,
    structure: Vec<Term>,
}

impl Coalgebra {
    pub fn new(
        sig: Signature,
        carrier: Vec<String>,
        structure: Vec<Term>,
    ) -> Result<Self, FixcatError> {
        check_labels(&carrier)?;
        if structure.len() != carrier.len() {
            return Err(FixcatError::NotTotal(format!(
                "{} structure entries for {} carrier elements",
                structure.len(),
                carrier.len()
            )));
        }
        for t in &structure {
            if t.rank() != 1 {
                return Err(FixcatError::WrongRank { expected: 1, got: t.rank() });
            }
            Term::new(&sig, carrier.len(), 1, t.tree().clone())?;
        }
        Ok(Coalgebra { sig, carrier, structure })
    }

    /// Builds from `(element, symbol, argument elements)` rows.
    pub fn from_rows<S: AsRef<str>>(
        sig: Signature,
        carrier: &[S],
        rows: &[(S, S, Vec<S>)],
    ) -> Result<Self, FixcatError> {
        let carrier: Vec<String> = carrier.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = |s: &str| {
            carrier
                .iter()
                .position(|c| c == s)
                .ok_or_else(|| FixcatError::UnknownElement(s.to_owned()))
        };
        let mut structure: Vec<Option<Term>> = vec![None; carrier.len()];
        for (x, op, args) in rows {
            let xi = index(x.as_ref())?;
            let args = args.iter().map(|a| index(a.as_ref())).collect::<Result<Vec<_>, _>>()?;
            let t = Term::flat(&sig, carrier.len(), op.as_ref(), &args)?;
            if structure[xi].replace(t).is_some() {
                return Err(FixcatError::Conflict(format!("element `{}` defined twice", x.as_ref())));
            }
        }
        let structure = structure
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| FixcatError::NotTotal(carrier[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sig, carrier, structure)
    }

    /// The unique coalgebra on the empty set.
    pub fn empty(sig: Signature) -> Self {
        Coalgebra { sig, carrier: Vec::new(), structure: Vec::new() }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == label)
    }

    /// `b(x)`.
    pub fn step(&self, x: usize) -> &Term {
        &self.structure[x]
    }

    pub fn structure(&self) -> &[Term] {
        &self.structure
    }

    pub fn render(&self, t: &Term) -> String {
        t.render(&self.sig, &self.carrier)
    }

    /// No cycle in the graph `x → leaves of b(x)`: every unfolding reaches
    /// constants after finitely many steps.
    pub fn is_well_founded(&self) -> bool {
        // Kahn's algorithm on the dependency graph.
        let n = self.len();
        let mut pending: Vec<usize> = self.structure.iter().map(|t| t.leaves().len()).collect();
        let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, t) in self.structure.iter().enumerate() {
            for y in t.leaves() {
                users[y].push(x);
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&x| pending[x] == 0).collect();
        let mut done = 0;
        while let Some(y) = ready.pop() {
            done += 1;
            for &x in &users[y] {
                pending[x] -= 1;
                if pending[x] == 0 {
                    ready.push(x);
                }
            }
        }
        done == n
    }

    /// Whether `g : B' → B` (from `other` into `self`) is a coalgebra
    /// homomorphism. Returns the violating elements of `other`.
    pub fn hom_violations_from(&self, other: &Coalgebra, g: &[usize]) -> Vec<String> {
        (0..other.len())
            .filter(|&x| {
                let lhs = self.step(g[x]);
                let rhs = other.step(x).map_leaves(|y| g[y]);
                *lhs != rhs
            })
            .map(|x| {
                format!(
                    "b({}) = {} but F(g)(b'({})) = {}",
                    self.carrier[g[x]],
                    self.render(self.step(g[x])),
                    other.carrier[x],
                    self.render(&other.step(x).map_leaves(|y| g[y])),
                )
            })
            .collect()
    }
}

/// A finite `F`-algebra `a : F(A) → A`, stored as a table on rank-1 trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    sig: Signature,
    carrier: Vec<String>,
    table: BTreeMap<Tree, usize>,
}

impl Algebra {
    /// Validates that `table` is total on `F(A)` and maps into `A`.
    pub fn new(
        sig: Signature,
        carrier: Vec<String>,
        entries: Vec<(Tree, usize)>,
    ) -> Result<Self, FixcatError> {
        check_labels(&carrier)?;
        let n = carrier.len();
        let mut table = BTreeMap::new();
        for (t, v) in entries {
            Term::new(&sig, n, 1, t.clone())?;
            if v >= n {
                return Err(FixcatError::UnknownElement(format!("#{v}")));
            }
            if let Some(old) = table.insert(t.clone(), v) {
                if old != v {
                    return Err(FixcatError::Conflict(format!(
                        "{} maps to both `{}` and `{}`",
                        t.render(&sig, &carrier),
                        carrier[old],
                        carrier[v]
                    )));
                }
            }
        }
        for t in f_enumerate(&sig, n) {
            if !table.contains_key(t.tree()) {
                return Err(FixcatError::NotTotal(t.render(&sig, &carrier)));
            }
        }
        Ok(Algebra { sig, carrier, table })
    }

    /// Tabulates `op(args)` over all of `F(A)`.
    pub fn from_fn(
        sig: Signature,
        carrier: Vec<String>,
        f: impl Fn(OpId, &[usize]) -> usize,
    ) -> Result<Self, FixcatError> {
        let entries = f_enumerate(&sig, carrier.len())
            .into_iter()
            .map(|t| {
                let tree = t.into_tree();
                let v = match &tree {
                    Tree::Node(op, cs) => f(*op, &cs.iter().map(leaf_of).collect::<Vec<_>>()),
                    Tree::Leaf(_) => unreachable!("rank-1 terms are nodes"),
                };
                (tree, v)
            })
            .collect();
        Self::new(sig, carrier, entries)
    }

    /// The unique algebra on a one-element carrier, `1 : F(1) → 1`.
    pub fn terminal(sig: Signature) -> Self {
        Self::from_fn(sig, vec!["*".to_owned()], |_, _| 0).expect("terminal algebra is total")
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == label)
    }

    /// `a(σ(a₁, …, a_m))` for a rank-1 tree over `A`.
    pub fn apply(&self, flat: &Tree) -> usize {
        self.table[flat]
    }

    pub fn apply_op(&self, op: OpId, args: &[usize]) -> usize {
        self.apply(&Tree::Node(op, args.iter().map(|&x| Tree::Leaf(x)).collect()))
    }

    pub fn table(&self) -> &BTreeMap<Tree, usize> {
        &self.table
    }

    /// Evaluates a tree of any rank bottom-up, with leaves valued by `leaf`.
    pub fn eval(&self, tree: &Tree, leaf: &impl Fn(usize) -> usize) -> usize {
        tree.fold(leaf, &|op, vals| self.apply_op(op, &vals))
    }

    pub fn render(&self, t: &Term) -> String {
        t.render(&self.sig, &self.carrier)
    }

    /// Whether `h : A → A'` (from `self` into `other`) is an algebra
    /// homomorphism. Returns the violating elements of `F(A)`.
    pub fn hom_violations_into(&self, other: &Algebra, h: &[usize]) -> Vec<String> {
        self.table
            .iter()
            .filter(|(t, &v)| h[v] != other.apply(&t.map_leaves(&|x| h[x])))
            .map(|(t, &v)| {
                format!(
                    "h(a({})) = {} but a'(F(h)({})) = {}",
                    t.render(&self.sig, &self.carrier),
                    other.carrier[h[v]],
                    t.render(&self.sig, &self.carrier),
                    other.carrier[other.apply(&t.map_leaves(&|x| h[x]))],
                )
            })
            .collect()
    }
}

fn leaf_of(t: &Tree) -> usize {
    match t {
        Tree::Leaf(x) => *x,
        Tree::Node(..) => unreachable!("rank-1 children are leaves"),
    }
}

fn check_labels(labels: &[String]) -> Result<(), FixcatError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(FixcatError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A map `f : B → A` making `f = a ∘ F(f) ∘ b` commute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoalgToAlgHom {
    map: Vec<usize>,
}

impl CoalgToAlgHom {
    /// Checks the square for every element of `B`.
    pub fn new(b: &Coalgebra, a: &Algebra, map: Vec<usize>) -> Result<Self, FixcatError> {
        if map.len() != b.len() || map.iter().any(|&v| v >= a.len()) {
            return Err(FixcatError::NotTotal("coalgebra-to-algebra map".into()));
        }
        if let Some(x) = square_violation(b, a, &map) {
            return Err(FixcatError::NotAHomomorphism(format!(
                "f({}) = {} but a(F(f)(b({}))) = {}",
                b.carrier[x],
                a.carrier[map[x]],
                b.carrier[x],
                a.carrier[a.apply(b.step(x).map_leaves(|y| map[y]).tree())]
            )));
        }
        Ok(CoalgToAlgHom { map })
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

fn square_violation(b: &Coalgebra, a: &Algebra, map: &[usize]) -> Option<usize> {
    (0..b.len()).find(|&x| map[x] != a.apply(b.step(x).map_leaves(|y| map[y]).tree()))
}

/// Every coalgebra-to-algebra homomorphism `b → a`, by brute force over all
/// `|A|^|B|` maps, in lexicographic order of `(f(x₀), f(x₁), …)`.
pub fn enumerate_coalg_to_alg(
    b: &Coalgebra,
    a: &Algebra,
    cap: usize,
) -> Result<Vec<CoalgToAlgHom>, FixcatError> {
    let total = (a.len() as u128).saturating_pow(b.len() as u32);
    if total > cap as u128 {
        return Err(FixcatError::Signature(SignatureError::CapExceeded {
            level: 0,
            count: total,
            cap,
        }));
    }
    let mut out = Vec::new();
    if a.is_empty() && !b.is_empty() {
        return Ok(out);
    }
    let mut map = vec![0usize; b.len()];
    loop {
        if square_violation(b, a, &map).is_none() {
            out.push(CoalgToAlgHom { map: map.clone() });
        }
        // Odometer with the last position least significant.
        let mut pos = map.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < a.len() {
                break;
            }
            map[pos] = 0;
        }
    }
}
