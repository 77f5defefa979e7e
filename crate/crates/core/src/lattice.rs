//! Pre-/post-fixed points and the middle-fixpoint operators on finite lattices.
//!
//! For a monotone `f` on a complete lattice, `mu(x)` is the first fixpoint
//! above a pre-fixed point `x <= f(x)` and `nu(y)` the last fixpoint below a
//! post-fixed point `f(y) <= y`. On a finite lattice the chains
//! `x <= f(x) <= f²(x) <= ...` and `y >= f(y) >= ...` stabilize after at most
//! `|L|` steps, so plain ω-iteration computes both exactly. The two operators
//! form a Galois connection `mu(x) <= y <=> x <= nu(y)` between `Pre(f)` and
//! `Post(f)`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

/// Index of an element inside a [`FinLattice`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order is not a partial order: {law} fails at ({a}, {b})")]
    NotAPartialOrder { law: &'static str, a: String, b: String },
    #[error("no unique {which} for ({a}, {b})")]
    MissingJoinOrMeet { which: &'static str, a: String, b: String },
    #[error("map is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("map is not monotone: {x} <= {y} but f({x}) = {fx} is not <= f({y}) = {fy}")]
    NotMonotone { x: String, y: String, fx: String, fy: String },
    #[error("`{0}` is not a pre-fixed point")]
    NotPreFixed(String),
    #[error("`{0}` is not a post-fixed point")]
    NotPostFixed(String),
    #[error("iteration from `{start}` did not stabilize within {bound} steps")]
    IterationBound { start: String, bound: usize },
}

/// A validated finite lattice. Elements are referred to by index; `labels`
/// keeps the user's names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<Elem>>,
    meet: Vec<Vec<Elem>>,
    bottom: Elem,
    top: Elem,
}

impl FinLattice {
    /// Validates an order given as a list of `(a, b)` pairs meaning `a <= b`.
    /// Reflexive pairs may be omitted.
    pub fn check<S: AsRef<str>>(
        elements: &[S],
        leq_pairs: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| LatticeError::UnknownLabel(s.to_owned()))
        };
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, b) in leq_pairs {
            leq[index(a.as_ref())?][index(b.as_ref())?] = true;
        }
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        Self::from_matrix(labels, leq)
    }

    /// Validates an order given as a full matrix. `leq[a][b]` means `a <= b`.
    pub fn from_matrix(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let po = |law, a: usize, b: usize| LatticeError::NotAPartialOrder {
            law,
            a: labels[a].clone(),
            b: labels[b].clone(),
        };
        for (a, row) in leq.iter().enumerate() {
            if !row[a] {
                return Err(po("reflexivity", a, a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(po("antisymmetry", a, b));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(po("transitivity", a, c));
                    }
                }
            }
        }

        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<Elem> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
                let lub = ub.iter().copied().find(|&u| ub.iter().all(|&v| leq[u][v]));
                join[a][b] = lub.ok_or_else(|| LatticeError::MissingJoinOrMeet {
                    which: "join",
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                })?;
                let lb: Vec<Elem> = (0..n).filter(|&l| leq[l][a] && leq[l][b]).collect();
                let glb = lb.iter().copied().find(|&l| lb.iter().all(|&v| leq[v][l]));
                meet[a][b] = glb.ok_or_else(|| LatticeError::MissingJoinOrMeet {
                    which: "meet",
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                })?;
            }
        }
        let top = (0..n).fold(0, |acc, e| join[acc][e]);
        let bottom = (0..n).fold(0, |acc, e| meet[acc][e]);
        Ok(FinLattice { labels, leq, join, meet, bottom, top })
    }

    /// The chain `0 < 1 < ... < n-1` with labels `"0"`, `"1"`, ...
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self::from_matrix(labels, leq).expect("chains are lattices")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.len()
    }

    /// Supremum of an arbitrary subset (bottom for the empty set).
    pub fn sup<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Infimum of an arbitrary subset (top for the empty set).
    pub fn inf<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between them.
    pub fn covering_pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The order as a list of strict pairs, labelled.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b && self.leq(a, b) {
                    out.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        out
    }
}

/// A verified monotone endofunction on a [`FinLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    lattice: FinLattice,
    map: Vec<Elem>,
}

impl MonotoneMap {
    /// Checks totality and monotonicity; the first violating pair is reported.
    pub fn check(lattice: FinLattice, map: Vec<Elem>) -> Result<Self, LatticeError> {
        let n = lattice.len();
        if map.len() != n {
            let missing = lattice.labels.get(map.len()).cloned().unwrap_or_default();
            return Err(LatticeError::NotTotal(missing));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= n) {
            return Err(LatticeError::UnknownLabel(bad.to_string()));
        }
        for x in 0..n {
            for y in 0..n {
                if lattice.leq(x, y) && !lattice.leq(map[x], map[y]) {
                    return Err(LatticeError::NotMonotone {
                        x: lattice.labels[x].clone(),
                        y: lattice.labels[y].clone(),
                        fx: lattice.labels[map[x]].clone(),
                        fy: lattice.labels[map[y]].clone(),
                    });
                }
            }
        }
        Ok(MonotoneMap { lattice, map })
    }

    /// Same as [`MonotoneMap::check`] with the map given by labels.
    pub fn check_labelled<S: AsRef<str>>(
        lattice: FinLattice,
        pairs: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let mut map = vec![None; lattice.len()];
        for (a, b) in pairs {
            let ia = lattice
                .index_of(a.as_ref())
                .ok_or_else(|| LatticeError::UnknownLabel(a.as_ref().to_owned()))?;
            let ib = lattice
                .index_of(b.as_ref())
                .ok_or_else(|| LatticeError::UnknownLabel(b.as_ref().to_owned()))?;
            map[ia] = Some(ib);
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| LatticeError::NotTotal(lattice.labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::check(lattice, map)
    }

    pub fn identity(lattice: FinLattice) -> Self {
        let map = lattice.elements().collect();
        MonotoneMap { lattice, map }
    }

    pub fn lattice(&self) -> &FinLattice {
        &self.lattice
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_pre_fixed(&self, x: Elem) -> bool {
        self.lattice.leq(x, self.map[x])
    }

    pub fn is_post_fixed(&self, y: Elem) -> bool {
        self.lattice.leq(self.map[y], y)
    }

    pub fn is_fixed(&self, x: Elem) -> bool {
        self.map[x] == x
    }

    /// Ascending iteration from a pre-fixed point; the first fixpoint above `x`.
    pub fn mu(&self, x: Elem) -> Result<Elem, LatticeError> {
        if !self.is_pre_fixed(x) {
            return Err(LatticeError::NotPreFixed(self.lattice.labels[x].clone()));
        }
        self.iterate(x)
    }

    /// Descending iteration from a post-fixed point; the last fixpoint below `y`.
    pub fn nu(&self, y: Elem) -> Result<Elem, LatticeError> {
        if !self.is_post_fixed(y) {
            return Err(LatticeError::NotPostFixed(self.lattice.labels[y].clone()));
        }
        self.iterate(y)
    }

    // A monotone chain in a lattice of size n has at most n distinct values.
    fn iterate(&self, start: Elem) -> Result<Elem, LatticeError> {
        let bound = self.lattice.len();
        let mut cur = start;
        for _ in 0..=bound {
            let next = self.map[cur];
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(LatticeError::IterationBound {
            start: self.lattice.labels[start].clone(),
            bound,
        })
    }

    pub fn classify(&self) -> PointClasses {
        let pre: BTreeSet<Elem> = self.lattice.elements().filter(|&x| self.is_pre_fixed(x)).collect();
        let post: BTreeSet<Elem> =
            self.lattice.elements().filter(|&y| self.is_post_fixed(y)).collect();
        let fixed = pre.intersection(&post).copied().collect();
        PointClasses { pre_fixed: pre, post_fixed: post, fixed }
    }

    /// Evaluates `mu(x) <= y <=> x <= nu(y)` on every pre-/post-fixed pair.
    pub fn galois_check(&self) -> Result<FixpointReport, LatticeError> {
        let classes = self.classify();
        let mu_table = classes
            .pre_fixed
            .iter()
            .map(|&x| Ok((x, self.mu(x)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        let nu_table = classes
            .post_fixed
            .iter()
            .map(|&y| Ok((y, self.nu(y)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        let l = &self.lattice;
        let mut violations = Vec::new();
        let mut pairs_checked = 0;
        for &(x, mx) in &mu_table {
            for &(y, ny) in &nu_table {
                pairs_checked += 1;
                let lhs = l.leq(mx, y);
                let rhs = l.leq(x, ny);
                if lhs != rhs {
                    violations.push(GaloisViolation {
                        x: l.label(x).to_owned(),
                        y: l.label(y).to_owned(),
                        mu_x: l.label(mx).to_owned(),
                        nu_y: l.label(ny).to_owned(),
                        mu_x_leq_y: lhs,
                        x_leq_nu_y: rhs,
                    });
                }
            }
        }
        let names = |s: &BTreeSet<Elem>| s.iter().map(|&e| l.label(e).to_owned()).collect();
        let table = |t: &[(Elem, Elem)]| {
            t.iter().map(|&(a, b)| (l.label(a).to_owned(), l.label(b).to_owned())).collect()
        };
        Ok(FixpointReport {
            pre_fixed: names(&classes.pre_fixed),
            post_fixed: names(&classes.post_fixed),
            fixed: names(&classes.fixed),
            mu_table: table(&mu_table),
            nu_table: table(&nu_table),
            pairs_checked,
            galois_ok: violations.is_empty(),
            violations,
        })
    }
}

/// `Pre(f)`, `Post(f)` and their intersection, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointClasses {
    pub pre_fixed: BTreeSet<Elem>,
    pub post_fixed: BTreeSet<Elem>,
    pub fixed: BTreeSet<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisViolation {
    pub x: String,
    pub y: String,
    pub mu_x: String,
    pub nu_y: String,
    pub mu_x_leq_y: bool,
    pub x_leq_nu_y: bool,
}

/// Labelled summary of a monotone map's fixpoint structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixpointReport {
    pub pre_fixed: Vec<String>,
    pub post_fixed: Vec<String>,
    pub fixed: Vec<String>,
    pub mu_table: Vec<(String, String)>,
    pub nu_table: Vec<(String, String)>,
    pub pairs_checked: usize,
    pub galois_ok: bool,
    pub violations: Vec<GaloisViolation>,
}

/// Every lattice with exactly `n` elements, one per isomorphism class.
///
/// Orders are generated as upper-triangular matrices under a fixed linear
/// extension, validated, and deduplicated by a canonical form taken over all
/// relabellings. Meant for `n <= 5`.
pub fn lattices_of_size(n: usize) -> Vec<FinLattice> {
    if n == 0 {
        return Vec::new();
    }
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(a, b)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[a][b] = true;
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let Ok(lattice) = FinLattice::from_matrix(labels, leq) else {
            continue;
        };
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        bits.push(lattice.leq(p[a], p[b]));
                    }
                }
                bits
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            out.push(lattice);
        }
    }
    out
}

/// Every monotone endofunction of `lattice`, by brute force over all `n^n` maps.
pub fn monotone_maps(lattice: &FinLattice) -> Vec<MonotoneMap> {
    let n = lattice.len();
    let total = n.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let map = (0..n)
                .map(|_| {
                    let v = code % n;
                    code /= n;
                    v
                })
                .collect();
            MonotoneMap::check(lattice.clone(), map).ok()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
