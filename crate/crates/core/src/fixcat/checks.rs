//! Bounded verification of the `μ ⊣ ν` correspondence.
//!
//! Both hom-sets `Alg(μ(b), a)` and `Coalg(b, ν(a))` are put in bijection
//! with the coalgebra-to-algebra homomorphisms `b → a`. The checks below run
//! each direction of that bijection and verify the resulting maps are
//! homomorphisms, up to explicit rank and depth bounds.
//!
//! On the `μ` side the classes of `μ(b)` grow doubly exponentially with rank,
//! so exhaustive checks run up to the highest rank whose class list (and
//! argument tuples) fit in the cap. The full `max_rank` is then covered by a
//! generator-level certificate: the induced map is well defined on all of
//! `μ(b)` up to rank `n` iff folding the `j`-fold unfolding of every
//! generator `x` returns `f(x)` for all `j ≤ n`. Since it is defined by
//! folding, it then commutes with every operation, and any homomorphism
//! agreeing with `f` on generators equals it.

use serde::Serialize;

use crate::report::Check;
use crate::signature::{Term, Tree, DEFAULT_TERM_CAP};

use super::colimit::{induced_alg_hom, mu_algebra_apply, mu_enumerate_within, MuClasses, MuElement};
use super::limit::{induced_coalg_hom, NuPointStream};
use super::structures::enumerate_coalg_to_alg;
use super::{Algebra, CoalgToAlgHom, Coalgebra, FixcatError};

/// Rank, depth and size bounds for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Depth of `ν(a)` stages checked.
    pub depth: usize,
    /// Rank of `μ(b)` representatives checked.
    pub max_rank: usize,
    /// Bound on any enumeration (terms, classes, argument tuples, maps).
    pub cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { depth: 5, max_rank: 5, cap: DEFAULT_TERM_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjunctionReport {
    pub bounds: Bounds,
    /// `H`: every coalgebra-to-algebra homomorphism, as carrier labels.
    pub homs: Vec<Vec<String>>,
    pub alg_families: usize,
    pub coalg_families: usize,
    /// Highest rank of `μ(b)` on which the class-level checks were exhaustive.
    pub exhaustive_rank: usize,
    pub classes_checked: usize,
    pub tuples_checked: usize,
    pub checks: Vec<Check>,
    pub note: String,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the five sub-checks of the hom-set bijection for `b` and `a`:
/// homomorphism enumeration, induced algebra maps, induced coalgebra maps,
/// injectivity of both inductions, and uniqueness of the algebra side.
pub fn adjunction_check(
    b: &Coalgebra,
    a: &Algebra,
    bounds: Bounds,
) -> Result<AdjunctionReport, FixcatError> {
    if b.sig() != a.sig() {
        return Err(FixcatError::SignatureMismatch);
    }
    let homs = enumerate_coalg_to_alg(b, a, bounds.cap)?;
    let classes = mu_enumerate_within(b, bounds.max_rank, bounds.cap)
        .ok_or(FixcatError::CarrierTooLarge { size: b.len(), cap: bounds.cap })?;
    let layer = TupleLayer::build(b, &classes, bounds.cap);

    let mut checks = Vec::new();

    let bad: Vec<String> = homs
        .iter()
        .filter(|f| CoalgToAlgHom::new(b, a, f.map().to_vec()).is_err())
        .map(|f| render_map(a, f.map()))
        .collect();
    checks.push(Check::from_witnesses(
        "coalgebra-to-algebra homs",
        format!("|H| = {} by exhaustive search over {} maps", homs.len(), pow(a.len(), b.len())),
        bad,
    ));

    let mut alg_wit = Vec::new();
    let mut coalg_wit = Vec::new();
    let mut uniq_wit = Vec::new();
    let mut alg_restrictions = Vec::new();
    let mut coalg_restrictions = Vec::new();
    let mut alg_families = 0;
    let mut coalg_families = 0;
    for f in &homs {
        let values: Vec<usize> =
            classes.elements().iter().map(|e| induced_alg_hom(a, f, e)).collect();

        let before = alg_wit.len();
        alg_wit.extend(check_induced_alg(b, a, f, &classes, &values, &layer));
        alg_wit.extend(generator_certificate(b, a, f, bounds.max_rank));
        if alg_wit.len() == before {
            alg_families += 1;
        }
        alg_restrictions.push((0..b.len()).map(|x| induced_alg_hom(a, f, &MuElement::generator(x))).collect::<Vec<_>>());

        let streams: Vec<NuPointStream> = (0..b.len()).map(|x| induced_coalg_hom(b, a, f, x)).collect();
        let before = coalg_wit.len();
        coalg_wit.extend(check_induced_coalg(b, a, f, &streams, bounds.depth));
        if coalg_wit.len() == before {
            coalg_families += 1;
        }
        coalg_restrictions.push(streams.iter().map(|s| leaf_value(&s.component(0))).collect::<Vec<_>>());

        uniq_wit.extend(check_forced_extension(b, a, f, &classes, &values));
    }

    let vacuous = if homs.is_empty() { "; H is empty, both families are empty and the bijection holds vacuously" } else { "" };
    checks.push(Check::from_witnesses(
        "induced algebra homs mu(b) -> a",
        format!(
            "{alg_families} of {} families commute with every operation on {} classes up to rank {}, generator certificate to rank {}{vacuous}",
            homs.len(),
            classes.len(),
            layer.rank,
            bounds.max_rank
        ),
        alg_wit,
    ));
    checks.push(Check::from_witnesses(
        "induced coalgebra homs b -> nu(a)",
        format!(
            "{coalg_families} of {} families are compatible streams and coalgebra homomorphisms to depth {}{vacuous}",
            homs.len(),
            bounds.depth
        ),
        coalg_wit,
    ));

    let mut inj_wit = Vec::new();
    for (i, f) in homs.iter().enumerate() {
        if alg_restrictions[i] != f.map() {
            inj_wit.push(format!("mu-side restriction of {} is {}", render_map(a, f.map()), render_map(a, &alg_restrictions[i])));
        }
        if coalg_restrictions[i] != f.map() {
            inj_wit.push(format!("nu-side component 0 of {} is {}", render_map(a, f.map()), render_map(a, &coalg_restrictions[i])));
        }
        for j in 0..i {
            if alg_restrictions[i] == alg_restrictions[j] {
                inj_wit.push(format!("homs #{j} and #{i} induce the same map on mu(b) generators"));
            }
            if coalg_restrictions[i] == coalg_restrictions[j] {
                inj_wit.push(format!("homs #{j} and #{i} induce the same stream components"));
            }
        }
    }
    checks.push(Check::from_witnesses(
        "injectivity of both inductions",
        format!(
            "|H| = {}, {} induced algebra maps, {} induced coalgebra maps, each recovering f on generators",
            homs.len(),
            alg_families,
            coalg_families
        ),
        inj_wit,
    ));
    checks.push(Check::from_witnesses(
        "uniqueness of induced algebra homs",
        format!(
            "forced extension of f agrees with the induced map on {} classes up to rank {}",
            classes.len(),
            classes.max_rank()
        ),
        uniq_wit,
    ));

    let note = format!(
        "bounded verification: mu(b) exhaustive to rank {} ({} classes, {} operation applications), \
         generator-level certificate to rank {}; nu(a) checked to depth {}",
        layer.rank,
        classes.len(),
        layer.tuples.len(),
        bounds.max_rank,
        bounds.depth
    );
    Ok(AdjunctionReport {
        bounds,
        homs: homs.iter().map(|f| f.map().iter().map(|&v| a.carrier()[v].clone()).collect()).collect(),
        alg_families,
        coalg_families,
        exhaustive_rank: layer.rank,
        classes_checked: classes.len(),
        tuples_checked: layer.tuples.len(),
        checks,
        note,
    })
}

/// Every operation application `σ(c₁, …, c_m)` over listed classes whose
/// result still lies in the listed range, with the result's class.
struct TupleLayer {
    rank: usize,
    tuples: Vec<(usize, Vec<usize>, MuElement, usize)>,
}

impl TupleLayer {
    fn build(b: &Coalgebra, classes: &MuClasses, cap: usize) -> Self {
        let sig = b.sig();
        // Highest rank whose argument tuples fit in the cap.
        let mut rank = 0;
        for r in 1..=classes.max_rank() {
            let n = classes.count_up_to(r - 1) as u128;
            if sig.apply_count(n) > cap as u128 {
                break;
            }
            rank = r;
        }
        let pool: Vec<usize> =
            (0..classes.len()).filter(|&c| classes.elements()[c].rank() < rank).collect();
        let mut tuples = Vec::new();
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            let mut idx = vec![0usize; arity];
            if arity > 0 && pool.is_empty() {
                continue;
            }
            if rank == 0 {
                continue;
            }
            loop {
                let args: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
                let elems: Vec<MuElement> =
                    args.iter().map(|&c| classes.elements()[c].clone()).collect();
                let result = mu_algebra_apply(b, op, &elems).expect("arity matches");
                let class = classes.class_of(&result).expect("result within listed ranks");
                tuples.push((op, args, result, class));
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < pool.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        TupleLayer { rank, tuples }
    }
}

fn check_induced_alg(
    b: &Coalgebra,
    a: &Algebra,
    f: &CoalgToAlgHom,
    classes: &MuClasses,
    values: &[usize],
    layer: &TupleLayer,
) -> Vec<String> {
    let mut wit = Vec::new();
    // h(σ(e₁…e_m)) = a(σ(h(e₁)…h(e_m))), with the left side read both on the
    // applied representative and on its canonical class.
    for (op, args, result, class) in &layer.tuples {
        let rhs = a.apply_op(*op, &args.iter().map(|&c| values[c]).collect::<Vec<_>>());
        let direct = induced_alg_hom(a, f, result);
        if direct != rhs || values[*class] != rhs {
            wit.push(format!(
                "f = {}: h({}) = {} / {} but a(σ(h(args))) = {}",
                render_map(a, f.map()),
                result.render(b),
                a.carrier()[direct],
                a.carrier()[values[*class]],
                a.carrier()[rhs]
            ));
        }
    }
    // Representative independence along the chain.
    for (c, e) in classes.elements().iter().enumerate() {
        for r in e.rank() + 1..=classes.max_rank() {
            let v = induced_alg_hom(a, f, &e.pad_to(b, r));
            if v != values[c] {
                wit.push(format!(
                    "f = {}: {} and its padding to rank {r} fold to {} and {}",
                    render_map(a, f.map()),
                    e.render(b),
                    a.carrier()[values[c]],
                    a.carrier()[v]
                ));
            }
        }
    }
    wit
}

/// Folding the `j`-fold unfolding of each generator returns `f(x)`.
fn generator_certificate(b: &Coalgebra, a: &Algebra, f: &CoalgToAlgHom, max_rank: usize) -> Vec<String> {
    let mut wit = Vec::new();
    for x in 0..b.len() {
        let mut t = Term::generator(x);
        for j in 0..=max_rank {
            let v = a.eval(t.tree(), &|y| f.apply(y));
            if v != f.apply(x) {
                wit.push(format!(
                    "f = {}: {}-fold unfolding of {} folds to {}",
                    render_map(a, f.map()),
                    j,
                    b.carrier()[x],
                    a.carrier()[v]
                ));
            }
            t = t.unfold_once(b.structure());
        }
    }
    wit
}

fn check_induced_coalg(
    b: &Coalgebra,
    a: &Algebra,
    f: &CoalgToAlgHom,
    streams: &[NuPointStream],
    depth: usize,
) -> Vec<String> {
    let mut wit = Vec::new();
    let comps: Vec<Vec<Term>> = streams.iter().map(|s| s.components(depth)).collect();
    for (x, s) in streams.iter().enumerate() {
        for k in s.compatibility_violations(depth) {
            wit.push(format!(
                "f = {}: stream of {} is not compatible at depth {k}",
                render_map(a, f.map()),
                b.carrier()[x]
            ));
        }
        // Coalgebra square: the structure of ν(a) applied to the image of x
        // equals F(image)(b(x)), compared one component at a time.
        for k in 0..depth {
            let expected = b.step(x).tree().substitute(&|y| comps[y][k].tree().clone());
            if *comps[x][k + 1].tree() != expected {
                wit.push(format!(
                    "f = {}: square fails for {} at depth {}",
                    render_map(a, f.map()),
                    b.carrier()[x],
                    k + 1
                ));
            }
        }
    }
    wit
}

/// Any algebra homomorphism out of `μ(b)` restricting to `f` on generators
/// is forced on each class of rank `n + 1` by its value on the children.
fn check_forced_extension(
    b: &Coalgebra,
    a: &Algebra,
    f: &CoalgToAlgHom,
    classes: &MuClasses,
    values: &[usize],
) -> Vec<String> {
    let mut forced = vec![0usize; classes.len()];
    let mut wit = Vec::new();
    for (c, e) in classes.elements().iter().enumerate() {
        forced[c] = match e.term().tree() {
            Tree::Leaf(x) => f.apply(*x),
            Tree::Node(op, children) => {
                let vals: Vec<usize> = children
                    .iter()
                    .map(|t| {
                        let child = MuElement::new(Term::from_parts(e.rank() - 1, t.clone()));
                        forced[classes.class_of(&child).expect("child rank is covered")]
                    })
                    .collect();
                a.apply_op(*op, &vals)
            }
        };
        if forced[c] != values[c] {
            wit.push(format!(
                "f = {}: forced value {} differs from induced value {} at {}",
                render_map(a, f.map()),
                a.carrier()[forced[c]],
                a.carrier()[values[c]],
                e.render(b)
            ));
        }
    }
    wit
}

fn leaf_value(t: &Term) -> usize {
    match t.tree() {
        Tree::Leaf(v) => *v,
        Tree::Node(..) => unreachable!("rank-0 components are carrier elements"),
    }
}

fn render_map(a: &Algebra, map: &[usize]) -> String {
    let parts: Vec<&str> = map.iter().map(|&v| a.carrier()[v].as_str()).collect();
    format!("[{}]", parts.join(","))
}

fn pow(base: usize, exp: usize) -> u128 {
    (base as u128).saturating_pow(exp as u32)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalityReport {
    pub bounds: Bounds,
    pub homs_transported: usize,
    pub checks: Vec<Check>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Naturality of the bijection in both arguments, for a coalgebra
/// homomorphism `g : b' → b` and an algebra homomorphism `h : a → a'`.
///
/// Each `f : b → a` is transported to `h ∘ f ∘ g : b' → a'`. Inducing from
/// the transported hom must agree with inducing from `f` and then composing
/// with `μ(g)` and `h` (resp. `g` and `ν(h)`).
pub fn naturality_check(
    b: &Coalgebra,
    b2: &Coalgebra,
    a: &Algebra,
    a2: &Algebra,
    g: &[usize],
    h: &[usize],
    bounds: Bounds,
) -> Result<NaturalityReport, FixcatError> {
    if g.len() != b2.len() || g.iter().any(|&v| v >= b.len()) {
        return Err(FixcatError::NotTotal("coalgebra map g : B' -> B".into()));
    }
    if h.len() != a.len() || h.iter().any(|&v| v >= a2.len()) {
        return Err(FixcatError::NotTotal("algebra map h : A -> A'".into()));
    }
    let mut checks = vec![
        Check::from_witnesses("g is a coalgebra homomorphism", "b . g = F(g) . b'", b.hom_violations_from(b2, g)),
        Check::from_witnesses("h is an algebra homomorphism", "h . a = a' . F(h)", a.hom_violations_into(a2, h)),
    ];
    let homs = enumerate_coalg_to_alg(b, a, bounds.cap)?;
    let classes = mu_enumerate_within(b2, bounds.max_rank, bounds.cap)
        .ok_or(FixcatError::CarrierTooLarge { size: b2.len(), cap: bounds.cap })?;

    let mut transport_wit = Vec::new();
    let mut mu_wit = Vec::new();
    let mut nu_wit = Vec::new();
    for f in &homs {
        let moved: Vec<usize> = (0..b2.len()).map(|x| h[f.apply(g[x])]).collect();
        let f2 = match CoalgToAlgHom::new(b2, a2, moved.clone()) {
            Ok(f2) => f2,
            Err(e) => {
                transport_wit.push(format!("{} transports to non-hom {}: {e}", render_map(a, f.map()), render_map(a2, &moved)));
                continue;
            }
        };
        for e in classes.elements() {
            let lhs = induced_alg_hom(a2, &f2, e);
            let image = MuElement::new(e.term().map_leaves(|x| g[x]));
            let rhs = h[induced_alg_hom(a, f, &image)];
            if lhs != rhs {
                mu_wit.push(format!("f = {}: at {} got {} vs {}", render_map(a, f.map()), e.render(b2), a2.carrier()[lhs], a2.carrier()[rhs]));
            }
        }
        for (x, &gx) in g.iter().enumerate().take(b2.len()) {
            let left = induced_coalg_hom(b2, a2, &f2, x).components(bounds.depth);
            let right = induced_coalg_hom(b, a, f, gx).components(bounds.depth);
            for (k, (l, r)) in left.iter().zip(&right).enumerate() {
                if *l != r.map_leaves(|v| h[v]) {
                    nu_wit.push(format!("f = {}: component {k} of {} differs", render_map(a, f.map()), b2.carrier()[x]));
                }
            }
        }
    }
    checks.push(Check::from_witnesses(
        "transported homs",
        format!("{} homs b -> a transported to b' -> a'", homs.len()),
        transport_wit,
    ));
    checks.push(Check::from_witnesses(
        "naturality on mu side",
        format!("{} classes of mu(b') up to rank {}", classes.len(), classes.max_rank()),
        mu_wit,
    ));
    checks.push(Check::from_witnesses(
        "naturality on nu side",
        format!("{} generators to depth {}", b2.len(), bounds.depth),
        nu_wit,
    ));
    Ok(NaturalityReport { bounds, homs_transported: homs.len(), checks })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorecursionReport {
    /// Number of homs into the terminal algebra, per coalgebra.
    pub counts: Vec<usize>,
    pub checks: Vec<Check>,
}

/// The terminal coalgebra is corecursive: every coalgebra has exactly one
/// coalgebra-to-algebra map into the one-element algebra.
pub fn corecursive_check(coalgebras: &[Coalgebra], cap: usize) -> Result<CorecursionReport, FixcatError> {
    let mut counts = Vec::with_capacity(coalgebras.len());
    let mut wit = Vec::new();
    for (i, c) in coalgebras.iter().enumerate() {
        let n = enumerate_coalg_to_alg(c, &Algebra::terminal(c.sig().clone()), cap)?.len();
        if n != 1 {
            wit.push(format!("coalgebra #{i} has {n} homs into 1"));
        }
        counts.push(n);
    }
    let checks = vec![Check::from_witnesses(
        "unique hom into the terminal algebra",
        format!("{} coalgebras", coalgebras.len()),
        wit,
    )];
    Ok(CorecursionReport { counts, checks })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecursionReport {
    pub well_founded: bool,
    /// Number of homs into each supplied algebra.
    pub counts: Vec<usize>,
    pub checks: Vec<Check>,
}

/// A well-founded coalgebra is recursive: exactly one coalgebra-to-algebra
/// map into every algebra. For other coalgebras the counts are only reported.
pub fn wellfounded_recursive_check(
    b: &Coalgebra,
    algebras: &[Algebra],
    cap: usize,
) -> Result<RecursionReport, FixcatError> {
    let well_founded = b.is_well_founded();
    let counts = algebras
        .iter()
        .map(|a| enumerate_coalg_to_alg(b, a, cap).map(|h| h.len()))
        .collect::<Result<Vec<_>, _>>()?;
    let checks = if well_founded {
        let wit = counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 1)
            .map(|(i, n)| format!("well-founded but {n} homs into algebra #{i}"))
            .collect();
        vec![Check::from_witnesses(
            "recursive",
            format!("well-founded; unique hom into each of {} algebras", algebras.len()),
            wit,
        )]
    } else {
        vec![Check::pass(
            "recursive",
            format!("not well-founded; hom counts {counts:?} reported without assertion"),
        )]
    };
    Ok(RecursionReport { well_founded, counts, checks })
}
