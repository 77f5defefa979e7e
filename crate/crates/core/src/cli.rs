//! Command-line front end.
//!
//! [`Cli`] is the argument parser, [`RunConfig`] the validated request and
//! [`run`] turns it into an [`Outcome`]: an exit status plus the text for
//! stdout and stderr. Exit status is 0 when every check passes, 1 when some
//! check fails (the report is still printed) and 2 for bad input.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::dagger::{
    coincidence_check, dagger_laws_check, dagger_laws_exhaustive, mu_chain, random_instances, rel_dagger,
    DaggerError, FinRel, FinSet, RelEndo, DEFAULT_CHAIN_BOUND, DEFAULT_OBJECT_CAP,
};
use crate::dot::{self, Diagram};
use crate::fixcat::random::{InstanceGen, InstanceShape};
use crate::fixcat::{
    adjunction_check, corecursive_check, infinite_trace, mu_algebra_apply, mu_enumerate, nu_approx,
    successor_orbits, Algebra, Bounds, Coalgebra, FixcatError, MuElement,
};
use crate::interval::{self, IntervalError, IntervalMap, DEFAULT_GRID, DEFAULT_MAX_ITERATIONS};
use crate::lattice::{FinLattice, LatticeError, MonotoneMap};
use crate::report::{Check, Report};
use crate::signature::DEFAULT_TERM_CAP;
use crate::spec::{parse_specs, Spec, SpecError, SpecKind};

/// Largest coalgebra or algebra carrier accepted from input.
pub const MAX_CARRIER: usize = 6;
/// Largest rank or depth accepted for coalgebra and algebra commands.
pub const MAX_DEPTH: usize = 8;
/// Largest chain bound accepted for relation commands.
pub const MAX_CHAIN_BOUND: usize = 64;

const DEFAULT_DEPTH: usize = 5;
const DEFAULT_MAX_RANK: usize = 5;
const DEFAULT_RANDOM_RELATIONS: usize = 1000;
const DEFAULT_RANDOM_INSTANCES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Pre-, post- and fixed points with mu/nu tables (or the [0,1] figure).
    LatticeFixpoints,
    /// mu(x) <= y iff x <= nu(y) over all pre-/post-fixed pairs.
    LatticeGalois,
    /// Points of mu(b) up to a rank.
    Mu,
    /// Stages of nu(a) up to a depth.
    Nu,
    /// The hom-set bijection between Alg(mu(b), a) and Coalg(b, nu(a)).
    Adjunction,
    /// Infinite traces of every coalgebra state.
    Trace,
    /// Converse of relations and the dagger laws.
    RelDagger,
    /// mu(c)† against nu(c†) for a relation functor.
    RelCoincidence,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::LatticeFixpoints => "lattice-fixpoints",
            Command::LatticeGalois => "lattice-galois",
            Command::Mu => "mu",
            Command::Nu => "nu",
            Command::Adjunction => "adjunction",
            Command::Trace => "trace",
            Command::RelDagger => "rel-dagger",
            Command::RelCoincidence => "rel-coincidence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "midfix", version, about = "Middle fixpoints on lattices, coalgebras and relations")]
pub struct Cli {
    pub command: Command,
    /// JSON spec files. A file may also hold a JSON array of specs.
    pub inputs: Vec<PathBuf>,
    /// Read one JSON document (spec or array of specs) from stdin.
    #[arg(long)]
    pub stdin: bool,
    /// Trace or limit depth (1..=8, default 5); chain bound for rel-coincidence (1..=64, default 32).
    #[arg(long)]
    pub depth: Option<usize>,
    /// Highest rank of mu(b) to enumerate (1..=8, default 5).
    #[arg(long)]
    pub max_rank: Option<usize>,
    /// Refuse to materialize more than this many terms or set elements.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Convergence tolerance on [0, 1] (default 1e-9).
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run a seeded suite of this many random instances.
    #[arg(long)]
    pub random: Option<usize>,
    /// Use the built-in map on [0, 1] (lattice-fixpoints only).
    #[arg(long)]
    pub figure: bool,
}

/// One input document, labelled for the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<Input>,
    pub depth: Option<usize>,
    pub max_rank: Option<usize>,
    pub cap: Option<usize>,
    pub tolerance: Option<f64>,
    pub format: Format,
    pub seed: u64,
    pub random: Option<usize>,
    pub figure: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            inputs: Vec::new(),
            depth: None,
            max_rank: None,
            cap: None,
            tolerance: None,
            format: Format::Json,
            seed: 0,
            random: None,
            figure: false,
        }
    }

    pub fn with_input(mut self, name: impl Into<String>, text: impl Into<String>) -> Self {
        self.inputs.push(Input { name: name.into(), text: text.into() });
        self
    }

    /// Reads the files named on the command line, and stdin if asked.
    pub fn from_cli(cli: Cli, stdin: impl FnOnce() -> std::io::Result<String>) -> Result<Self, CliError> {
        let mut inputs = Vec::new();
        for p in &cli.inputs {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
            inputs.push(Input { name: p.display().to_string(), text });
        }
        if cli.stdin {
            let text = stdin().map_err(|e| CliError::Io { path: "<stdin>".into(), message: e.to_string() })?;
            inputs.push(Input { name: "<stdin>".into(), text });
        }
        Ok(RunConfig {
            command: cli.command,
            inputs,
            depth: cli.depth,
            max_rank: cli.max_rank,
            cap: cli.cap,
            tolerance: cli.tolerance,
            format: cli.format,
            seed: cli.seed,
            random: cli.random,
            figure: cli.figure,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{input}: {source}")]
    Spec { input: String, source: SpecError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Fixcat(#[from] FixcatError),
    #[error(transparent)]
    Dagger(#[from] DaggerError),
}

/// The result of a run, ready to be printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig) -> Outcome {
    match execute(config) {
        Ok((report, diagram)) => {
            let code = if report.all_passed() { 0 } else { 1 };
            let stdout = match config.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
                Format::Dot => match diagram {
                    Some(d) => dot::emit_dot(&d),
                    None => {
                        return Outcome {
                            code: 2,
                            stdout: String::new(),
                            stderr: format!("error: {} has no diagram to render\n", config.command.name()),
                        }
                    }
                },
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Settings after defaults are applied, echoed in every report.
#[derive(Debug, Clone, Serialize)]
struct Effective {
    command: Command,
    inputs: Vec<String>,
    depth: usize,
    max_rank: usize,
    cap: usize,
    tolerance: f64,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    random: Option<usize>,
    figure: bool,
}

fn effective(config: &RunConfig) -> Result<Effective, CliError> {
    let relational = matches!(config.command, Command::RelDagger | Command::RelCoincidence);
    let (default_depth, depth_limit) =
        if relational { (DEFAULT_CHAIN_BOUND, MAX_CHAIN_BOUND) } else { (DEFAULT_DEPTH, MAX_DEPTH) };
    let depth = config.depth.unwrap_or(default_depth);
    let max_rank = config.max_rank.unwrap_or(DEFAULT_MAX_RANK);
    let cap = config.cap.unwrap_or(if relational { DEFAULT_OBJECT_CAP } else { DEFAULT_TERM_CAP });
    let tolerance = config.tolerance.unwrap_or(interval::DEFAULT_TOLERANCE);
    if depth == 0 || depth > depth_limit {
        return Err(CliError::Usage(format!("--depth must be in 1..={depth_limit}, got {depth}")));
    }
    if max_rank == 0 || max_rank > MAX_DEPTH {
        return Err(CliError::Usage(format!("--max-rank must be in 1..={MAX_DEPTH}, got {max_rank}")));
    }
    if cap == 0 {
        return Err(CliError::Usage("--cap must be positive".into()));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(CliError::Usage(format!("--tolerance must be positive, got {tolerance}")));
    }
    if config.random == Some(0) {
        return Err(CliError::Usage("--random must be positive".into()));
    }
    if config.figure && config.command != Command::LatticeFixpoints {
        return Err(CliError::Usage("--figure only applies to lattice-fixpoints".into()));
    }
    Ok(Effective {
        command: config.command,
        inputs: config.inputs.iter().map(|i| i.name.clone()).collect(),
        depth,
        max_rank,
        cap,
        tolerance,
        seed: config.seed,
        random: config.random,
        figure: config.figure,
    })
}

fn parse_inputs(config: &RunConfig) -> Result<Vec<Spec>, CliError> {
    let mut out = Vec::new();
    for input in &config.inputs {
        let specs =
            parse_specs(&input.text).map_err(|source| CliError::Spec { input: input.name.clone(), source })?;
        out.extend(specs);
    }
    Ok(out)
}

/// Pulls the specs of the expected kinds, in order, rejecting extras.
fn expect_kinds(specs: Vec<Spec>, kinds: &[SpecKind], command: Command) -> Result<Vec<Spec>, CliError> {
    let found: Vec<String> = specs.iter().map(|s| s.kind().to_string()).collect();
    let wanted: Vec<String> = kinds.iter().map(ToString::to_string).collect();
    if found != wanted {
        return Err(CliError::Usage(format!(
            "{} expects inputs [{}], got [{}]",
            command.name(),
            wanted.join(", "),
            found.join(", ")
        )));
    }
    Ok(specs)
}

fn check_carrier(name: &str, size: usize) -> Result<(), CliError> {
    if size > MAX_CARRIER {
        return Err(CliError::Usage(format!("{name} has {size} elements, more than the limit of {MAX_CARRIER}")));
    }
    Ok(())
}

fn execute(config: &RunConfig) -> Result<(Report, Option<Diagram>), CliError> {
    let eff = effective(config)?;
    let specs = parse_inputs(config)?;
    let mut report = Report::new(config.command.name(), serde_json::to_value(&eff).expect("config serializes"));
    let diagram = match config.command {
        Command::LatticeFixpoints if eff.figure => {
            if !specs.is_empty() {
                return Err(CliError::Usage("--figure takes no inputs".into()));
            }
            figure_report(&eff, &mut report)?;
            None
        }
        Command::LatticeFixpoints => {
            let (lattice, map) = lattice_input(specs, config.command)?;
            fixpoints_report(&map, &mut report)?;
            Some(dot::lattice_diagram(&lattice))
        }
        Command::LatticeGalois => {
            let (lattice, map) = lattice_input(specs, config.command)?;
            let r = map.galois_check()?;
            report.checks.push(Check::from_witnesses(
                "galois connection",
                format!("{} pairs verified", r.pairs_checked),
                r.violations
                    .iter()
                    .map(|v| format!("x={} y={}: mu(x)={} nu(y)={}", v.x, v.y, v.mu_x, v.nu_y))
                    .collect(),
            ));
            report.data = serde_json::to_value(&r).expect("report serializes");
            Some(dot::lattice_diagram(&lattice))
        }
        Command::Mu => {
            let b = coalgebra_input(specs, config.command)?;
            mu_report(&b, &eff, &mut report)?;
            Some(dot::mu_chain_diagram(b.sig(), b.len(), eff.max_rank + 1))
        }
        Command::Nu => {
            let mut specs = expect_kinds(specs, &[SpecKind::Algebra], config.command)?;
            let Some(Spec::Algebra(a)) = specs.pop() else { unreachable!() };
            check_carrier("algebra carrier", a.len())?;
            nu_report(&a, &eff, &mut report)?;
            Some(dot::nu_chain_diagram(a.sig(), a.len(), eff.depth + 1))
        }
        Command::Adjunction => {
            let bounds = Bounds { depth: eff.depth, max_rank: eff.max_rank, cap: eff.cap };
            if specs.is_empty() {
                adjunction_suite(&eff, bounds, &mut report)?;
                None
            } else {
                let mut specs = expect_kinds(specs, &[SpecKind::Coalgebra, SpecKind::Algebra], config.command)?;
                let Some(Spec::Algebra(a)) = specs.pop() else { unreachable!() };
                let Some(Spec::Coalgebra(b)) = specs.pop() else { unreachable!() };
                check_carrier("coalgebra carrier", b.len())?;
                check_carrier("algebra carrier", a.len())?;
                let r = adjunction_check(&b, &a, bounds)?;
                report.checks = r.checks.clone();
                report.data = serde_json::to_value(&r).expect("report serializes");
                report.data["bijection_size"] = json!(r.homs.len());
                Some(dot::mu_chain_diagram(b.sig(), b.len(), eff.max_rank + 1))
            }
        }
        Command::Trace => {
            let b = coalgebra_input(specs, config.command)?;
            trace_report(&b, &eff, &mut report)?;
            Some(dot::nu_chain_diagram(b.sig(), 1, eff.depth + 1))
        }
        Command::RelDagger => {
            let rels = specs
                .into_iter()
                .map(|s| match s {
                    Spec::Relation(r) => Ok(r),
                    other => Err(CliError::Usage(format!("rel-dagger expects relations, got a {}", other.kind()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            dagger_report(&rels, &eff, &mut report);
            None
        }
        Command::RelCoincidence => {
            if specs.is_empty() {
                coincidence_suite(&eff, &mut report)?;
                None
            } else {
                let mut specs = expect_kinds(specs, &[SpecKind::Functor, SpecKind::Relation], config.command)?;
                let Some(Spec::Relation(c)) = specs.pop() else { unreachable!() };
                let Some(Spec::Functor(f)) = specs.pop() else { unreachable!() };
                let r = coincidence_check(&f, &c, eff.depth, eff.cap)?;
                report.checks = r.checks.clone();
                report.data = serde_json::to_value(&r).expect("report serializes");
                let chain = mu_chain(&f, &c, eff.depth, eff.cap)?;
                Some(dot::rel_chain_diagram(&chain, "c"))
            }
        }
    };
    Ok((report, diagram))
}

fn lattice_input(specs: Vec<Spec>, command: Command) -> Result<(FinLattice, MonotoneMap), CliError> {
    let mut specs = expect_kinds(specs, &[SpecKind::Lattice], command)?;
    match specs.pop() {
        Some(Spec::Lattice { lattice, map: Some(map) }) => Ok((lattice, map)),
        Some(Spec::Lattice { map: None, .. }) => Err(CliError::Usage("lattice spec needs a `map`".into())),
        _ => unreachable!(),
    }
}

fn coalgebra_input(specs: Vec<Spec>, command: Command) -> Result<Coalgebra, CliError> {
    let mut specs = expect_kinds(specs, &[SpecKind::Coalgebra], command)?;
    let Some(Spec::Coalgebra(b)) = specs.pop() else { unreachable!() };
    check_carrier("coalgebra carrier", b.len())?;
    Ok(b)
}

fn fixpoints_report(map: &MonotoneMap, report: &mut Report) -> Result<(), CliError> {
    let l = map.lattice();
    let classes = map.classify();
    let mut mu_wit = Vec::new();
    let mut nu_wit = Vec::new();
    for &x in &classes.pre_fixed {
        let m = map.mu(x)?;
        // Nearest fixpoint above x, found by scanning the fixed set.
        let above: Vec<usize> = classes.fixed.iter().copied().filter(|&p| l.leq(x, p)).collect();
        if !map.is_fixed(m) || !l.leq(x, m) || !above.iter().all(|&p| l.leq(m, p)) {
            mu_wit.push(format!("mu({}) = {}", l.label(x), l.label(m)));
        }
    }
    for &y in &classes.post_fixed {
        let n = map.nu(y)?;
        let below: Vec<usize> = classes.fixed.iter().copied().filter(|&p| l.leq(p, y)).collect();
        if !map.is_fixed(n) || !l.leq(n, y) || !below.iter().all(|&p| l.leq(p, n)) {
            nu_wit.push(format!("nu({}) = {}", l.label(y), l.label(n)));
        }
    }
    report.checks.push(Check::from_witnesses(
        "mu(x) is the least fixpoint above x",
        format!("{} pre-fixed points", classes.pre_fixed.len()),
        mu_wit,
    ));
    report.checks.push(Check::from_witnesses(
        "nu(y) is the greatest fixpoint below y",
        format!("{} post-fixed points", classes.post_fixed.len()),
        nu_wit,
    ));
    let r = map.galois_check()?;
    report.data = json!({
        "pre_fixed": r.pre_fixed,
        "post_fixed": r.post_fixed,
        "fixed": r.fixed,
        "mu": r.mu_table,
        "nu": r.nu_table,
    });
    Ok(())
}

fn figure_report(eff: &Effective, report: &mut Report) -> Result<(), CliError> {
    let f = IntervalMap::with_settings(interval::figure_map, DEFAULT_GRID, eff.tolerance, DEFAULT_MAX_ITERATIONS)?;
    let located = f.locate_fixpoints();
    let mut wit = Vec::new();
    if located.len() != interval::FIGURE_FIXPOINTS.len() {
        wit.push(format!("located {} fixpoints", located.len()));
    }
    report.checks.push(Check::from_witnesses("fixpoints located", format!("{located:?}"), wit));

    let mut mu_wit = Vec::new();
    let mut nu_wit = Vec::new();
    let (mut pre, mut post) = (0, 0);
    for x in f.grid() {
        if f.is_pre_fixed(x) {
            pre += 1;
            let target = located.iter().copied().filter(|&p| p >= x - eff.tolerance).fold(f64::INFINITY, f64::min);
            match f.mu(x) {
                Ok(c) if (c.value - target).abs() <= 1e-6 => {}
                Ok(c) => mu_wit.push(format!("mu({x}) = {} but nearest fixpoint above is {target}", c.value)),
                Err(e) => mu_wit.push(format!("mu({x}): {e}")),
            }
        }
        if f.is_post_fixed(x) {
            post += 1;
            let target =
                located.iter().copied().filter(|&p| p <= x + eff.tolerance).fold(f64::NEG_INFINITY, f64::max);
            match f.nu(x) {
                Ok(c) if (c.value - target).abs() <= 1e-6 => {}
                Ok(c) => nu_wit.push(format!("nu({x}) = {} but nearest fixpoint below is {target}", c.value)),
                Err(e) => nu_wit.push(format!("nu({x}): {e}")),
            }
        }
    }
    report.checks.push(Check::from_witnesses(
        "mu converges to the nearest fixpoint above",
        format!("{pre} pre-fixed grid points"),
        mu_wit,
    ));
    report.checks.push(Check::from_witnesses(
        "nu converges to the nearest fixpoint below",
        format!("{post} post-fixed grid points"),
        nu_wit,
    ));
    let (mu0, nu1) = (f.mu(0.0)?, f.nu(1.0)?);
    let mut ends = Vec::new();
    if mu0.value != 0.0 {
        ends.push(format!("mu(0) = {}", mu0.value));
    }
    if nu1.value != 1.0 {
        ends.push(format!("nu(1) = {}", nu1.value));
    }
    report.checks.push(Check::from_witnesses("endpoints", "mu(0) = 0 and nu(1) = 1", ends));
    report.data = json!({ "fixpoints": located, "grid": f.sample_grid(), "pre_fixed_grid_points": pre, "post_fixed_grid_points": post });
    Ok(())
}

fn mu_report(b: &Coalgebra, eff: &Effective, report: &mut Report) -> Result<(), CliError> {
    let classes = mu_enumerate(b, eff.max_rank, eff.cap)?;
    let sig = b.sig();
    // μ(b) is an algebra: applying an operation to listed points of rank
    // below max_rank must give a listed point.
    let args: Vec<&MuElement> = classes.elements().iter().filter(|e| e.rank() < eff.max_rank).collect();
    let tuples = sig.apply_count(args.len() as u128);
    let mut wit = Vec::new();
    let closure = if tuples <= eff.cap as u128 {
        for op in 0..sig.len() {
            let mut idx = vec![0usize; sig.arity(op)];
            loop {
                let tuple: Vec<MuElement> = idx.iter().map(|&i| args[i].clone()).collect();
                let e = mu_algebra_apply(b, op, &tuple)?;
                if classes.class_of(&e).is_none() {
                    wit.push(e.render(b));
                }
                if !advance(&mut idx, args.len()) {
                    break;
                }
            }
        }
        Check::from_witnesses(
            "operations stay inside the listed points",
            format!("{tuples} applications to points below rank {}", eff.max_rank),
            wit,
        )
    } else {
        Check::pass("operations stay inside the listed points", format!("skipped: {tuples} applications exceed the cap"))
    };
    report.checks.push(closure);
    let per_rank: Vec<usize> = (0..=classes.max_rank())
        .map(|r| classes.elements().iter().filter(|e| e.rank() == r).count())
        .collect();
    let eq = classes.colim_eq();
    let labels = |xs: &[usize]| xs.iter().map(|&x| b.carrier()[x].clone()).collect::<Vec<_>>();
    report.data = json!({
        "classes": classes.len(),
        "new_classes_per_rank": per_rank,
        "points": classes.elements().iter().map(|e| e.render(b)).collect::<Vec<_>>(),
        "identified_generators": eq.classes().iter().map(|c| labels(c)).collect::<Vec<_>>(),
        "successor_orbits": successor_orbits(b).iter().map(|c| labels(c)).collect::<Vec<_>>(),
        "well_founded": b.is_well_founded(),
    });
    Ok(())
}

/// Odometer step over `0..n` per digit; false once it wraps around.
fn advance(idx: &mut [usize], n: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

fn nu_report(a: &Algebra, eff: &Effective, report: &mut Report) -> Result<(), CliError> {
    let approx = nu_approx(a, eff.depth, eff.cap)?;
    let sizes = approx.level_sizes();
    let mut expected = vec![a.len() as u128];
    for _ in 0..eff.depth {
        let c = *expected.last().expect("nonempty");
        expected.push(a.sig().ops().iter().map(|o| c.saturating_pow(o.arity as u32)).sum());
    }
    let wit = sizes
        .iter()
        .zip(&expected)
        .enumerate()
        .filter(|(_, (&s, &e))| s as u128 != e)
        .map(|(k, (s, e))| format!("stage {k}: {s} terms, expected {e}"))
        .collect();
    report.checks.push(Check::from_witnesses("stage sizes", format!("{sizes:?}"), wit));
    let mut proj_wit = Vec::new();
    for (k, p) in approx.projections().iter().enumerate() {
        if p.len() != sizes[k + 1] || p.iter().any(|&i| i >= sizes[k]) {
            proj_wit.push(format!("projection {} -> {k}", k + 1));
        }
    }
    report.checks.push(Check::from_witnesses(
        "projections are total",
        format!("{} projections", approx.projections().len()),
        proj_wit,
    ));
    let shown = approx.levels().iter().take(3).map(|lvl| lvl.iter().map(|t| a.render(t)).collect::<Vec<_>>());
    report.data = json!({
        "stage_sizes": sizes,
        "projections": approx.projections(),
        "first_stages": shown.collect::<Vec<_>>(),
    });
    Ok(())
}

fn trace_report(b: &Coalgebra, eff: &Effective, report: &mut Report) -> Result<(), CliError> {
    let mut wit = Vec::new();
    let mut traces = serde_json::Map::new();
    for x in 0..b.len() {
        let t = infinite_trace(b, x);
        for k in t.compatibility_violations(eff.depth) {
            wit.push(format!("{} at depth {k}", b.carrier()[x]));
        }
        let comps: Vec<String> = t.components(eff.depth).iter().map(|c| t.algebra().render(c)).collect();
        traces.insert(b.carrier()[x].clone(), json!(comps));
    }
    report.checks.push(Check::from_witnesses(
        "trace components are compatible",
        format!("{} states to depth {}", b.len(), eff.depth),
        wit,
    ));
    let core = corecursive_check(std::slice::from_ref(b), eff.cap)?;
    report.checks.extend(core.checks);
    report.data = json!({ "traces": traces, "well_founded": b.is_well_founded() });
    Ok(())
}

fn adjunction_suite(eff: &Effective, bounds: Bounds, report: &mut Report) -> Result<(), CliError> {
    let n = eff.random.unwrap_or(DEFAULT_RANDOM_INSTANCES);
    let mut gen = InstanceGen::new(eff.seed, InstanceShape::default());
    let mut failures = vec![Vec::new(); 5];
    let mut names: Vec<String> = Vec::new();
    let mut sizes = Vec::with_capacity(n);
    for i in 0..n {
        let sig = gen.signature();
        let b = gen.coalgebra(&sig);
        let a = gen.algebra(&sig);
        let r = adjunction_check(&b, &a, bounds)?;
        if names.is_empty() {
            names = r.checks.iter().map(|c| c.name.clone()).collect();
        }
        for (j, c) in r.checks.iter().enumerate() {
            if !c.passed {
                failures[j].push(format!("instance #{i}: {}", c.detail));
            }
        }
        sizes.push(r.homs.len());
    }
    for (name, wit) in names.into_iter().zip(failures) {
        report.checks.push(Check::from_witnesses(name, format!("{n} random instances"), wit));
    }
    report.data = json!({ "instances": n, "bijection_sizes": sizes });
    Ok(())
}

fn dagger_report(rels: &[FinRel], eff: &Effective, report: &mut Report) {
    let mut sample: Vec<FinRel> = rels.to_vec();
    sample.extend(rels.iter().map(rel_dagger));
    let objects: Vec<FinSet> = rels.iter().flat_map(|r| [r.source().clone(), r.target().clone()]).collect();
    let given = dagger_laws_check(&objects, &sample);
    for mut c in given.checks {
        c.name = format!("input relations: {}", c.name);
        report.checks.push(c);
    }
    let exhaustive = dagger_laws_exhaustive(2);
    for mut c in exhaustive.checks {
        c.name = format!("all relations on sets of size <= 2: {}", c.name);
        report.checks.push(c);
    }
    let n = eff.random.unwrap_or(DEFAULT_RANDOM_RELATIONS);
    let random = random_relations(eff.seed, n, 4);
    let random_objects: Vec<FinSet> = (0..=4).map(FinSet::range).collect();
    for mut c in dagger_laws_check(&random_objects, &random).checks {
        c.name = format!("{n} random relations: {}", c.name);
        report.checks.push(c);
    }
    let show = |r: &FinRel| json!({ "relation": r.to_string(), "dagger": rel_dagger(r).to_string() });
    report.data = json!({
        "daggers": rels.iter().map(show).collect::<Vec<_>>(),
        "exhaustive_relations": exhaustive.relations,
        "random_relations": n,
    });
}

/// Seeded relations between sets of size at most `max_size`.
pub fn random_relations(seed: u64, count: usize, max_size: usize) -> Vec<FinRel> {
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (m, n) = (rng.random_range(0..=max_size), rng.random_range(0..=max_size));
            let pairs: Vec<(usize, usize)> =
                (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|_| rng.random_bool(0.5)).collect();
            FinRel::from_indices(FinSet::range(m), FinSet::range(n), pairs)
        })
        .collect()
}

fn coincidence_suite(eff: &Effective, report: &mut Report) -> Result<(), CliError> {
    let n = eff.random.unwrap_or(DEFAULT_RANDOM_INSTANCES);
    let mut duality = Vec::new();
    let mut coincide = Vec::new();
    let mut laws = Vec::new();
    let mut stable = 0;
    let mut stages = Vec::with_capacity(n);
    for (i, (f, c)) in random_instances(eff.seed, n, 3).into_iter().enumerate() {
        let r = coincidence_check(&f, &c, eff.depth, eff.cap)?;
        for chk in r.checks.iter().filter(|c| !c.passed) {
            let line = format!("instance #{i} ({}): {}", f.name(), chk.detail);
            match chk.name.as_str() {
                "stage-wise duality" => duality.push(line),
                "coincidence mu(c)† = nu(c†)" => coincide.push(line),
                _ => laws.push(line),
            }
        }
        if matches!(f, RelEndo::Constant(_)) && r.coincidence_object.is_none() {
            coincide.push(format!("instance #{i}: constant functor did not stabilize"));
        }
        if r.coincidence_object.is_some() {
            stable += 1;
        }
        stages.push(r.mu_stabilization.stage());
    }
    report.checks.push(Check::from_witnesses("functor laws", format!("{n} random instances"), laws));
    report.checks.push(Check::from_witnesses("stage-wise duality", format!("{n} random instances"), duality));
    report.checks.push(Check::from_witnesses(
        "coincidence mu(c)† = nu(c†)",
        format!("{stable} of {n} instances stabilized"),
        coincide,
    ));
    report.data = json!({ "instances": n, "stabilization_stages": stages });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    const CHAIN: &str = r#"{"elements":["0","1","2","3","4"],
        "leq":[["0","1"],["0","2"],["0","3"],["0","4"],["1","2"],["1","3"],["1","4"],["2","3"],["2","4"],["3","4"]],
        "map":{"0":"0","1":"2","2":"2","3":"2","4":"4"}}"#;

    const LOOP: &str = r#"{"sig":{"ops":[{"name":"s","arity":1},{"name":"z","arity":0}]},
        "carrier":["p"],"structure":{"p":{"op":"s","args":["p"]}}}"#;

    const PARITY: &str = r#"{"sig":{"ops":[{"name":"s","arity":1},{"name":"z","arity":0}]},
        "carrier":["0","1"],"structure":[{"op":"z","value":"0"},
        {"op":"s","args":["0"],"value":"1"},{"op":"s","args":["1"],"value":"0"}]}"#;

    #[test]
    fn galois_on_chain() {
        let out = run(&RunConfig::new(Command::LatticeGalois).with_input("chain", CHAIN));
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("16 pairs verified"));
    }

    #[test]
    fn adjunction_loop_parity_is_empty() {
        let cfg = RunConfig::new(Command::Adjunction).with_input("loop", LOOP).with_input("parity", PARITY);
        let out = run(&cfg);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["data"]["bijection_size"], 0);
    }

    #[test]
    fn cap_exceeded_is_input_error() {
        let bin = r#"{"sig":{"ops":[{"name":"b","arity":2},{"name":"l","arity":0}]},
            "carrier":["x","y"],"structure":{"x":{"op":"b","args":["x","y"]},"y":{"op":"l"}}}"#;
        let mut cfg = RunConfig::new(Command::Mu).with_input("bin", bin);
        cfg.max_rank = Some(8);
        let out = run(&cfg);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("cap"), "{}", out.stderr);
    }

    #[test]
    fn bad_flags_are_rejected() {
        let mut cfg = RunConfig::new(Command::Mu).with_input("loop", LOOP);
        cfg.depth = Some(9);
        assert_eq!(run(&cfg).code, 2);
        let mut cfg = RunConfig::new(Command::Mu).with_input("loop", LOOP);
        cfg.figure = true;
        assert_eq!(run(&cfg).code, 2);
    }

    #[test]
    fn wrong_inputs_are_rejected() {
        let out = run(&RunConfig::new(Command::Mu).with_input("parity", PARITY));
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("expects inputs"));
    }

    #[test]
    fn dot_for_mu_chain() {
        let mut cfg = RunConfig::new(Command::Mu).with_input("loop", LOOP);
        cfg.format = Format::Dot;
        cfg.max_rank = Some(2);
        let out = run(&cfg);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("digraph mu_chain"));
        assert_eq!(out.stdout.matches("->").count(), 2);
    }

    #[test]
    fn cli_parses_flags() {
        let cli = Cli::try_parse_from(["midfix", "mu", "a.json", "--max-rank", "3", "--format", "json", "--seed", "7"])
            .unwrap();
        assert_eq!(cli.command, Command::Mu);
        assert_eq!(cli.max_rank, Some(3));
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.seed, 7);
    }
}
