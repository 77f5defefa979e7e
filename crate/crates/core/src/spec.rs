//! JSON input formats and their conversion to validated domain objects.
//!
//! ```text
//! lattice    {"elements": [..], "leq": [[a, b], ..], "map": {a: b, ..}}
//! signature  {"ops": [{"name": "s", "arity": 1}, ..]}
//! coalgebra  {"sig": .., "carrier": [..], "structure": {"p": {"op": "s", "args": ["p"]}}}
//! algebra    {"sig": .., "carrier": [..], "structure": [{"op": "s", "args": ["0"], "value": "1"}]}
//! relation   {"source": [..], "target": [..], "pairs": [[x, y], ..]}
//! functor    {"kind": "identity" | "constant" | "sum" | "product" | "table", ..}
//! ```
//!
//! Every spec type also has an emitter, and parsing an emitted spec gives
//! back an equal object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dagger::{DaggerError, FinRel, FinSet, FunctorTable, RelEndo};
use crate::fixcat::{Algebra, Coalgebra, FixcatError};
use crate::lattice::{FinLattice, LatticeError, MonotoneMap};
use crate::signature::{Signature, SignatureError, Tree};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot tell which kind of spec this is (keys: {0})")]
    UnknownKind(String),
    #[error("expected a {expected} spec, found a {found} spec")]
    WrongKind { expected: SpecKind, found: SpecKind },
    #[error("invalid `{key}`: {message}")]
    Invalid { key: &'static str, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Fixcat(#[from] FixcatError),
    #[error(transparent)]
    Dagger(#[from] DaggerError),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        SpecError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    Lattice,
    Signature,
    Coalgebra,
    Algebra,
    Relation,
    Functor,
}

impl std::fmt::Display for SpecKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SpecKind::Lattice => "lattice",
            SpecKind::Signature => "signature",
            SpecKind::Coalgebra => "coalgebra",
            SpecKind::Algebra => "algebra",
            SpecKind::Relation => "relation",
            SpecKind::Functor => "functor",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpSpec {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureSpec {
    pub ops: Vec<OpSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Application {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraSpec {
    pub sig: SignatureSpec,
    pub carrier: Vec<String>,
    pub structure: BTreeMap<String, Application>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraEntry {
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub sig: SignatureSpec,
    pub carrier: Vec<String>,
    pub structure: Vec<AlgebraEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub from: Vec<String>,
    pub to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelEntry {
    pub from: RelationSpec,
    pub to: RelationSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub kind: String,
    /// The fixed set `K` of constant, sum and product functors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub object_map: Vec<ObjectEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rel_map: Vec<RelEntry>,
}

/// A parsed and validated input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    Lattice { lattice: FinLattice, map: Option<MonotoneMap> },
    Signature(Signature),
    Coalgebra(Coalgebra),
    Algebra(Algebra),
    Relation(FinRel),
    Functor(RelEndo),
}

impl Spec {
    pub fn kind(&self) -> SpecKind {
        match self {
            Spec::Lattice { .. } => SpecKind::Lattice,
            Spec::Signature(_) => SpecKind::Signature,
            Spec::Coalgebra(_) => SpecKind::Coalgebra,
            Spec::Algebra(_) => SpecKind::Algebra,
            Spec::Relation(_) => SpecKind::Relation,
            Spec::Functor(_) => SpecKind::Functor,
        }
    }

    /// Serializes back to the input format.
    pub fn emit(&self) -> String {
        let value = match self {
            Spec::Lattice { lattice, map } => serde_json::to_value(emit_lattice(lattice, map.as_ref())),
            Spec::Signature(s) => serde_json::to_value(emit_signature(s)),
            Spec::Coalgebra(b) => serde_json::to_value(emit_coalgebra(b)),
            Spec::Algebra(a) => serde_json::to_value(emit_algebra(a)),
            Spec::Relation(r) => serde_json::to_value(emit_relation(r)),
            Spec::Functor(f) => serde_json::to_value(emit_functor(f)),
        };
        serde_json::to_string_pretty(&value.expect("spec serializes")).expect("value serializes")
    }
}

/// Guesses the spec kind from the top-level keys.
pub fn detect_kind(value: &serde_json::Value) -> Result<SpecKind, SpecError> {
    let obj = value.as_object().ok_or_else(|| SpecError::UnknownKind("not an object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("elements") {
        SpecKind::Lattice
    } else if has("ops") {
        SpecKind::Signature
    } else if has("kind") {
        SpecKind::Functor
    } else if has("source") {
        SpecKind::Relation
    } else if has("sig") {
        match obj.get("structure") {
            Some(serde_json::Value::Array(_)) => SpecKind::Algebra,
            _ => SpecKind::Coalgebra,
        }
    } else {
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        return Err(SpecError::UnknownKind(keys.join(", ")));
    })
}

/// Parses a spec of any kind, detected from its keys.
pub fn parse_spec(text: &str) -> Result<Spec, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    parse_value(value)
}

/// Parses a spec and insists on its kind.
pub fn parse_spec_as(text: &str, expected: SpecKind) -> Result<Spec, SpecError> {
    let spec = parse_spec(text)?;
    if spec.kind() != expected {
        return Err(SpecError::WrongKind { expected, found: spec.kind() });
    }
    Ok(spec)
}

/// Parses either one spec or a JSON array of specs.
pub fn parse_specs(text: &str) -> Result<Vec<Spec>, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value {
        serde_json::Value::Array(items) => items.into_iter().map(parse_value).collect(),
        v => Ok(vec![parse_value(v)?]),
    }
}

fn parse_value(value: serde_json::Value) -> Result<Spec, SpecError> {
    Ok(match detect_kind(&value)? {
        SpecKind::Lattice => {
            let (lattice, map) = lattice_from(serde_json::from_value(value)?)?;
            Spec::Lattice { lattice, map }
        }
        SpecKind::Signature => Spec::Signature(signature_from(&serde_json::from_value(value)?)?),
        SpecKind::Coalgebra => Spec::Coalgebra(coalgebra_from(serde_json::from_value(value)?)?),
        SpecKind::Algebra => Spec::Algebra(algebra_from(serde_json::from_value(value)?)?),
        SpecKind::Relation => Spec::Relation(relation_from(serde_json::from_value(value)?)?),
        SpecKind::Functor => Spec::Functor(functor_from(serde_json::from_value(value)?)?),
    })
}

pub fn lattice_from(spec: LatticeSpec) -> Result<(FinLattice, Option<MonotoneMap>), SpecError> {
    let lattice = FinLattice::check(&spec.elements, &spec.leq)?;
    let map = match spec.map {
        None => None,
        Some(m) => {
            let pairs: Vec<(String, String)> = m.into_iter().collect();
            Some(MonotoneMap::check_labelled(lattice.clone(), &pairs)?)
        }
    };
    Ok((lattice, map))
}

pub fn signature_from(spec: &SignatureSpec) -> Result<Signature, SpecError> {
    Ok(Signature::new(spec.ops.iter().map(|o| (o.name.clone(), o.arity)))?)
}

pub fn coalgebra_from(spec: CoalgebraSpec) -> Result<Coalgebra, SpecError> {
    let sig = signature_from(&spec.sig)?;
    let rows: Vec<(String, String, Vec<String>)> =
        spec.structure.into_iter().map(|(x, app)| (x, app.op, app.args)).collect();
    Ok(Coalgebra::from_rows(sig, &spec.carrier, &rows)?)
}

pub fn algebra_from(spec: AlgebraSpec) -> Result<Algebra, SpecError> {
    let sig = signature_from(&spec.sig)?;
    let index = |s: &str| {
        spec.carrier.iter().position(|c| c == s).ok_or_else(|| SpecError::Invalid {
            key: "structure",
            message: format!("unknown carrier element `{s}`"),
        })
    };
    let mut entries = Vec::with_capacity(spec.structure.len());
    for e in &spec.structure {
        let op = sig.require(&e.op)?;
        if sig.arity(op) != e.args.len() {
            return Err(SignatureError::ArityMismatch {
                symbol: e.op.clone(),
                expected: sig.arity(op),
                got: e.args.len(),
            }
            .into());
        }
        let args = e.args.iter().map(|a| index(a).map(Tree::Leaf)).collect::<Result<Vec<_>, _>>()?;
        entries.push((Tree::Node(op, args), index(&e.value)?));
    }
    Ok(Algebra::new(sig, spec.carrier, entries)?)
}

pub fn relation_from(spec: RelationSpec) -> Result<FinRel, SpecError> {
    Ok(FinRel::new(FinSet::new(spec.source)?, FinSet::new(spec.target)?, &spec.pairs)?)
}

pub fn functor_from(spec: FunctorSpec) -> Result<RelEndo, SpecError> {
    let set = || -> Result<FinSet, SpecError> {
        let elems = spec.set.clone().ok_or(SpecError::Invalid {
            key: "set",
            message: format!("a {} functor needs its fixed set", spec.kind),
        })?;
        Ok(FinSet::new(elems)?)
    };
    let no_tables = || {
        if spec.object_map.is_empty() && spec.rel_map.is_empty() {
            Ok(())
        } else {
            Err(SpecError::Invalid { key: "kind", message: "only table functors take object_map/rel_map".into() })
        }
    };
    Ok(match spec.kind.as_str() {
        "identity" => {
            no_tables()?;
            if spec.set.is_some() {
                return Err(SpecError::Invalid { key: "set", message: "the identity functor has no fixed set".into() });
            }
            RelEndo::Identity
        }
        "constant" => {
            no_tables()?;
            RelEndo::Constant(set()?)
        }
        "sum" => {
            no_tables()?;
            RelEndo::Sum(set()?)
        }
        "product" => {
            no_tables()?;
            RelEndo::Product(set()?)
        }
        "table" => {
            if spec.set.is_some() {
                return Err(SpecError::Invalid { key: "set", message: "table functors have no fixed set".into() });
            }
            let objects = spec
                .object_map
                .iter()
                .map(|e| Ok((FinSet::new(e.from.clone())?, FinSet::new(e.to.clone())?)))
                .collect::<Result<Vec<_>, SpecError>>()?;
            let rels = spec
                .rel_map
                .iter()
                .map(|e| Ok((relation_from(e.from.clone())?, relation_from(e.to.clone())?)))
                .collect::<Result<Vec<_>, SpecError>>()?;
            RelEndo::Table(FunctorTable::new(objects, rels)?)
        }
        other => {
            return Err(SpecError::Invalid {
                key: "kind",
                message: format!("unknown functor kind `{other}` (expected identity, constant, sum, product or table)"),
            })
        }
    })
}

pub fn emit_lattice(lattice: &FinLattice, map: Option<&MonotoneMap>) -> LatticeSpec {
    LatticeSpec {
        elements: lattice.labels().to_vec(),
        leq: lattice.strict_pairs(),
        map: map.map(|m| {
            lattice
                .elements()
                .map(|x| (lattice.label(x).to_owned(), lattice.label(m.apply(x)).to_owned()))
                .collect()
        }),
    }
}

pub fn emit_signature(sig: &Signature) -> SignatureSpec {
    SignatureSpec { ops: sig.ops().iter().map(|o| OpSpec { name: o.name.clone(), arity: o.arity }).collect() }
}

fn flat_parts(sig: &Signature, carrier: &[String], tree: &Tree) -> (String, Vec<String>) {
    match tree {
        Tree::Node(op, cs) => (
            sig.name(*op).to_owned(),
            cs.iter()
                .map(|c| match c {
                    Tree::Leaf(i) => carrier[*i].clone(),
                    Tree::Node(..) => unreachable!("rank-1 terms have leaf children"),
                })
                .collect(),
        ),
        Tree::Leaf(_) => unreachable!("rank-1 terms are nodes"),
    }
}

pub fn emit_coalgebra(b: &Coalgebra) -> CoalgebraSpec {
    CoalgebraSpec {
        sig: emit_signature(b.sig()),
        carrier: b.carrier().to_vec(),
        structure: b
            .carrier()
            .iter()
            .zip(b.structure())
            .map(|(x, t)| {
                let (op, args) = flat_parts(b.sig(), b.carrier(), t.tree());
                (x.clone(), Application { op, args })
            })
            .collect(),
    }
}

pub fn emit_algebra(a: &Algebra) -> AlgebraSpec {
    AlgebraSpec {
        sig: emit_signature(a.sig()),
        carrier: a.carrier().to_vec(),
        structure: a
            .table()
            .iter()
            .map(|(t, &v)| {
                let (op, args) = flat_parts(a.sig(), a.carrier(), t);
                AlgebraEntry { op, args, value: a.carrier()[v].clone() }
            })
            .collect(),
    }
}

pub fn emit_relation(r: &FinRel) -> RelationSpec {
    RelationSpec {
        source: r.source().elements().to_vec(),
        target: r.target().elements().to_vec(),
        pairs: r.labelled_pairs(),
    }
}

pub fn emit_functor(f: &RelEndo) -> FunctorSpec {
    let simple = |kind: &str, set: Option<&FinSet>| FunctorSpec {
        kind: kind.to_owned(),
        set: set.map(|k| k.elements().to_vec()),
        object_map: Vec::new(),
        rel_map: Vec::new(),
    };
    match f {
        RelEndo::Identity => simple("identity", None),
        RelEndo::Constant(k) => simple("constant", Some(k)),
        RelEndo::Sum(k) => simple("sum", Some(k)),
        RelEndo::Product(k) => simple("product", Some(k)),
        RelEndo::Table(t) => FunctorSpec {
            kind: "table".into(),
            set: None,
            object_map: t
                .objects()
                .iter()
                .map(|(x, y)| ObjectEntry { from: x.elements().to_vec(), to: y.elements().to_vec() })
                .collect(),
            rel_map: t
                .relations()
                .iter()
                .map(|(r, s)| RelEntry { from: emit_relation(r), to: emit_relation(s) })
                .collect(),
        },
    }
}
