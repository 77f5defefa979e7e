//! Graphviz rendering of chain diagrams and Hasse diagrams.

use std::fmt::Write;

use crate::dagger::{Direction, RelChain};
use crate::lattice::FinLattice;
use crate::signature::Signature;

/// A labelled directed graph with nodes in output order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

fn power(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_owned(),
        k => format!("{base}^{k}"),
    }
}

/// `Fᵏ(obj)`, written `obj` at stage 0.
fn stage(obj: &str, k: usize) -> String {
    if k == 0 {
        obj.to_owned()
    } else {
        format!("{}({obj})", power("F", k))
    }
}

/// `B → F(B) → F²(B) → …` with `stages` objects, labelled by cardinality.
pub fn mu_chain_diagram(sig: &Signature, carrier: usize, stages: usize) -> Diagram {
    let sizes = sig.level_sizes(carrier, stages.saturating_sub(1));
    let nodes = sizes
        .iter()
        .take(stages)
        .enumerate()
        .map(|(k, n)| format!("{0}\\n|{0}| = {n}", stage("B", k)))
        .collect::<Vec<_>>();
    let edges = (1..nodes.len()).map(|k| (k - 1, k, format!("{}b", power("F", k - 1)))).collect();
    Diagram { name: "mu_chain".into(), nodes, edges }
}

/// `A ← F(A) ← F²(A) ← …` with `stages` objects.
pub fn nu_chain_diagram(sig: &Signature, carrier: usize, stages: usize) -> Diagram {
    let sizes = sig.level_sizes(carrier, stages.saturating_sub(1));
    let nodes = sizes
        .iter()
        .take(stages)
        .enumerate()
        .map(|(k, n)| format!("{0}\\n|{0}| = {n}", stage("A", k)))
        .collect::<Vec<_>>();
    let edges = (1..nodes.len()).map(|k| (k, k - 1, format!("{}a", power("F", k - 1)))).collect();
    Diagram { name: "nu_chain".into(), nodes, edges }
}

/// A materialized chain of relations; `connector` names the first arrow.
pub fn rel_chain_diagram(chain: &RelChain, connector: &str) -> Diagram {
    let nodes = chain
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| format!("{0}\\n|{0}| = {1}", stage("X", k), o.len()))
        .collect();
    let edges = (0..chain.connectors.len())
        .map(|k| {
            let label = format!("{}{connector}", power("F", k));
            match chain.direction {
                Direction::Colimit => (k, k + 1, label),
                Direction::Limit => (k + 1, k, label),
            }
        })
        .collect();
    Diagram { name: "rel_chain".into(), nodes, edges }
}

/// Hasse diagram: one node per element, one edge per covering pair.
pub fn lattice_diagram(lattice: &FinLattice) -> Diagram {
    Diagram {
        name: "lattice".into(),
        nodes: lattice.labels().to_vec(),
        edges: lattice.covering_pairs().into_iter().map(|(a, b)| (a, b, String::new())).collect(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace("\\\\n", "\\n"))
}

pub fn emit_dot(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", d.name).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (i, label) in d.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(label)).unwrap();
    }
    for (from, to, label) in &d.edges {
        if label.is_empty() {
            writeln!(out, "  n{from} -> n{to};").unwrap();
        } else {
            writeln!(out, "  n{from} -> n{to} [label={}];", quote(label)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
