// Reading the JSON input formats, writing them back, and rendering DOT.

use midfix::cli::{run, Command, RunConfig};
use midfix::dot::{emit_dot, lattice_diagram, mu_chain_diagram};
use midfix::spec::{parse_spec, Spec};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(format!("{DATA}/chain5.json"))?;
    let spec = parse_spec(&text)?;
    assert_eq!(parse_spec(&spec.emit())?, spec);
    if let Spec::Lattice { lattice, .. } = &spec {
        print!("{}", emit_dot(&lattice_diagram(lattice)));
    }

    let loop_text = std::fs::read_to_string(format!("{DATA}/loop.json"))?;
    if let Spec::Coalgebra(b) = parse_spec(&loop_text)? {
        print!("{}", emit_dot(&mu_chain_diagram(b.sig(), b.len(), 3)));
    }

    let bad = r#"{"sig":{"ops":[{"name":"s","arity":1}]},"carrier":["p"],"structure":{"p":{"op":"t","args":["p"]}}}"#;
    println!("rejected: {}", parse_spec(bad).unwrap_err());

    let parity = std::fs::read_to_string(format!("{DATA}/parity.json"))?;
    let out = run(&RunConfig::new(Command::Adjunction).with_input("loop", loop_text).with_input("parity", parity));
    println!("adjunction exit status {}", out.code);
    assert_eq!(out.code, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
