// The correspondence between algebra maps mu(b) -> a, coalgebra maps
// b -> nu(a), and coalgebra-to-algebra maps b -> a.

use midfix::fixcat::instances::{chain_coalgebra, loop_coalgebra, parity_algebra};
use midfix::fixcat::random::{InstanceGen, InstanceShape};
use midfix::fixcat::{adjunction_check, enumerate_coalg_to_alg, Bounds};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bounds = Bounds::default();
    let a = parity_algebra();

    // x -> s(y), y -> z has exactly one map into parity: y = 0, x = 1.
    let b = chain_coalgebra();
    let homs = enumerate_coalg_to_alg(&b, &a, bounds.cap)?;
    println!("homs chain -> parity: {:?}", homs.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>());
    let report = adjunction_check(&b, &a, bounds)?;
    for c in &report.checks {
        println!("{c}");
    }
    assert!(report.passed());

    // An odd loop has no parity, so every hom-set in the bijection is empty.
    let report = adjunction_check(&loop_coalgebra(), &a, bounds)?;
    assert!(report.homs.is_empty() && report.passed());

    let mut gen = InstanceGen::new(11, InstanceShape::default());
    let mut passed = 0;
    for _ in 0..10 {
        let sig = gen.signature();
        let (b, a) = (gen.coalgebra(&sig), gen.algebra(&sig));
        if adjunction_check(&b, &a, Bounds { cap: 20_000, ..bounds })?.passed() {
            passed += 1;
        }
    }
    println!("{passed} of 10 random instances pass");
    assert_eq!(passed, 10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
