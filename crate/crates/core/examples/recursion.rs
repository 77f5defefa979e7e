// Every coalgebra has one map into the one-element algebra; a well-founded
// coalgebra has exactly one map into every algebra.

use midfix::fixcat::instances::{chain_coalgebra, parity_algebra, swap_coalgebra};
use midfix::fixcat::{corecursive_check, wellfounded_recursive_check, Algebra};
use midfix::signature::Signature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let coalgebras = [chain_coalgebra(), swap_coalgebra()];
    let r = corecursive_check(&coalgebras, 1000)?;
    println!("homs into 1: {:?}", r.counts);

    let algebras = [parity_algebra(), Algebra::terminal(Signature::naturals())];
    let wf = wellfounded_recursive_check(&chain_coalgebra(), &algebras, 1000)?;
    println!("chain is well-founded: {}, hom counts {:?}", wf.well_founded, wf.counts);
    assert_eq!(wf.counts, vec![1, 1]);

    // The swap has two maps into parity (x, y) = (0, 1) or (1, 0): not recursive.
    let cyc = wellfounded_recursive_check(&swap_coalgebra(), &algebras, 1000)?;
    println!("swap is well-founded: {}, hom counts {:?}", cyc.well_founded, cyc.counts);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
