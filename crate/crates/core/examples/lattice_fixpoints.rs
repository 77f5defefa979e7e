// Middle fixpoints on a five-element chain, and the Galois connection
// between them.

use midfix::lattice::{FinLattice, MonotoneMap};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chain = FinLattice::chain(5);
    let f = MonotoneMap::check(chain, vec![0, 2, 2, 2, 4])?;

    let classes = f.classify();
    println!("pre-fixed  {:?}", classes.pre_fixed);
    println!("post-fixed {:?}", classes.post_fixed);
    println!("fixed      {:?}", classes.fixed);

    // 1 climbs to the fixpoint 2; 3 falls to it.
    assert_eq!(f.mu(1)?, 2);
    assert_eq!(f.nu(3)?, 2);

    let report = f.galois_check()?;
    println!("mu(x) <= y <=> x <= nu(y) on {} pairs: {}", report.pairs_checked, report.galois_ok);
    assert!(report.galois_ok);

    // A map that is not monotone is rejected with a witness.
    let err = MonotoneMap::check(FinLattice::chain(3), vec![2, 1, 0]).unwrap_err();
    println!("rejected: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
