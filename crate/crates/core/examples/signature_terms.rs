// Signatures, the sets F^n(X) they generate, and unfolding along a
// coalgebra.

use midfix::fixcat::instances::{binary_trees, chain_coalgebra};
use midfix::signature::{enumerate_rank, f_enumerate, Signature, Term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let nat = Signature::naturals();
    let gens = ["x".to_owned(), "y".to_owned()];
    let one_step: Vec<String> = f_enumerate(&nat, 2).iter().map(|t| t.render(&nat, &gens)).collect();
    println!("F({{x, y}}) = {one_step:?}");

    let trees = binary_trees();
    println!("|F^k(1)| for binary trees: {:?}", trees.level_sizes(1, 5));
    let rank2 = enumerate_rank(&trees, 1, 2, 1000)?;
    assert_eq!(rank2.len(), 5);

    // Asking for too much is an error, not a truncation.
    let err = enumerate_rank(&trees, 1, 5, 100_000).unwrap_err();
    println!("{err}");

    let b = chain_coalgebra();
    let x = Term::generator(0);
    for k in 0..4 {
        println!("x unfolded {k} times: {}", b.render(&x.unfold(b.structure(), k)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
