// The points of mu(b): the colimit of b, F(b), F^2(b), ... computed rank by
// rank.

use midfix::fixcat::instances::{loop_coalgebra, swap_coalgebra};
use midfix::fixcat::{mu_enumerate, mu_eq, successor_orbits, ColimEq, Coalgebra, MuElement};
use midfix::signature::Signature;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // With no generators, mu gives back the naturals z, s(z), ...
    let empty = Coalgebra::empty(Signature::naturals());
    let classes = mu_enumerate(&empty, 4, 1000)?;
    let shown: Vec<String> = classes.elements().iter().map(|e| e.render(&empty)).collect();
    println!("mu(empty) up to rank 4: {shown:?}");
    assert_eq!(classes.len(), 4);

    // A loop p -> s(p) adds one extra point, p itself.
    let b = loop_coalgebra();
    assert_eq!(mu_enumerate(&b, 4, 1000)?.len(), 5);

    // The unfolding of p names the same point as p.
    let eq = ColimEq::compute(&b);
    let p = MuElement::generator(0);
    assert!(mu_eq(&b, &eq, &p, &p.unfold_once(&b)));

    // Following successors merges x and y of the swap; the colimit keeps them apart.
    let swap = swap_coalgebra();
    println!("colimit classes: {:?}", ColimEq::compute(&swap).classes());
    println!("successor orbits: {:?}", successor_orbits(&swap));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
