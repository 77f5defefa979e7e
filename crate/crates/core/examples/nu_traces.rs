// Finite stages of nu(a) and infinite traces into the terminal coalgebra.

use midfix::fixcat::instances::{loop_coalgebra, parity_algebra, spine_coalgebra, streams};
use midfix::fixcat::{infinite_trace, nu_approx, terminal_coalgebra_approx};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = parity_algebra();
    let approx = nu_approx(&a, 4, 10_000)?;
    println!("|F^k(A)| for parity: {:?}", approx.level_sizes());

    let words = terminal_coalgebra_approx(&streams(), 6, 10_000)?;
    println!("|F^k(1)| for streams: {:?}", words.level_sizes());
    assert_eq!(words.level_sizes()[6], 64);

    let t = infinite_trace(&loop_coalgebra(), 0);
    for k in 0..4 {
        println!("loop trace, depth {k}: {}", t.render(k));
    }
    assert!(t.compatibility_violations(8).is_empty());

    let spine = infinite_trace(&spine_coalgebra(), 0);
    println!("spine trace, depth 3: {}", spine.render(3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
