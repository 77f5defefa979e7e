// A monotone map on [0, 1] with five fixpoints. Each pre-fixed start climbs
// to the nearest fixpoint above it.

use midfix::interval::figure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = figure();
    let fixpoints = f.locate_fixpoints();
    println!("fixpoints: {fixpoints:.6?}");
    assert_eq!(fixpoints.len(), 5);

    for x in [0.0, 0.1, 0.3, 0.55, 1.0] {
        if f.is_pre_fixed(x) {
            let c = f.mu(x)?;
            println!("mu({x}) = {:.9} after {} steps", c.value, c.iterations);
        }
        if f.is_post_fixed(x) {
            let c = f.nu(x)?;
            println!("nu({x}) = {:.9} after {} steps", c.value, c.iterations);
        }
    }
    assert_eq!(f.mu(0.0)?.value, 0.0);
    assert_eq!(f.nu(1.0)?.value, 1.0);
    assert!((f.mu(0.1)?.value - 0.25).abs() < 1e-6);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
