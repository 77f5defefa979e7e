// Relations with converse as dagger: the limit chain of c† is the converse
// of the colimit chain of c.

use midfix::dagger::{
    coincidence_check, dagger_laws_exhaustive, rel_compose, rel_dagger, FinRel, FinSet, RelEndo,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = FinRel::new(FinSet::new(["1"])?, FinSet::new(["a"])?, &[("1", "a")])?;
    let s = FinRel::new(FinSet::new(["a"])?, FinSet::new(["alpha", "beta"])?, &[("a", "alpha"), ("a", "beta")])?;
    println!("r ; s = {}", rel_compose(&r, &s)?);
    println!("(r ; s)† = {}", rel_dagger(&rel_compose(&r, &s)?));

    let laws = dagger_laws_exhaustive(2);
    println!("dagger laws on {} relations: {}", laws.relations, laws.passed());

    let k = FinSet::new(["k0", "k1"])?;
    let c = FinRel::new(FinSet::range(3), k.clone(), &[("0", "k0"), ("2", "k0")])?;
    let report = coincidence_check(&RelEndo::Constant(k.clone()), &c, 8, 100)?;
    for chk in &report.checks {
        println!("{chk}");
    }
    assert_eq!(report.coincidence_object, Some(k));

    // X -> X + {*} never becomes an isomorphism; only the duality is certified.
    let f = RelEndo::Sum(FinSet::new(["*"])?);
    let x = FinSet::range(2);
    let c = FinRel::new(x.clone(), f.on_object(&x)?, &[("0", "inl:1"), ("1", "inr:*")])?;
    let report = coincidence_check(&f, &c, 8, 100)?;
    println!("sum functor: {:?}", report.mu_stabilization);
    assert!(report.passed() && report.coincidence_object.is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
