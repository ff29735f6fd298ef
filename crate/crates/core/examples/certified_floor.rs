// Floors of rational combinations of several square roots, decided by
// nested dyadic enclosures that refine until the floor is forced.

use num_rational::BigRational;
use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let basis = Basis::sqrts(&[2, 3, 5]);
    let x = LinComb::from_ints(basis.clone(), &[0, 1, 1, 1])?;
    println!("sqrt2 + sqrt3 + sqrt5 ~ {:.15}", x.approx_f64());
    println!("floor = {}", x.floor(DEFAULT_MAX_BITS)?);

    // a near miss: 1000 * (sqrt2 + sqrt3) - 3146 is about 0.26
    let near = LinComb::from_ints(basis.clone(), &[-3146, 1000, 1000, 0])?;
    let (lo, hi) = near.enclosure(64);
    println!("enclosure at 64 bits: [{:.6}, {:.6}]", to_f64(&lo), to_f64(&hi));
    println!("floor = {}", near.floor(DEFAULT_MAX_BITS)?);

    // an exact integer: the floor is found without refining forever
    let integral = LinComb::from_ints(basis, &[7, 0, 0, 0])?;
    println!("floor(7) = {}", integral.floor(DEFAULT_MAX_BITS)?);
    Ok(())
}

fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
