// From an action ratio to the rotation data of the two orbits and the
// ellipsoid that realizes them.

use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    for rho in ["sqrt(2)", "(1+sqrt(5))/2", "3+sqrt(3)/7", "(5*sqrt(13)+1)/4"] {
        let r = realize_from_ratio(&rho.parse()?)?;
        println!(
            "rho = {} ~ {}: alpha1 = {}, alpha2 = {}, r1 = {}, r2 = {}, E({}, {})",
            r.rho,
            r.rho.to_decimal(6),
            r.alpha1,
            r.alpha2,
            r.r1,
            r.r2,
            r.ellipsoid.a1,
            r.ellipsoid.a2
        );
        // jumps of alpha1 and of A1/A2 coincide
        let ratio = r.ellipsoid.a1.checked_div(&r.ellipsoid.a2)?;
        assert_eq!(jump_sequence(&r.alpha1, 200)?.terms, jump_sequence(&ratio, 200)?.terms);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
