// First return times of an irrational rotation of a circle of length 3 to
// shrinking arcs around 5/4.

use num_rational::BigRational;
use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let step: QuadExt = "1+sqrt(2)".parse()?;
    let target = QuadExt::ratio(5, 4)?;
    for exp in 1..=9u32 {
        let tol = BigRational::new(1.into(), 10u64.pow(exp).into());
        match rotation_hit(3, &step, &target, &tol, 1_000_000_000) {
            Ok(hit) => println!(
                "tol 1e-{exp}: k = {:>10}, distance ~ {:.3e}, certified {}",
                hit.k,
                hit.distance.to_f64(),
                hit.certified
            ),
            Err(e) => println!("tol 1e-{exp}: {e}"),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
