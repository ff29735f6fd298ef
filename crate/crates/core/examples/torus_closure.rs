// Closures of translation orbits on the torus: rational span, relation
// lattice, subtorus and coset count, plus a numerical density certificate.

use num_rational::BigRational;
use reeb_spectrum::prelude::*;

fn describe(name: &str, t: &TorusTranslation) -> Result<()> {
    let c = closure_description(t)?;
    println!("{name}: span dim {}, relations {:?}", rational_span_dim(t), c.relation_basis);
    println!("  closure = {} translate(s) of a {}-dimensional subtorus, basis {:?}", c.d, c.l, c.subtorus_basis);
    Ok(())
}

fn run() -> Result<()> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let b = Basis::sqrts(&[2]);

    let line = TorusTranslation::from_coeffs(b.clone(), vec![vec![r(0, 1), r(1, 2)], vec![r(0, 1), r(1, 4)]])?;
    describe("(sqrt2/2, sqrt2/4)", &line)?;

    let split = TorusTranslation::from_coeffs(b, vec![vec![r(-1, 2), r(1, 2)], vec![r(0, 1), r(1, 2)]])?;
    describe("(sqrt2/2 - 1/2, sqrt2/2)", &split)?;

    let periodic = TorusTranslation::from_coeffs(Basis::new(vec![]), vec![vec![r(1, 3)], vec![r(1, 2)]])?;
    describe("(1/3, 1/2)", &periodic)?;

    let b = Basis::sqrts(&[2, 3]);
    let dense = TorusTranslation::new(vec![
        LinComb::from_ints(b.clone(), &[-1, 1, 0])?,
        LinComb::from_ints(b, &[-1, 0, 1])?,
    ])?;
    describe("(sqrt2 - 1, sqrt3 - 1)", &dense)?;
    let rep = density_check(&dense, 0.02, 100_000)?;
    println!(
        "  {} net points within {:.4} of the first {} orbit points: dense = {}",
        rep.net_points, rep.worst_gap, rep.orbit_points, rep.dense
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
