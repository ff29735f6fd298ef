// Exact arithmetic in real quadratic fields: parsing, field operations,
// order, floors and periodic continued fractions.
//
// ```text
// cargo run --example quadratic_field
// ```

use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let phi: QuadExt = "(1+sqrt(5))/2".parse()?;
    let psi = phi.recip()?;
    println!("phi = {phi} ~ {}", phi.to_decimal(20));
    println!("1/phi = {psi}, phi - 1/phi = {}", phi.checked_sub(&psi)?);

    // phi^2 = phi + 1 holds exactly
    let sq = phi.checked_mul(&phi)?;
    assert_eq!(sq, phi.add_int(1));
    println!("phi^2 = {sq}");

    // floors of large multiples never round
    for k in [10u64, 1_000, 1_000_000_000_000] {
        println!("[{k} * phi] = {}", phi.scale_int(k).floor());
    }

    let cf = continued_fraction(&"sqrt(7)".parse()?, 12)?;
    let q: Vec<String> = cf.quotients.iter().map(|a| a.to_string()).collect();
    println!("sqrt(7) = [{}; {}]", q[0], q[1..].join(", "));
    let (p, q) = convergents(&cf.quotients).pop().expect("nonempty");
    println!("best convergent shown: {p}/{q}");

    // different square roots never mix
    let mixed = QuadExt::sqrt(2).checked_add(&QuadExt::sqrt(3));
    println!("sqrt(2) + sqrt(3): {}", mixed.unwrap_err());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
