// Jump sequences of irrationals in (0, 1): nesting, affine relations,
// common jumps and integer factors.

use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let xi1: QuadExt = "sqrt(2)/2".parse()?;
    let xi2 = xi1.checked_sub(&QuadExt::ratio(1, 2)?)?;
    println!("j(xi1) = {:?}", jump_sequence(&xi1, 12)?.terms);
    println!("j(xi2) = {:?}", jump_sequence(&xi2, 12)?.terms);

    let sub = is_jump_subsequence(&xi2, &xi1, 10_000)?;
    println!("j(xi2) inside j(xi1) to 10^4: {}", sub.holds);
    if let Some(rel) = find_affine_relation(&xi1, &xi2)? {
        println!("xi2 = ({}) xi1 + ({})", rel.p, rel.q);
    }

    let xi3: QuadExt = "sqrt(2)/3".parse()?;
    println!("first common jump of xi1 and sqrt(2)/3: {:?}", find_common_jump(&xi1, &xi3, 1000)?);

    let small: QuadExt = "(sqrt(5)-1)/8".parse()?;
    let big: QuadExt = "(sqrt(5)-1)/4".parse()?;
    println!("factor of {big} over {small}: {:?}", kotschick_factor(&big, &small, 500)?);
    let d = quasimorphism_defect(&big, &small, 500)?;
    println!("defect of the index map: {} (a priori bound {})", d.defect, d.bound);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
