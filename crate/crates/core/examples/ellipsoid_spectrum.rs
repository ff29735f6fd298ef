// The iterates of an irrational ellipsoid in action order, with indices,
// degrees and the contact homology ranks they produce.

use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let e = EllipsoidParams::new(QuadExt::one(), "sqrt(2)".parse()?)?;
    let s = ellipsoid_spectrum(&e)?;
    for o in s.orbits() {
        let alpha = o.kind.alpha().map(ToString::to_string).unwrap_or_default();
        println!("{}: action {}, {} r = {} alpha = {alpha}", o.label, o.action, o.kind.tag(), o.kind.r());
    }
    println!("{:<10} {:>4} {:>6}  action", "iterate", "cz", "degree");
    for it in enumerate_iterates(&s, &Cap::Degree(24))? {
        println!("{:<10} {:>4} {:>6}  {} ~ {}", it.name(), it.cz, it.degree, it.action, it.action.to_decimal(8));
    }
    let ranks = hc_ranks(&s, 40);
    let degrees: Vec<i64> = ranks.ranks.keys().copied().collect();
    println!("degrees with rank 1 up to 40: {degrees:?}");
    let o = check_condition_o(&s, &Cap::Action(QuadExt::from_integer(100)))?;
    println!("action order matches degree order for {} iterates: {}", o.checked, o.holds);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
