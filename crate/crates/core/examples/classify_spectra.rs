// Classifying hypothetical orbit sets: ellipsoids pass, other
// configurations fail with a witness.

use reeb_spectrum::prelude::*;

fn orbit(label: &str, action: &str, kind: OrbitKind) -> Result<SimpleOrbit> {
    SimpleOrbit::new(label, action.parse()?, kind)
}

fn show(name: &str, s: &Spectrum) -> Result<()> {
    let c = classify(s, 200)?;
    let json = serde_json::to_string(&c.verdict).expect("verdicts serialize");
    println!("{name}: {}\n  {json}", c.verdict.tag());
    Ok(())
}

fn run() -> Result<()> {
    let real = realize_from_ratio(&"(1+sqrt(5))/2".parse()?)?;
    show("golden ellipsoid", &ellipsoid_spectrum(&real.ellipsoid)?)?;

    show(
        "two odd hyperbolic orbits",
        &Spectrum::new(vec![
            orbit("g1", "1", OrbitKind::OddHyperbolic { r: 1 })?,
            orbit("g2", "sqrt(2)", OrbitKind::OddHyperbolic { r: 2 })?,
        ])?,
    )?;

    show(
        "odd hyperbolic and elliptic",
        &Spectrum::new(vec![
            orbit("g1", "1", OrbitKind::OddHyperbolic { r: 1 })?,
            orbit("g2", "sqrt(2)", OrbitKind::elliptic(2, "sqrt(2)-1".parse()?)?)?,
        ])?,
    )?;

    show(
        "one elliptic orbit",
        &Spectrum::new(vec![orbit("g", "1", OrbitKind::elliptic(1, "sqrt(3)-1".parse()?)?)?])?,
    )?;

    show(
        "right indices, swapped actions",
        &Spectrum::new(vec![
            orbit("a", "sqrt(2)", OrbitKind::elliptic(1, "sqrt(2)/2".parse()?)?)?,
            orbit("b", "1", OrbitKind::elliptic(2, "sqrt(2)-1".parse()?)?)?,
        ])?,
    )?;

    show(
        "low index hyperbolic orbit",
        &Spectrum::new(vec![
            orbit("h", "1", OrbitKind::EvenHyperbolic { r: 1 })?,
            orbit("e", "sqrt(2)", OrbitKind::elliptic(0, "sqrt(2)/2".parse()?)?)?,
        ])?,
    )?;
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
