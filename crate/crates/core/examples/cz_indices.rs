// Conley-Zehnder indices and degrees of iterated orbits, which iterates are
// bad, and superadditivity of the degree.

use reeb_spectrum::prelude::*;

fn run() -> Result<()> {
    let orbits = [
        SimpleOrbit::new("e", QuadExt::one(), OrbitKind::elliptic(1, "sqrt(2)-1".parse()?)?)?,
        SimpleOrbit::new("h+", QuadExt::one(), OrbitKind::EvenHyperbolic { r: 2 })?,
        SimpleOrbit::new("h-", QuadExt::one(), OrbitKind::OddHyperbolic { r: 1 })?,
    ];
    println!("{:<4} {:>3} {:>4} {:>6} {:>5}", "orbit", "k", "cz", "degree", "good");
    for o in &orbits {
        for k in 1..=4 {
            let it = o.iterate(k);
            println!("{:<5} {:>3} {:>4} {:>6} {:>5}", o.label, k, it.cz, it.degree, it.good);
        }
    }

    let s = check_superadditivity(&orbits[0], &[3, 2, 2])?;
    println!("degree(e^7) = {} >= {} = degree(e^3) + 2 degree(e^2)", s.lhs, s.rhs);

    let c = is_dynamically_convex(&orbits, 50);
    println!("dynamically convex up to k = 50: {}", c.convex);
    let low = SimpleOrbit::new("l", QuadExt::one(), OrbitKind::EvenHyperbolic { r: 1 })?;
    if let Some(w) = is_dynamically_convex(&[low], 50).witness {
        println!("witness against convexity: {}^{} with cz {}", w.label, w.k, w.cz);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
