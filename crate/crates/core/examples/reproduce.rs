// Runs the seeded reproducibility suite and prints one line per check.

fn run() -> reeb_spectrum::Result<()> {
    let outcomes = reeb_spectrum::acceptance::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !(o.passed && o.within_budget)).count();
    if failed > 0 {
        return Err(reeb_spectrum::Error::IdentityViolation(format!("{failed} checks failed")));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
