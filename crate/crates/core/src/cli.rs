//! The `reeb` command-line front end.
//!
//! Every subcommand builds a [`Report`] and renders it once. Exit codes:
//! `0` success or a consistent verdict, `1` an inconsistent verdict or a
//! violated property, `2` a usage or input error, `3` a search that ran out
//! of precision or horizon.

use std::ffi::OsString;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::acceptance;
use crate::error::Error;
use crate::exactreal::{parse_rational, rational_text, LinCombJson, QuadExt, DEFAULT_MAX_BITS};
use crate::jumps::{
    find_affine_relation, find_common_jump, is_jump_subsequence, jump_sequence, kotschick_factor,
    quasimorphism_defect,
};
use crate::orbit::{check_superadditivity, OrbitKind, SimpleOrbit};
use crate::report::{to_value, Format, Report, Table};
use crate::spectrum::{
    classify_with, ellipsoid_spectrum, enumerate_iterates, find_degree_collision, hc_ranks,
    realize_from_ratio, Cap, ClassifyOptions, EllipsoidParams, Spectrum, DEFAULT_DEGREE_CAP,
};
use crate::torus::{
    closure_description, density_check, orbit_points, rational_span_dim, relation_lattice,
    rotation_hit, TorusJson, TorusTranslation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "reeb",
    version,
    about = "Exact Reeb orbit spectra, jump sequences and torus translations"
)]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output encoding: json, csv or table.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Decimal digits shown next to exact values in table output.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    /// Include wall-clock timing in the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    timing: bool,
    /// Largest enclosure precision for certified floors of irrational combinations.
    #[arg(long, global = true, env = "REEB_PRECISION_BITS", default_value_t = DEFAULT_MAX_BITS,
          value_parser = clap::value_parser!(u32).range(64..))]
    precision_bits: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conley-Zehnder indices and degrees of the iterates of one orbit.
    Cz(CzArgs),
    /// Jump sequences and the relations between them.
    Jumps {
        #[command(subcommand)]
        mode: JumpsCmd,
    },
    /// Orbit closures of translations of the torus.
    Torus {
        #[command(subcommand)]
        mode: TorusCmd,
    },
    /// Iterate table of an ellipsoid or of any spectrum file.
    Ellipsoid(EllipsoidArgs),
    /// Rotation data and ellipsoid realizing an action ratio.
    Realize {
        #[arg(long, value_parser = parse_scalar)]
        ratio: QuadExt,
    },
    /// Decide whether a spectrum is consistent with a vanishing differential.
    Classify(ClassifyArgs),
    /// Search a spectrum for two good iterates of equal degree.
    Collide(CollideArgs),
    /// Run the reproducibility suite.
    Verify {
        /// Only these check ids (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    #[value(alias = "e")]
    Elliptic,
    #[value(alias = "even_hyperbolic", alias = "h+")]
    EvenHyperbolic,
    #[value(alias = "odd_hyperbolic", alias = "h-")]
    OddHyperbolic,
}

#[derive(Args, Debug)]
struct CzArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    /// Rotation number in (0, 1); elliptic orbits only.
    #[arg(long, value_parser = parse_scalar)]
    alpha: Option<QuadExt>,
    /// A single multiplicity.
    #[arg(long, conflicts_with = "k_max", value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,
    /// All multiplicities 1..=k_max.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: Option<u64>,
    #[arg(long, value_parser = parse_scalar, default_value = "1")]
    action: QuadExt,
    #[arg(long, default_value = "g")]
    label: String,
    /// Also check degree superadditivity for this partition, e.g. 3,2,2.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<u64>,
}

#[derive(Subcommand, Debug)]
enum JumpsCmd {
    /// The first n jumps of xi.
    Sequence {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi: QuadExt,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Whether every jump of xi2 is a jump of xi1, to a horizon.
    Subsequence {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi1: QuadExt,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi2: QuadExt,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
    },
    /// Exact rational relation xi2 = p xi1 + q.
    Relation {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi1: QuadExt,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi2: QuadExt,
    },
    /// Smallest common jump of xi2 and xi3 up to a bound.
    Common {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi2: QuadExt,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi3: QuadExt,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Integer factor xi1 = k xi2 and defect of the index map.
    Factor {
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi1: QuadExt,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        xi2: QuadExt,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: u64,
    },
}

#[derive(Args, Debug)]
struct TorusInput {
    /// Translation JSON file (`-` for standard input).
    #[arg(long, conflicts_with = "json", required_unless_present = "json")]
    input: Option<PathBuf>,
    /// Translation JSON given inline.
    #[arg(long)]
    json: Option<String>,
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum TorusCmd {
    /// Dimension of span_Q(xi_1, ..., xi_n, 1).
    Span(TorusInput),
    /// Integer relations m . (xi, 1) = 0 in Hermite form.
    Lattice(TorusInput),
    /// Closure as d translates of an l-dimensional subtorus.
    Closure(TorusInput),
    /// Numerical density certificate of the first M orbit points.
    Density {
        #[command(flatten)]
        input: TorusInput,
        #[arg(long, default_value_t = 0.02)]
        eps: f64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Orbit points tau^0(0), ..., tau^M(0).
    Points {
        #[command(flatten)]
        input: TorusInput,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// First k with dist(k * step, target) < tol on R / vZ.
    Rotation {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        v: u64,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        step: QuadExt,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        target: QuadExt,
        #[arg(long, value_parser = parse_tol, default_value = "1/1000000")]
        tol: BigRational,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
    },
}

#[derive(Args, Debug)]
struct EllipsoidArgs {
    #[arg(long, value_parser = parse_scalar, default_value = "1")]
    a1: QuadExt,
    #[arg(long, value_parser = parse_scalar, conflicts_with_all = ["ratio", "spectrum"])]
    a2: Option<QuadExt>,
    /// a2 / a1.
    #[arg(long, value_parser = parse_scalar, conflicts_with = "spectrum")]
    ratio: Option<QuadExt>,
    /// Enumerate this spectrum file instead (`-` for standard input).
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, conflicts_with = "action_cap",
          allow_negative_numbers = true)]
    degree_cap: i64,
    #[arg(long, value_parser = parse_scalar)]
    action_cap: Option<QuadExt>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Spectrum JSON (`-` for standard input).
    #[arg(long)]
    spectrum: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(i64).range(4..))]
    degree_cap: i64,
    /// Skip the dynamical convexity check.
    #[arg(long)]
    no_convexity: bool,
}

#[derive(Args, Debug)]
struct CollideArgs {
    #[arg(long)]
    spectrum: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(i64).range(1..))]
    degree_cap: i64,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_scalar(s: &str) -> Result<QuadExt, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tol(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failure of a subcommand, already classified by exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExhausted { .. } | Error::NotFound { .. } => EXIT_EXHAUSTED,
            Error::SubsequenceViolation { .. }
            | Error::FactorContradiction { .. }
            | Error::IdentityViolation(_)
            | Error::ActionTie { .. } => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

type Outcome = Result<(Report, i32), Failure>;

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let echo = echo_command(&argv);
    let started = Instant::now();
    let result = dispatch(cli.command, &cli.out, echo);
    match result {
        Ok((mut report, code)) => {
            if cli.out.timing {
                report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
            }
            let text = report.render(cli.out.format);
            match emit(&text, cli.out.output.as_deref()) {
                Ok(()) => code,
                Err(f) => {
                    eprintln!("reeb: {}", f.message);
                    f.code
                }
            }
        }
        Err(f) => {
            eprintln!("reeb: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| input_error(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write as _;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| input_error(format!("cannot write to standard output: {e}")))
        }
    }
}

/// The arguments after the program name, quoted where a shell would need it.
fn echo_command(argv: &[OsString]) -> String {
    argv.iter()
        .skip(1)
        .map(|a| {
            let s = a.to_string_lossy();
            let plain = !s.is_empty()
                && s.chars()
                    .all(|c| c.is_ascii_alphanumeric() || "-_./=,:+".contains(c));
            if plain {
                s.into_owned()
            } else {
                format!("'{}'", s.replace('\'', r"'\''"))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(cmd: Command, out: &OutputArgs, echo: String) -> Outcome {
    match cmd {
        Command::Cz(a) => cz(a, out, echo),
        Command::Jumps { mode } => jumps(mode, echo),
        Command::Torus { mode } => torus(mode, out, echo),
        Command::Ellipsoid(a) => ellipsoid(a, out, echo),
        Command::Realize { ratio } => realize(&ratio, echo),
        Command::Classify(a) => classify_cmd(a, echo),
        Command::Collide(a) => collide(a, echo),
        Command::Verify { only } => verify(&only, out, echo),
    }
}

fn decimal_column(table: &mut Table, out: &OutputArgs) -> bool {
    let show = out.format == Format::Table;
    if show {
        table.columns.push("approx".into());
    }
    show
}

fn cz(a: CzArgs, out: &OutputArgs, echo: String) -> Outcome {
    let kind = match (a.kind, a.alpha) {
        (KindArg::Elliptic, Some(alpha)) => OrbitKind::elliptic(a.r, alpha)?,
        (KindArg::Elliptic, None) => return Err(input_error("elliptic orbits need --alpha".into())),
        (_, Some(alpha)) => {
            return Err(input_error(format!(
                "--alpha {alpha} given for a hyperbolic orbit"
            )))
        }
        (KindArg::EvenHyperbolic, None) => OrbitKind::EvenHyperbolic { r: a.r },
        (KindArg::OddHyperbolic, None) => OrbitKind::OddHyperbolic { r: a.r },
    };
    let orbit = SimpleOrbit::new(a.label, a.action, kind)?;
    let ks: Vec<u64> = match (a.k, a.k_max) {
        (Some(k), _) => vec![k],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => return Err(input_error("give --k or --k-max".into())),
    };
    let iterates: Vec<_> = ks.iter().map(|&k| orbit.iterate(k)).collect();
    let mut table = Table::new(["k", "cz", "degree", "good", "action"]);
    let approx = decimal_column(&mut table, out);
    for it in &iterates {
        let mut row = vec![
            it.k.to_string(),
            it.cz.to_string(),
            it.degree.to_string(),
            it.good.to_string(),
            it.action.to_string(),
        ];
        if approx {
            row.push(it.action.to_decimal(out.digits));
        }
        table.push(row);
    }
    let mut results = json!({ "orbit": to_value(&orbit), "iterates": to_value(&iterates) });
    let mut code = EXIT_OK;
    if !a.parts.is_empty() {
        let s = check_superadditivity(&orbit, &a.parts)?;
        if !s.holds {
            code = EXIT_VIOLATION;
        }
        results["superadditivity"] = to_value(&s);
    }
    let inputs = json!({ "orbit": to_value(&orbit), "k": ks.first(), "k_max": a.k_max, "parts": a.parts });
    let horizons = json!({ "k_max": ks.last() });
    Ok((Report::new(echo, inputs, results, horizons).with_table(table), code))
}

fn jumps(mode: JumpsCmd, echo: String) -> Outcome {
    let s = |x: &QuadExt| Value::String(x.to_string());
    match mode {
        JumpsCmd::Sequence { xi, n } => {
            let seq = jump_sequence(&xi, n)?;
            let mut table = Table::new(["n", "j_n"]);
            for (i, t) in seq.terms.iter().enumerate() {
                table.push([i as u64 + 1, *t]);
            }
            let report = Report::new(echo, json!({ "xi": s(&xi) }), to_value(&seq), json!({ "n": n }));
            Ok((report.with_table(table), EXIT_OK))
        }
        JumpsCmd::Subsequence { xi1, xi2, horizon } => {
            let check = is_jump_subsequence(&xi2, &xi1, horizon)?;
            let code = if check.holds { EXIT_OK } else { EXIT_VIOLATION };
            let report = Report::new(
                echo,
                json!({ "xi1": s(&xi1), "xi2": s(&xi2) }),
                to_value(&check),
                json!({ "horizon": horizon }),
            );
            Ok((report, code))
        }
        JumpsCmd::Relation { xi1, xi2 } => {
            let rel = find_affine_relation(&xi1, &xi2)?;
            let report = Report::new(
                echo,
                json!({ "xi1": s(&xi1), "xi2": s(&xi2) }),
                json!({ "relation": to_value(&rel) }),
                json!({}),
            );
            Ok((report, EXIT_OK))
        }
        JumpsCmd::Common { xi2, xi3, bound } => {
            let k = find_common_jump(&xi2, &xi3, bound)?.ok_or(Error::NotFound { k_max: bound })?;
            let report = Report::new(
                echo,
                json!({ "xi2": s(&xi2), "xi3": s(&xi3) }),
                json!({ "k": k }),
                json!({ "bound": bound }),
            );
            Ok((report, EXIT_OK))
        }
        JumpsCmd::Factor { xi1, xi2, horizon } => {
            let factor = kotschick_factor(&xi1, &xi2, horizon)?;
            let defect = match quasimorphism_defect(&xi1, &xi2, horizon) {
                Ok(d) => Some(d),
                Err(Error::SubsequenceViolation { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let report = Report::new(
                echo,
                json!({ "xi1": s(&xi1), "xi2": s(&xi2) }),
                json!({ "factor": factor, "defect": to_value(&defect) }),
                json!({ "horizon": horizon }),
            );
            Ok((report, EXIT_OK))
        }
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
    }
}

fn load_translation(input: &TorusInput, max_bits: u32) -> Result<(TorusTranslation, Value), Failure> {
    let text = match (&input.input, &input.json) {
        (Some(p), _) => read_source(p)?,
        (None, Some(j)) => j.clone(),
        (None, None) => return Err(input_error("give --input or --json".into())),
    };
    let raw: TorusJson =
        serde_json::from_str(&text).map_err(|e| input_error(format!("invalid translation JSON: {e}")))?;
    let t = raw.into_translation(max_bits)?;
    let echo = json!({
        "basis": t.basis().names(),
        "xi": t.xi().iter().map(|x| LinCombJson::from(x).coeffs).collect::<Vec<_>>(),
    });
    Ok((t, echo))
}

fn torus(mode: TorusCmd, out: &OutputArgs, echo: String) -> Outcome {
    let bits = out.precision_bits;
    let precision = json!({ "precision_bits": bits });
    match mode {
        TorusCmd::Span(input) => {
            let (t, inputs) = load_translation(&input, bits)?;
            let results = json!({ "dim": rational_span_dim(&t), "n": t.n() });
            Ok((Report::new(echo, inputs, results, precision), EXIT_OK))
        }
        TorusCmd::Lattice(input) => {
            let (t, inputs) = load_translation(&input, bits)?;
            let rel = relation_lattice(&t)?;
            let mut table = Table::new((0..=t.n()).map(|i| format!("m{i}")));
            for row in &rel {
                table.push(row);
            }
            let results = json!({ "relations": rel });
            Ok((Report::new(echo, inputs, results, precision).with_table(table), EXIT_OK))
        }
        TorusCmd::Closure(input) => {
            let (t, inputs) = load_translation(&input, bits)?;
            let c = closure_description(&t)?;
            Ok((Report::new(echo, inputs, c.to_json(), precision), EXIT_OK))
        }
        TorusCmd::Density { input, eps, m } => {
            let (t, inputs) = load_translation(&input, bits)?;
            let rep = density_check(&t, eps, m)?;
            let code = if rep.dense { EXIT_OK } else { EXIT_VIOLATION };
            let horizons = json!({ "precision_bits": bits, "m": m, "eps": eps });
            Ok((Report::new(echo, inputs, to_value(&rep), horizons), code))
        }
        TorusCmd::Points { input, m } => {
            let (t, inputs) = load_translation(&input, bits)?;
            let pts = orbit_points(&t, m)?;
            let mut table = Table::new(std::iter::once("j".to_string()).chain((1..=t.n()).map(|i| format!("x{i}"))));
            for (j, p) in pts.iter().enumerate() {
                let row = std::iter::once(j.to_string()).chain(p.iter().map(|x| {
                    let (lo, _) = x.enclosure(64);
                    let approx = num_traits::ToPrimitive::to_f64(&lo).unwrap_or(f64::NAN);
                    format!("{approx:.*}", out.digits.min(17) as usize)
                }));
                table.push(row);
            }
            let results = json!({
                "points": pts
                    .iter()
                    .map(|p| p.iter().map(|x| LinCombJson::from(x).coeffs).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            let horizons = json!({ "precision_bits": bits, "m": m });
            Ok((Report::new(echo, inputs, results, horizons).with_table(table), EXIT_OK))
        }
        TorusCmd::Rotation { v, step, target, tol, k_max } => {
            let hit = rotation_hit(v, &step, &target, &tol, k_max)?;
            let inputs = json!({
                "v": v,
                "step": step.to_string(),
                "target": target.to_string(),
                "tol": rational_text(&tol),
            });
            Ok((Report::new(echo, inputs, to_value(&hit), json!({ "k_max": k_max })), EXIT_OK))
        }
    }
}

/// Finds a spectrum inside any JSON the tool emits or accepts: a bare orbit
/// list, a single orbit, or an object holding one under `spectrum`,
/// `orbit` or `results`.
pub fn spectrum_from_json(v: &Value) -> crate::Result<Spectrum> {
    let parse_err = |e: serde_json::Error| Error::Parse(format!("invalid spectrum JSON: {e}"));
    match v {
        Value::Array(_) => serde_json::from_value(v.clone()).map_err(parse_err),
        Value::Object(m) => {
            for key in ["spectrum", "results"] {
                if let Some(inner) = m.get(key) {
                    return spectrum_from_json(inner);
                }
            }
            let single = m.get("orbit").unwrap_or(v);
            let o: SimpleOrbit = serde_json::from_value(single.clone()).map_err(parse_err)?;
            Spectrum::new(vec![o])
        }
        _ => Err(Error::Parse("a spectrum must be a JSON list of orbits".into())),
    }
}

fn load_spectrum(path: &Path) -> Result<Spectrum, Failure> {
    let text = read_source(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{} is not JSON: {e}", path.display())))?;
    Ok(spectrum_from_json(&v)?)
}

fn iterate_table(iterates: &[crate::orbit::IteratedOrbit], out: &OutputArgs) -> Table {
    let mut table = Table::new(["iterate", "k", "cz", "degree", "good", "action"]);
    let approx = decimal_column(&mut table, out);
    for it in iterates {
        let mut row = vec![
            it.name(),
            it.k.to_string(),
            it.cz.to_string(),
            it.degree.to_string(),
            it.good.to_string(),
            it.action.to_string(),
        ];
        if approx {
            row.push(it.action.to_decimal(out.digits));
        }
        table.push(row);
    }
    table
}

fn ellipsoid(a: EllipsoidArgs, out: &OutputArgs, echo: String) -> Outcome {
    let (params, spectrum) = match (&a.spectrum, &a.a2, &a.ratio) {
        (Some(p), _, _) => (None, load_spectrum(p)?),
        (None, Some(a2), None) => {
            let e = EllipsoidParams::new(a.a1.clone(), a2.clone())?;
            let s = ellipsoid_spectrum(&e)?;
            (Some(e), s)
        }
        (None, None, Some(rho)) => {
            let e = EllipsoidParams::new(a.a1.clone(), a.a1.checked_mul(rho)?)?;
            let s = ellipsoid_spectrum(&e)?;
            (Some(e), s)
        }
        _ => return Err(input_error("give --a2, --ratio or --spectrum".into())),
    };
    let cap = match &a.action_cap {
        Some(c) => Cap::Action(c.clone()),
        None => Cap::Degree(a.degree_cap),
    };
    let iterates = enumerate_iterates(&spectrum, &cap)?;
    let table = iterate_table(&iterates, out);
    let mut results = json!({ "spectrum": to_value(&spectrum), "iterates": to_value(&iterates) });
    let mut inputs = json!({ "spectrum": to_value(&spectrum) });
    if let Some(e) = &params {
        results["ellipsoid"] = to_value(e);
        inputs = json!({ "ellipsoid": to_value(e) });
    }
    let horizons = match &cap {
        Cap::Action(c) => json!({ "action_cap": c.to_string() }),
        Cap::Degree(d) => json!({ "degree_cap": d }),
    };
    Ok((Report::new(echo, inputs, results, horizons).with_table(table), EXIT_OK))
}

fn realize(ratio: &QuadExt, echo: String) -> Outcome {
    let real = realize_from_ratio(ratio)?;
    let spectrum = ellipsoid_spectrum(&real.ellipsoid)?;
    let mut results = to_value(&real);
    results["spectrum"] = to_value(&spectrum);
    let report = Report::new(echo, json!({ "ratio": ratio.to_string() }), results, json!({}));
    Ok((report, EXIT_OK))
}

fn classify_cmd(a: ClassifyArgs, echo: String) -> Outcome {
    let spectrum = load_spectrum(&a.spectrum)?;
    let opts = ClassifyOptions {
        check_convexity: !a.no_convexity,
    };
    let c = classify_with(&spectrum, a.degree_cap, &opts)?;
    let code = if c.verdict.is_consistent() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let inputs = json!({ "spectrum": to_value(&spectrum), "check_convexity": opts.check_convexity });
    let horizons = json!({ "degree_cap": a.degree_cap });
    Ok((Report::new(echo, inputs, to_value(&c), horizons), code))
}

fn collide(a: CollideArgs, echo: String) -> Outcome {
    let spectrum = load_spectrum(&a.spectrum)?;
    let collision = find_degree_collision(&spectrum, a.degree_cap);
    let ranks = hc_ranks(&spectrum, a.degree_cap);
    let first_gap = (1..=a.degree_cap / 2)
        .map(|h| 2 * h)
        .find(|&d| ranks.get(d) == 0);
    let code = if collision.is_some() {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let results = json!({
        "collision": to_value(&collision),
        "first_gap": first_gap,
        "ranks": to_value(&ranks.ranks),
    });
    let inputs = json!({ "spectrum": to_value(&spectrum) });
    let horizons = json!({ "degree_cap": a.degree_cap });
    Ok((Report::new(echo, inputs, results, horizons), code))
}

fn verify(only: &[u8], out: &OutputArgs, echo: String) -> Outcome {
    let ids = if only.is_empty() {
        acceptance::criterion_ids()
    } else {
        only.to_vec()
    };
    let mut outcomes = Vec::new();
    for id in &ids {
        let o = acceptance::run_criterion(*id)
            .ok_or_else(|| input_error(format!("unknown check id {id}")))?;
        if out.format != Format::Json {
            eprintln!("{}", o.line());
        }
        outcomes.push(o);
    }
    let all = outcomes.iter().all(|o| o.passed && o.within_budget);
    let mut table = Table::new(["id", "status", "name", "detail"]);
    let mut rows = Vec::new();
    for o in &outcomes {
        let status = if o.passed && o.within_budget { "PASS" } else { "FAIL" };
        table.push([o.id.to_string(), status.into(), o.name.into(), o.detail.clone()]);
        let mut v = to_value(o);
        if !out.timing {
            let m = v.as_object_mut().expect("struct serializes to an object");
            m.remove("elapsed_ms");
        }
        rows.push(v);
    }
    let results = json!({ "passed": all, "criteria": rows });
    let code = if all { EXIT_OK } else { EXIT_VIOLATION };
    let report = Report::new(echo, json!({ "ids": ids, "seed": acceptance::SEED }), results, json!({}));
    Ok((report.with_table(table), code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_subcommand() {
        for argv in [
            &["reeb", "cz", "--kind", "elliptic", "--r", "1", "--alpha", "sqrt(2)/2", "--k", "1"][..],
            &["reeb", "cz", "--kind", "odd-hyperbolic", "--r", "-1", "--k-max", "4"],
            &["reeb", "jumps", "sequence", "--xi", "sqrt(2)-1", "--n", "5"],
            &["reeb", "torus", "closure", "--json", "{}"],
            &["reeb", "ellipsoid", "--a2", "sqrt(2)", "--degree-cap", "24", "--format", "csv"],
            &["reeb", "realize", "--ratio", "(0+1*sqrt(2))/1"],
            &["reeb", "--format", "table", "classify", "--spectrum", "-"],
            &["reeb", "collide", "--spectrum", "x.json", "--degree-cap", "50"],
            &["reeb", "verify", "--only", "1,5"],
        ] {
            Cli::try_parse_from(argv).unwrap_or_else(|e| panic!("{argv:?}: {e}"));
        }
    }

    #[test]
    fn rejects_bad_flags() {
        for argv in [
            &["reeb", "cz", "--kind", "parabolic", "--r", "1", "--k", "1"][..],
            &["reeb", "classify", "--spectrum", "x", "--degree-cap", "0"],
            &["reeb", "ellipsoid", "--a2", "sqrt(2)", "--format", "xml"],
            &["reeb", "realize", "--ratio", "1.41"],
            &["reeb", "verify", "--bogus"],
        ] {
            assert!(Cli::try_parse_from(argv).is_err(), "{argv:?}");
        }
    }

    #[test]
    fn echo_quotes_specials() {
        let argv: Vec<OsString> = ["reeb", "realize", "--ratio", "(0+1*sqrt(2))/1"]
            .iter()
            .map(Into::into)
            .collect();
        assert_eq!(echo_command(&argv), "realize --ratio '(0+1*sqrt(2))/1'");
    }

    #[test]
    fn finds_nested_spectra() {
        let orbit = json!({"label": "g", "action": "1", "kind": {"odd_hyperbolic": {"r": 1}}});
        for v in [
            json!([orbit.clone()]),
            json!({"spectrum": [orbit.clone()]}),
            json!({"results": {"spectrum": [orbit.clone()], "iterates": []}}),
            json!({"results": {"orbit": orbit.clone()}}),
            orbit.clone(),
        ] {
            assert_eq!(spectrum_from_json(&v).unwrap().len(), 1, "{v}");
        }
        assert!(spectrum_from_json(&json!(3)).is_err());
        assert!(spectrum_from_json(&json!([{"label": "g", "action": "1", "kind": "x"}])).is_err());
    }
}
