use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn reeb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(args)
        .env_remove("REEB_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn two_odd_hyperbolic_orbits_collide_at_14() {
    let spec = data("two-odd-hyp.json");
    let out = reeb(&["classify", "--spectrum", path_str(&spec), "--degree-cap", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["results"]["verdict"], "InconsistentCollision");
    assert_eq!(v["results"]["degree"], 14);
    let names: Vec<String> = v["results"]["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| format!("{}^{}", w["label"].as_str().unwrap(), w["k"]))
        .collect();
    assert_eq!(names, ["g2^3", "g1^5"]);
}

#[test]
fn realize_sqrt2() {
    let out = reeb(&["realize", "--ratio", "(0+1*sqrt(2))/1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_of(&out)["results"];
    assert_eq!(r["alpha1"], "(0+1*sqrt(2))/2");
    assert_eq!(r["alpha2"], "(-1+1*sqrt(2))/1");
    assert_eq!(r["r1"], 1);
    assert_eq!(r["r2"], 2);
}

#[test]
fn cz_of_first_elliptic_iterate() {
    let out = reeb(&["cz", "--kind", "elliptic", "--r", "1", "--alpha", "(0+1*sqrt(2))/2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let it = &json_of(&out)["results"]["iterates"][0];
    assert_eq!((it["cz"].as_i64(), it["degree"].as_i64()), (Some(3), Some(2)));
}

#[test]
fn cz_superadditivity_and_negative_r() {
    let out = reeb(&["cz", "--kind", "odd-hyperbolic", "--r", "-1", "--k-max", "6", "--parts", "3,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["iterates"].as_array().unwrap().len(), 6);
    assert_eq!(v["results"]["superadditivity"]["holds"], true);
}

#[test]
fn ellipsoid_csv_has_twelve_rows() {
    let out = reeb(&["ellipsoid", "--a2", "sqrt(2)", "--degree-cap", "24", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rows.headers().unwrap().iter().collect::<Vec<_>>(),
        ["iterate", "k", "cz", "degree", "good", "action"]
    );
    let degrees: Vec<i64> = rows
        .records()
        .map(|r| r.unwrap()[3].parse().unwrap())
        .collect();
    assert_eq!(degrees, (1..=12).map(|i| 2 * i).collect::<Vec<_>>());
}

#[test]
fn empty_spectrum_enumerates_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    std::fs::write(&p, "[]").unwrap();
    let out = reeb(&["ellipsoid", "--spectrum", path_str(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"]["iterates"], serde_json::json!([]));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["ellipsoid", "--ratio", "(1+sqrt(5))/2", "--degree-cap", "60"][..],
        &["torus", "closure", "--json", r#"{"basis":["1","sqrt(2)"],"xi":[["-1/2","1/2"],["0","1/2"]]}"#],
        &["jumps", "sequence", "--xi", "sqrt(3)-1", "--n", "50"],
    ] {
        let a = reeb(args);
        let b = reeb(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_spectra_classify_again() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 3] = [
        (&["realize", "--ratio", "(3+sqrt(7))/2"], "ConsistentTwoOrbit"),
        (&["ellipsoid", "--a1", "2", "--a2", "3*sqrt(3)"], "ConsistentTwoOrbit"),
        (&["cz", "--kind", "elliptic", "--r", "1", "--alpha", "sqrt(2)/2", "--k-max", "3"], "InconsistentGap"),
    ];
    for (i, (args, verdict)) in cases.iter().enumerate() {
        let p = dir.path().join(format!("{i}.json"));
        let mut full = args.to_vec();
        full.extend(["--output", path_str(&p)]);
        assert_eq!(reeb(&full).status.code(), Some(0), "{args:?}");
        let out = reeb(&["classify", "--spectrum", path_str(&p)]);
        assert_eq!(json_of(&out)["results"]["verdict"], *verdict, "{args:?}");
        // the classify report itself carries the spectrum under inputs
        let again: Value = serde_json::from_slice(&out.stdout).unwrap();
        let inputs_only = dir.path().join(format!("{i}-inputs.json"));
        std::fs::write(&inputs_only, again["inputs"].to_string()).unwrap();
        let out2 = reeb(&["classify", "--spectrum", path_str(&inputs_only)]);
        assert_eq!(json_of(&out2)["results"], json_of(&out)["results"]);
    }
}

#[test]
fn spectrum_from_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(["collide", "--spectrum", "-", "--degree-cap", "30"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&std::fs::read(data("two-odd-hyp.json")).unwrap())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["results"]["collision"]["degree"], 14);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        &["cz", "--kind", "elliptic", "--r", "1", "--k", "1"][..],
        &["realize", "--ratio", "2"],
        &["realize", "--ratio", "0.5"],
        &["classify", "--spectrum", "/nonexistent/spectrum.json"],
        &["ellipsoid", "--a2", "sqrt(2)", "--format", "yaml"],
        &["torus", "span", "--json", r#"{"basis":["1"],"xi":[["1/2"]],"extra":1}"#],
        &["jumps", "relation", "--xi1", "sqrt(2)", "--xi2", "sqrt(3)"],
        &["frobnicate"],
    ] {
        let out = reeb(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn exhausted_searches_exit_3() {
    let out = reeb(&[
        "torus", "rotation", "--v", "3", "--step", "1+sqrt(2)", "--target", "5/4", "--tol", "1/1000000000000",
        "--k-max", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = reeb(&["jumps", "common", "--xi2", "sqrt(2)/2", "--xi3", "(sqrt(2)-1)/2", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn violations_exit_1() {
    let out = reeb(&["jumps", "subsequence", "--xi1", "sqrt(2)/4", "--xi2", "sqrt(2)/2", "--horizon", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["results"]["holds"], false);
    let dense = r#"{"basis":["1","sqrt(2)","sqrt(3)"],"xi":[["-1","1","0"],["-1","0","1"]]}"#;
    let out = reeb(&["torus", "density", "--json", dense, "--eps", "0.05", "--m", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["results"]["dense"], false);
}

#[test]
fn torus_subcommands() {
    let t = r#"{"basis":["1","sqrt(2)"],"xi":[["0","1/2"],["0","1/4"]]}"#;
    let lattice = json_of(&reeb(&["torus", "lattice", "--json", t]));
    assert_eq!(lattice["results"]["relations"], serde_json::json!([[1, -2, 0]]));
    let span = json_of(&reeb(&["torus", "span", "--json", t]));
    assert_eq!(span["results"]["dim"], 2);
    let pts = json_of(&reeb(&["torus", "points", "--json", t, "--m", "3"]));
    assert_eq!(pts["results"]["points"].as_array().unwrap().len(), 4);
    let third = json_of(&reeb(&["torus", "closure", "--json", r#"{"basis":["1"],"xi":[["1/3"]]}"#]));
    assert_eq!((third["results"]["l"].as_u64(), third["results"]["d"].as_u64()), (Some(0), Some(3)));
}

#[test]
fn jumps_subcommands() {
    let seq = json_of(&reeb(&["jumps", "sequence", "--xi", "(sqrt(5)-1)/2", "--n", "4"]));
    assert_eq!(seq["results"]["terms"], serde_json::json!([1, 3, 4, 6]));
    let rel = json_of(&reeb(&["jumps", "relation", "--xi1", "sqrt(2)/2", "--xi2", "(sqrt(2)-1)/2"]));
    assert_eq!(rel["results"]["relation"]["p"], "1");
    assert_eq!(rel["results"]["relation"]["q"], "-1/2");
    let f = json_of(&reeb(&["jumps", "factor", "--xi1", "sqrt(2)/4", "--xi2", "sqrt(2)/12"]));
    assert_eq!(f["results"]["factor"], 3);
    assert_eq!(f["results"]["defect"]["defect"], 0);
}

#[test]
fn output_file_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = reeb(&["realize", "--ratio", "sqrt(3)", "--timing", "--output", path_str(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert!(v["timing_ms"].as_f64().is_some());
    let bad = reeb(&["realize", "--ratio", "sqrt(3)", "--output", "/nonexistent/dir/r.json"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn precision_env_is_honored() {
    let t = r#"{"basis":["1","sqrt(2)"],"xi":[["0","1/2"]]}"#;
    let out = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(["torus", "span", "--json", t])
        .env("REEB_PRECISION_BITS", "512")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["horizons"]["precision_bits"], 512);
    let out = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(["torus", "span", "--json", t])
        .env("REEB_PRECISION_BITS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subset() {
    let out = reeb(&["verify", "--only", "1,5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["results"]["criteria"].as_array().unwrap().len(), 2);
    assert!(v["results"]["criteria"][0].get("elapsed_ms").is_none());
    assert_eq!(reeb(&["verify", "--only", "42"]).status.code(), Some(2));
}
