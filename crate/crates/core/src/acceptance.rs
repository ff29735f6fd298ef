//! The reproducibility suite: ten end-to-end checks with runtime budgets.
//!
//! Each check recomputes its expected values independently where that is
//! possible (fixed-point decimal enumeration, brute-force scans, direct
//! formula evaluation) and compares them with the library's exact answers.
//! Randomized checks draw from a fixed seed, so every run sees the same inputs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactreal::{Basis, LinComb, QuadExt};
use crate::jumps::{
    find_affine_relation, find_common_jump, is_jump_subsequence, jump_sequence, kotschick_factor,
    quasimorphism_defect,
};
use crate::orbit::{check_superadditivity, OrbitKind, SimpleOrbit};
use crate::spectrum::{
    check_condition_o, classify, classify_with, ellipsoid_spectrum, enumerate_iterates,
    find_degree_collision, hc_ranks, realize_from_ratio, Cap, ClassifyOptions, EllipsoidParams,
    Spectrum, Verdict,
};
use crate::torus::{
    closure_description, density_check, orbit_points, rational_span_dim, relation_lattice,
    rotation_hit, TorusTranslation,
};

/// Seed shared by every randomized check.
pub const SEED: u64 = 0x5eeb_0001;

/// Squarefree radicands used for random quadratic numbers.
const RADICANDS: [u64; 14] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 23];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub within_budget: bool,
    pub elapsed_ms: f64,
    pub budget_ms: f64,
    pub detail: String,
}

impl Outcome {
    /// One line: `PASS [3] condition O ... (812 ms / 60000 ms) detail`.
    pub fn line(&self) -> String {
        let verdict = if self.passed && self.within_budget {
            "PASS"
        } else {
            "FAIL"
        };
        let slow = if self.within_budget { "" } else { " OVER BUDGET" };
        format!(
            "{verdict} [{:>2}] {} ({:.0} ms / {:.0} ms{slow}): {}",
            self.id, self.name, self.elapsed_ms, self.budget_ms, self.detail
        )
    }
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        name: "E(1,sqrt2) spectrum table to degree 24",
        budget: Duration::from_secs(1),
        run: ellipsoid_table,
    },
    Criterion {
        id: 2,
        name: "ranks of 50 random ellipsoids to degree 200",
        budget: Duration::from_secs(30),
        run: random_ranks,
    },
    Criterion {
        id: 3,
        name: "action order equals degree order, action cap 1000 a1",
        budget: Duration::from_secs(60),
        run: random_condition_o,
    },
    Criterion {
        id: 4,
        name: "ratio -> ellipsoid -> classify round trip, 100 ratios",
        budget: Duration::from_secs(30),
        run: realization_round_trip,
    },
    Criterion {
        id: 5,
        name: "degree superadditivity, 10^4 random cases",
        budget: Duration::from_secs(10),
        run: superadditivity,
    },
    Criterion {
        id: 6,
        name: "jump subsequences, relations and common jumps",
        budget: Duration::from_secs(60),
        run: jump_nesting,
    },
    Criterion {
        id: 7,
        name: "integer factors and additive index maps",
        budget: Duration::from_secs(10),
        run: integer_factors,
    },
    Criterion {
        id: 8,
        name: "torus translation closures",
        budget: Duration::from_secs(120),
        run: torus_closures,
    },
    Criterion {
        id: 9,
        name: "degree collision searches",
        budget: Duration::from_secs(60),
        run: collision_searches,
    },
    Criterion {
        id: 10,
        name: "rotation hits on R/3Z",
        budget: Duration::from_secs(10),
        run: rotation_hits,
    },
];

/// Identifiers of all checks, in order.
pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one check; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<Outcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let result = std::panic::catch_unwind(c.run).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Outcome {
        id: c.id,
        name: c.name,
        passed,
        within_budget: elapsed <= c.budget,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        budget_ms: c.budget.as_secs_f64() * 1e3,
        detail,
    })
}

pub fn run_all() -> Vec<Outcome> {
    criterion_ids()
        .into_iter()
        .filter_map(run_criterion)
        .collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(s: &str) -> QuadExt {
    s.parse().expect("literal parses")
}

/// A random irrational `(p + q sqrt(d)) / s` strictly between `lo` and `hi`.
pub fn random_quadratic(rng: &mut impl Rng, lo: i64, hi: i64) -> QuadExt {
    let (lo_q, hi_q) = (QuadExt::from_integer(lo), QuadExt::from_integer(hi));
    loop {
        let d = RADICANDS[rng.gen_range(0..RADICANDS.len())];
        let coef: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let s: i64 = rng.gen_range(1..=12);
        let target = rng.gen_range(lo as f64..hi as f64);
        let p = (target * s as f64 - coef as f64 * (d as f64).sqrt()).round() as i64;
        let x = QuadExt::new(p, coef, s, d).expect("nonzero denominator");
        if x.is_rational() {
            continue;
        }
        if x > lo_q && x < hi_q {
            return x;
        }
    }
}

fn random_ratios(n: usize, salt: u64) -> Vec<QuadExt> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    (0..n).map(|_| random_quadratic(&mut rng, 1, 10)).collect()
}

fn unit_ellipsoid(rho: &QuadExt) -> Spectrum {
    let e = EllipsoidParams::new(QuadExt::one(), rho.clone()).expect("rho > 1 irrational");
    ellipsoid_spectrum(&e).expect("valid ellipsoid")
}

/// Fixed-point enumeration of `E(1, sqrt 2)` with 50 decimal digits, sharing
/// nothing with the exact arithmetic layer.
fn decimal_oracle_e1_sqrt2(degree_cap: i64) -> Vec<(String, i64)> {
    let digits = 50u32;
    let one = BigInt::from(10u32).pow(digits);
    let sqrt2 = (BigInt::from(2u32) * &one * &one).sqrt();
    // (label, r, alpha scaled, action scaled)
    let orbits = [
        ("gamma1", 1i64, &sqrt2 / 2u32, one.clone()),
        ("gamma2", 2i64, &sqrt2 - &one, sqrt2.clone()),
    ];
    let mut rows: Vec<(BigInt, String, i64)> = Vec::new();
    for (label, r, alpha, action) in &orbits {
        for k in 1i64.. {
            let fl = (alpha * k / &one).to_i64().expect("small");
            let degree = 2 * k * r + 2 * fl;
            if degree > degree_cap {
                break;
            }
            rows.push((action * k, format!("{label}^{k}"), degree));
        }
    }
    rows.sort();
    rows.into_iter().map(|(_, n, d)| (n, d)).collect()
}

fn ellipsoid_table() -> Result<String, String> {
    let s = unit_ellipsoid(&q("sqrt(2)"));
    let its = enumerate_iterates(&s, &Cap::Degree(24)).map_err(|e| e.to_string())?;
    let got: Vec<(String, i64)> = its
        .iter()
        .filter(|i| i.good)
        .map(|i| (i.name(), i.degree))
        .collect();
    let oracle = decimal_oracle_e1_sqrt2(24);
    ensure!(got == oracle, "library {got:?} != decimal oracle {oracle:?}");
    let expected_order = [
        "gamma1^1", "gamma2^1", "gamma1^2", "gamma2^2", "gamma1^3", "gamma1^4", "gamma2^3",
        "gamma1^5", "gamma2^4", "gamma1^6", "gamma1^7", "gamma2^5",
    ];
    let names: Vec<&str> = got.iter().map(|(n, _)| n.as_str()).collect();
    ensure!(names == expected_order, "action order {names:?}");
    let degrees: Vec<i64> = got.iter().map(|(_, d)| *d).collect();
    ensure!(
        degrees == (1..=12).map(|i| 2 * i).collect::<Vec<_>>(),
        "degrees {degrees:?}"
    );
    Ok("12 good iterates, degrees 2..24 once each, matches 50-digit oracle".to_string())
}

fn random_ranks() -> Result<String, String> {
    let ratios = random_ratios(50, 2);
    for rho in &ratios {
        let ranks = hc_ranks(&unit_ellipsoid(rho), 200);
        let want: BTreeMap<i64, u64> = (1..=100).map(|h| (2 * h, 1)).collect();
        ensure!(ranks.ranks == want, "rho = {rho}: ranks {:?}", ranks.ranks);
    }
    Ok(format!("{} ratios, rank 1 in each even degree 2..200, 0 elsewhere", ratios.len()))
}

fn random_condition_o() -> Result<String, String> {
    let ratios = random_ratios(50, 2);
    let mut checked = 0;
    for rho in &ratios {
        let s = unit_ellipsoid(rho);
        let cap = s.orbits()[0].action.scale_int(1000);
        let c = check_condition_o(&s, &Cap::Action(cap)).map_err(|e| format!("rho = {rho}: {e}"))?;
        ensure!(c.holds, "rho = {rho}: violation {:?}", c.violation);
        checked += c.checked;
    }
    Ok(format!("{} spectra, {checked} good iterates in action order", ratios.len()))
}

fn realization_round_trip() -> Result<String, String> {
    let ratios = random_ratios(100, 4);
    for rho in &ratios {
        let real = realize_from_ratio(rho).map_err(|e| format!("rho = {rho}: {e}"))?;
        let s = ellipsoid_spectrum(&real.ellipsoid).map_err(|e| e.to_string())?;
        let c = classify(&s, 200).map_err(|e| e.to_string())?;
        let Verdict::ConsistentTwoOrbit { alpha1, alpha2, r1, r2, .. } = c.verdict else {
            return Err(format!("rho = {rho}: verdict {:?}", c.verdict));
        };
        // the tuple recomputed from rho alone
        let w = rho.floor();
        let want_a1 = rho.recip().map_err(|e| e.to_string())?;
        let want_a2 = rho.add_int(-w.clone());
        let want_r2 = w.to_i64().unwrap() + 1;
        ensure!(
            alpha1 == want_a1 && alpha2 == want_a2 && r1 == 1 && r2 == want_r2,
            "rho = {rho}: got ({alpha1}, {alpha2}, {r1}, {r2})"
        );
        // alpha1 = A1/A2, A2/A1 = (r2 + alpha2)/(1 + alpha1), r2 = [1/alpha1] + 1
        let (a1, a2) = (&s.orbits()[0].action, &s.orbits()[1].action);
        ensure!(a1.checked_div(a2).unwrap() == alpha1, "rho = {rho}: alpha1 != A1/A2");
        let lhs = a2.checked_div(a1).unwrap();
        let rhs = alpha2.add_int(r2).checked_div(&alpha1.add_int(1)).unwrap();
        ensure!(lhs == rhs, "rho = {rho}: {lhs} != {rhs}");
        ensure!(
            alpha1.recip().unwrap().floor() + 1 == BigInt::from(r2),
            "rho = {rho}: r2 != [1/alpha1] + 1"
        );
    }
    Ok(format!("{} ratios round-trip with exact field equality", ratios.len()))
}

fn random_orbit(rng: &mut ChaCha8Rng) -> SimpleOrbit {
    let r = rng.gen_range(-3..=6);
    let kind = match rng.gen_range(0..3) {
        0 => OrbitKind::elliptic(r, random_quadratic(rng, 0, 1)).expect("alpha in (0,1)"),
        1 => OrbitKind::EvenHyperbolic { r },
        _ => OrbitKind::OddHyperbolic { r },
    };
    SimpleOrbit::new("g", QuadExt::one(), kind).expect("positive action")
}

fn superadditivity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let cases = 10_000;
    let mut tight = 0;
    for _ in 0..cases {
        let o = random_orbit(&mut rng);
        let parts_n = rng.gen_range(2..=8);
        let budget: u64 = rng.gen_range(parts_n..=200);
        // random composition of at most `budget` into `parts_n` positive parts
        let mut parts = vec![1u64; parts_n as usize];
        for _ in parts_n..budget {
            let i = rng.gen_range(0..parts.len());
            parts[i] += 1;
        }
        let s = check_superadditivity(&o, &parts).map_err(|e| e.to_string())?;
        ensure!(s.holds, "{:?} with parts {parts:?}: {} < {}", o.kind, s.lhs, s.rhs);
        tight += usize::from(s.lhs == s.rhs);
    }
    Ok(format!("{cases} cases hold, {tight} with equality"))
}

fn jump_nesting() -> Result<String, String> {
    let err = |e: crate::Error| e.to_string();
    // (a)
    let xi1 = q("sqrt(2)/2");
    let xi2 = q("(sqrt(2)-1)/2");
    let sub = is_jump_subsequence(&xi2, &xi1, 10_000).map_err(err)?;
    ensure!(sub.holds, "subsequence fails at {:?}", sub.counterexample);
    let rel = find_affine_relation(&xi1, &xi2).map_err(err)?.ok_or("no relation")?;
    let half = BigRational::new((-1).into(), 2.into());
    ensure!(rel.p == BigRational::one() && rel.q == half, "relation ({}, {})", rel.p, rel.q);

    // (b)
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut worst = 0;
    let mut triples = 0;
    while triples < 50 {
        let base = random_quadratic(&mut rng, 0, 1);
        let p2 = BigRational::new(rng.gen_range(1..=4).into(), rng.gen_range(1..=4).into());
        let p3 = BigRational::new(rng.gen_range(1..=4).into(), rng.gen_range(1..=4).into());
        let shift = |p: &BigRational, rng: &mut ChaCha8Rng| {
            let x = base.scale(p);
            let offset = BigRational::new(rng.gen_range(-6..=6).into(), 7.into());
            x.checked_add(&QuadExt::from_rational(&offset)).unwrap()
        };
        let (x2, x3) = (shift(&p2, &mut rng), shift(&p3, &mut rng));
        let in_unit = |x: &QuadExt| x.is_positive() && *x < QuadExt::one();
        if !in_unit(&x2) || !in_unit(&x3) {
            continue;
        }
        let rel = find_affine_relation(&x2, &x3).map_err(err)?.ok_or("related by construction")?;
        ensure!(rel.p > BigRational::from_integer(0.into()), "slope of {x2}, {x3}");
        let k = find_common_jump(&x2, &x3, 10_000).map_err(err)?;
        let k = k.ok_or_else(|| format!("no common jump of {x2} and {x3} below 10^4"))?;
        worst = worst.max(k);
        triples += 1;
    }

    // (c)
    let horizon = 10_000;
    for rho in random_ratios(50, 2) {
        let s = unit_ellipsoid(&rho);
        let alpha1 = s.orbits()[0].kind.alpha().expect("elliptic").clone();
        let ratio = s.orbits()[0].action.checked_div(&s.orbits()[1].action).map_err(err)?;
        let a = jump_sequence(&alpha1, horizon).map_err(err)?;
        let b = jump_sequence(&ratio, horizon).map_err(err)?;
        ensure!(a.terms == b.terms, "rho = {rho}: jump sequences differ");
    }
    Ok(format!(
        "subsequence to 10^4 with relation (1, -1/2); 50 triples, largest first common jump {worst}; 50 bridges to 10^4"
    ))
}

fn integer_factors() -> Result<String, String> {
    let bases = ["sqrt(2)/4", "(sqrt(5)-1)/4", "sqrt(3)-3/2", "(sqrt(7)-2)/2", "sqrt(2)/2-1/4"];
    let mut n = 0;
    for b in bases {
        let xi1 = q(b);
        for k in 1..=5u64 {
            let xi2 = xi1.scale(&BigRational::new(1.into(), k.into()));
            let f = kotschick_factor(&xi1, &xi2, 500).map_err(|e| e.to_string())?;
            ensure!(f == Some(k), "{xi1} / {k}: factor {f:?}");
            let d = quasimorphism_defect(&xi1, &xi2, 500).map_err(|e| e.to_string())?;
            ensure!(d.defect == 0, "{xi1} / {k}: defect {}", d.defect);
            n += 1;
        }
    }
    Ok(format!("{n} pairs: factor recovered exactly, defect 0 at horizon 500"))
}

fn torus_closures() -> Result<String, String> {
    let err = |e: crate::Error| e.to_string();
    let b = Basis::sqrts(&[2, 3]);
    let dense = TorusTranslation::new(vec![
        LinComb::from_ints(b.clone(), &[-1, 1, 0]).map_err(err)?,
        LinComb::from_ints(b, &[-1, 0, 1]).map_err(err)?,
    ])
    .map_err(err)?;
    let dim = rational_span_dim(&dense);
    ensure!(dim == 3, "span dim {dim}");
    let rep = density_check(&dense, 0.02, 100_000).map_err(err)?;
    ensure!(rep.dense, "density fails: worst gap {}", rep.worst_gap);

    let b = Basis::sqrts(&[2]);
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let degenerate =
        TorusTranslation::from_coeffs(b, vec![vec![r(0, 1), r(1, 2)], vec![r(0, 1), r(1, 4)]]).map_err(err)?;
    let lat = relation_lattice(&degenerate).map_err(err)?;
    ensure!(lat == vec![vec![1, -2, 0]], "relations {lat:?}");
    let c = closure_description(&degenerate).map_err(err)?;
    ensure!((c.l, c.d) == (1, 1), "l = {}, d = {}", c.l, c.d);
    for (j, p) in orbit_points(&degenerate, 2000).map_err(err)?.iter().enumerate() {
        let lhs = p[0].checked_sub(&p[1].scale(&r(2, 1))).map_err(err)?;
        ensure!(
            lhs.is_rational() && lhs.rational_part().is_integer(),
            "point {j} violates x1 - 2 x2 = 0 mod 1"
        );
    }

    let rational = TorusTranslation::from_coeffs(Basis::new(vec![]), vec![vec![r(1, 3)]]).map_err(err)?;
    let pts = orbit_points(&rational, 9).map_err(err)?;
    let period = (1..pts.len()).find(|&j| pts[j] == pts[0]);
    ensure!(period == Some(3), "period {period:?}");
    ensure!(pts.iter().enumerate().all(|(j, p)| *p == pts[j % 3]), "orbit does not cycle");
    let c = closure_description(&rational).map_err(err)?;
    ensure!((c.l, c.d) == (0, 3), "l = {}, d = {}", c.l, c.d);

    Ok(format!(
        "dense pair: dim 3, worst gap {:.5} < 0.02 over {} net points; (1,-2,0) with l=1 d=1; period 3",
        rep.worst_gap, rep.net_points
    ))
}

fn collision_searches() -> Result<String, String> {
    let err = |e: crate::Error| e.to_string();
    let orbit = |label: &str, action: &str, kind| SimpleOrbit::new(label, q(action), kind).unwrap();

    let case1 = Spectrum::new(vec![
        orbit("g1", "1", OrbitKind::OddHyperbolic { r: 1 }),
        orbit("g2", "sqrt(2)", OrbitKind::OddHyperbolic { r: 2 }),
    ])
    .map_err(err)?;
    let c = find_degree_collision(&case1, 200).ok_or("case 1: no collision")?;
    ensure!(c.degree == 14, "case 1 collides at {}", c.degree);
    let v = classify(&case1, 100).map_err(err)?.verdict;
    ensure!(
        matches!(v, Verdict::InconsistentCollision { degree: 14, .. }),
        "case 1 verdict {v:?}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut worst = 0;
    for _ in 0..100 {
        let r2 = rng.gen_range(1..=8);
        let alpha = random_quadratic(&mut rng, 0, 1);
        let s = Spectrum::new(vec![
            orbit("g1", "1", OrbitKind::OddHyperbolic { r: 1 }),
            orbit("g2", "sqrt(2)", OrbitKind::elliptic(r2, alpha.clone()).map_err(err)?),
        ])
        .map_err(err)?;
        let c = find_degree_collision(&s, 10_000)
            .ok_or_else(|| format!("case 2: r2 = {r2}, alpha = {alpha}: no collision to 10^4"))?;
        worst = worst.max(c.degree);
    }

    let loose = Spectrum::new(vec![
        orbit("h", "1", OrbitKind::EvenHyperbolic { r: 1 }),
        orbit("e", "sqrt(2)", OrbitKind::elliptic(0, q("sqrt(2)/2")).map_err(err)?),
    ])
    .map_err(err)?;
    let v = classify(&loose, 200).map_err(err)?.verdict;
    ensure!(v.tag() == "NotDynamicallyConvex", "convexity verdict {v:?}");
    let unchecked = classify_with(&loose, 200, &ClassifyOptions { check_convexity: false })
        .map_err(err)?
        .verdict;
    ensure!(!unchecked.is_consistent(), "accepted without convexity");
    let collision = find_degree_collision(&loose, 200).ok_or("no collision without convexity")?;
    let ranks = hc_ranks(&loose, 200);
    let gap = (1..=100).map(|h| 2 * h).find(|d| ranks.get(*d) == 0);

    Ok(format!(
        "case 1 at degree 14; 100 case-2 pairs collide by degree {worst}; nonconvex pair rejected, \
         unchecked verdict {}, collision at {}, first gap {:?}",
        unchecked.tag(),
        collision.degree,
        gap
    ))
}

fn dist_lt(x: &QuadExt, tol: &BigRational) -> bool {
    x.compare(&QuadExt::from_rational(tol)).is_ok_and(|o| o.is_lt())
}

fn rotation_hits() -> Result<String, String> {
    let err = |e: crate::Error| e.to_string();
    let step = q("1+sqrt(2)");
    let target = q("5/4");
    let coarse = rotation_hit(3, &step, &target, &BigRational::new(1.into(), 100.into()), 1000).map_err(err)?;
    ensure!(coarse.k == 3, "coarse hit at k = {}", coarse.k);
    ensure!(coarse.certified, "coarse hit not certified");
    let tol = BigRational::new(1.into(), 1_000_000.into());
    let fine = rotation_hit(3, &step, &target, &tol, 10_000_000).map_err(err)?;
    ensure!(fine.certified, "fine hit not certified");
    ensure!(
        dist_lt(&fine.distance, &tol),
        "fine distance {} not below tolerance",
        fine.distance
    );
    Ok(format!(
        "tol 1/100 at k = 3; tol 10^-6 at k = {} (distance ~{:.3e})",
        fine.k,
        fine.distance.to_f64()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_quadratics_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = random_quadratic(&mut rng, 1, 10);
            assert!(!x.is_rational());
            assert!(x > QuadExt::one() && x < QuadExt::from_integer(10));
        }
    }

    #[test]
    fn oracle_agrees_on_first_rows() {
        let rows = decimal_oracle_e1_sqrt2(6);
        assert_eq!(
            rows,
            vec![
                ("gamma1^1".to_string(), 2),
                ("gamma2^1".to_string(), 4),
                ("gamma1^2".to_string(), 6)
            ]
        );
    }

    #[test]
    fn outcome_lines() {
        let o = Outcome {
            id: 3,
            name: "x",
            passed: true,
            within_budget: false,
            elapsed_ms: 2.0,
            budget_ms: 1.0,
            detail: "d".into(),
        };
        assert_eq!(o.line(), "FAIL [ 3] x (2 ms / 1 ms OVER BUDGET): d");
    }
}
