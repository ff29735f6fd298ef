//! Translations of the n-torus by vectors of [`LinComb`] values.
//!
//! The closure of the orbit of `0` under `x -> x + xi (mod 1)` is a closed
//! subgroup: `d` translates of an `l`-dimensional subtorus. Everything about it
//! is read off the integer relations `m . (xi, 1) = 0`, computed exactly here.

mod lattice;
mod rotation;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactreal::{Basis, LinComb, LinCombJson, DEFAULT_MAX_BITS};

pub use lattice::{
    clear_row_denominators, determinant, hermite_normal_form, integer_kernel,
    maximal_minor_gcd, rational_rank, IntMatrix,
};
pub use rotation::{rotation_hit, RotationHit};

/// Largest net the density scan will build.
pub const MAX_NET_POINTS: u64 = 50_000_000;

/// Translation by `xi`, every coordinate reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusTranslation {
    xi: Vec<LinComb>,
    max_bits: u32,
}

impl TorusTranslation {
    pub fn new(xi: Vec<LinComb>) -> Result<Self> {
        Self::with_max_bits(xi, DEFAULT_MAX_BITS)
    }

    /// Same as [`new`](Self::new) with an explicit precision cap for all floors.
    pub fn with_max_bits(xi: Vec<LinComb>, max_bits: u32) -> Result<Self> {
        let Some(first) = xi.first() else {
            return Err(Error::Domain("a torus translation needs n >= 1".into()));
        };
        let basis = first.basis().clone();
        let names = basis.names();
        let xi = xi
            .iter()
            .map(|x| {
                if x.basis().names() != names {
                    return Err(Error::Domain("coordinates use different bases".into()));
                }
                LinComb::new(basis.clone(), x.coeffs().to_vec())?.fract(max_bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { xi, max_bits })
    }

    /// Coordinates given as coefficient rows over `basis`.
    pub fn from_coeffs(basis: Arc<Basis>, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let xi = rows
            .into_iter()
            .map(|c| LinComb::new(basis.clone(), c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(xi)
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[LinComb] {
        &self.xi
    }

    pub fn basis(&self) -> &Arc<Basis> {
        self.xi[0].basis()
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Columns `xi_1, ..., xi_n, 1` written in basis coordinates (one row per constant).
    fn coordinate_matrix(&self) -> Vec<Vec<BigRational>> {
        let b = self.basis().len();
        (0..b)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    self.xi.iter().map(|x| x.coeffs()[i].clone()).collect();
                row.push(BigRational::from_integer(BigInt::from((i == 0) as u8)));
                row
            })
            .collect()
    }
}

/// Wire form: `{"basis": ["1","sqrt(2)"], "xi": [["0","1/2"], ["0","1/4"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusJson {
    pub basis: Vec<String>,
    pub xi: Vec<Vec<String>>,
}

impl TorusJson {
    pub fn into_translation(self, max_bits: u32) -> Result<TorusTranslation> {
        let basis = Basis::from_names(&self.basis)?;
        let xi = self
            .xi
            .into_iter()
            .map(|coeffs| {
                LinCombJson {
                    basis: self.basis.clone(),
                    coeffs,
                }
                .with_basis(basis.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        TorusTranslation::with_max_bits(xi, max_bits)
    }
}

/// `dim_Q span(xi_1, ..., xi_n, 1)`, which is `l + 1`.
pub fn rational_span_dim(t: &TorusTranslation) -> usize {
    rational_rank(&t.coordinate_matrix())
}

fn to_i64_rows(rows: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Domain(format!("lattice entry {x} exceeds i64")))
                })
                .collect()
        })
        .collect()
}

fn relation_lattice_big(t: &TorusTranslation) -> IntMatrix {
    let a = clear_row_denominators(&t.coordinate_matrix());
    hermite_normal_form(&integer_kernel(&a, t.n() + 1))
}

/// Hermite-form basis of `{ m in Z^(n+1) : m_1 xi_1 + ... + m_n xi_n + m_(n+1) = 0 }`.
pub fn relation_lattice(t: &TorusTranslation) -> Result<Vec<Vec<i64>>> {
    to_i64_rows(&relation_lattice_big(t))
}

/// Applies one step of the translation to a point, reducing mod 1.
fn step(t: &TorusTranslation, x: &[LinComb]) -> Result<Vec<LinComb>> {
    x.iter()
        .zip(&t.xi)
        .map(|(a, b)| a.checked_add(b)?.fract(t.max_bits))
        .collect()
}

/// `tau^m(0)` for `m = 0..=big_m`, exact.
pub fn orbit_points(t: &TorusTranslation, big_m: u64) -> Result<Vec<Vec<LinComb>>> {
    let zero = vec![LinComb::zero(t.basis().clone()); t.n()];
    let mut out = Vec::with_capacity(big_m.min(1 << 24) as usize + 1);
    out.push(zero);
    for _ in 0..big_m {
        let next = step(t, out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Orbit closure: `d` translates `tau^j(0) + T` of an `l`-dimensional subtorus `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureDescription {
    /// Hermite-form basis of the relation lattice in `Z^(n+1)`.
    pub relation_basis: Vec<Vec<i64>>,
    pub l: usize,
    pub d: u64,
    /// `T` is the image of `span(subtorus_basis)`; these integer vectors are a
    /// basis of that span's integer points.
    pub subtorus_basis: Vec<Vec<i64>>,
    pub representatives: Vec<Vec<LinComb>>,
}

/// Relation data shared by closure and density computations.
struct Structure {
    relations: IntMatrix,
    subtorus: IntMatrix,
    d: BigInt,
}

fn structure(t: &TorusTranslation) -> Structure {
    let n = t.n();
    let relations = relation_lattice_big(t);
    let projected: IntMatrix = relations.iter().map(|m| m[..n].to_vec()).collect();
    let d = maximal_minor_gcd(&projected, n);
    let subtorus = if projected.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect()
    } else {
        hermite_normal_form(&integer_kernel(&projected, n))
    };
    Structure {
        relations,
        subtorus,
        d,
    }
}

pub fn closure_description(t: &TorusTranslation) -> Result<ClosureDescription> {
    let s = structure(t);
    let d = s
        .d
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("coset count {} too large", s.d)))?;
    let representatives = orbit_points(t, d - 1)?;
    Ok(ClosureDescription {
        relation_basis: to_i64_rows(&s.relations)?,
        l: s.subtorus.len(),
        d,
        subtorus_basis: to_i64_rows(&s.subtorus)?,
        representatives,
    })
}

impl ClosureDescription {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "relation_basis": self.relation_basis,
            "l": self.l,
            "d": self.d,
            "subtorus_basis": self.subtorus_basis,
            "representatives": self
                .representatives
                .iter()
                .map(|p| p.iter().map(LinCombJson::from).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Outcome of [`density_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub dense: bool,
    /// Largest sup-distance from a net point to its nearest orbit point.
    pub worst_gap: f64,
    pub eps: f64,
    pub net_points: u64,
    pub orbit_points: u64,
    pub l: usize,
    pub d: u64,
}

/// Numerical slack absorbed by the f64 screening of exact points.
const SCREEN_SLACK: f64 = 1e-12;

fn torus_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = (x - y).rem_euclid(1.0);
            t.min(1.0 - t)
        })
        .fold(0.0, f64::max)
}

/// Checks that an `eps/2`-net of the described closure is `eps`-covered by
/// `tau^0(0), ..., tau^M(0)`, after verifying exactly that every orbit point
/// satisfies every relation.
pub fn density_check(t: &TorusTranslation, eps: f64, big_m: u64) -> Result<DensityReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    if big_m < 1 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    let n = t.n();
    let s = structure(t);
    let d = s
        .d
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("coset count {} too large", s.d)))?;
    let l = s.subtorus.len();

    let orbit = orbit_points(t, big_m)?;
    for (j, p) in orbit.iter().enumerate() {
        for m in &s.relations {
            if !satisfies(p, m) {
                return Err(Error::IdentityViolation(format!(
                    "orbit point {j} violates relation {m:?}"
                )));
            }
        }
    }
    let pts: Vec<Vec<f64>> = orbit
        .iter()
        .map(|p| p.iter().map(|x| x.approx_f64().clamp(0.0, 1.0)).collect())
        .collect();

    // grid in subtorus parameters fine enough that neighbours are eps/2 apart
    let w: Vec<Vec<f64>> = s
        .subtorus
        .iter()
        .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let spread = (0..n)
        .map(|c| w.iter().map(|v| v[c].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(1.0);
    let per_axis = (2.0 * spread / eps).ceil().max(1.0) as u64;
    let net_points = per_axis
        .checked_pow(l as u32)
        .and_then(|x| x.checked_mul(d))
        .filter(|&x| x <= MAX_NET_POINTS)
        .ok_or_else(|| Error::Domain(format!("eps {eps} needs a net larger than {MAX_NET_POINTS}")))?;

    let cells = ((1.0 / eps).floor() as usize).clamp(1, 1 << 16);
    let cell_of = |x: &[f64]| -> Vec<usize> {
        x.iter()
            .map(|&c| ((c * cells as f64) as usize).min(cells - 1))
            .collect()
    };
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, p) in pts.iter().enumerate() {
        buckets.entry(cell_of(p)).or_default().push(i);
    }
    let offsets: Vec<Vec<isize>> = neighbour_offsets(n, cells);

    let reps = &pts[..d as usize];
    let nearest = |y: &[f64]| -> f64 {
        let base = cell_of(y);
        let mut best = f64::INFINITY;
        for off in &offsets {
            let key: Vec<usize> = base
                .iter()
                .zip(off)
                .map(|(&b, &o)| (b as isize + o).rem_euclid(cells as isize) as usize)
                .collect();
            if let Some(ids) = buckets.get(&key) {
                for &i in ids {
                    best = best.min(torus_dist(y, &pts[i]));
                }
            }
        }
        best
    };

    let worst_gap = (0..net_points)
        .into_par_iter()
        .map(|idx| {
            let rep = &reps[(idx % d) as usize];
            let mut rest = idx / d;
            let mut y = rep.clone();
            for v in &w {
                let tcoef = (rest % per_axis) as f64 / per_axis as f64;
                rest /= per_axis;
                for (yc, vc) in y.iter_mut().zip(v) {
                    *yc += tcoef * vc;
                }
            }
            for yc in y.iter_mut() {
                *yc = yc.rem_euclid(1.0);
            }
            nearest(&y)
        })
        .reduce(|| 0.0, f64::max);

    Ok(DensityReport {
        dense: worst_gap + SCREEN_SLACK < eps,
        worst_gap,
        eps,
        net_points,
        orbit_points: big_m + 1,
        l,
        d,
    })
}

/// `sum m_i x_i + m_(n+1)` is an integer, decided on exact coordinates.
fn satisfies(x: &[LinComb], m: &[BigInt]) -> bool {
    let mut acc = LinComb::zero(x[0].basis().clone());
    for (xi, mi) in x.iter().zip(m) {
        if mi.is_zero() {
            continue;
        }
        acc = acc
            .checked_add(&xi.scale(&BigRational::from_integer(mi.clone())))
            .expect("shared basis");
    }
    acc.is_rational() && acc.rational_part().is_integer()
}

fn neighbour_offsets(n: usize, cells: usize) -> Vec<Vec<isize>> {
    let span: Vec<isize> = match cells {
        1 => vec![0],
        2 => vec![0, 1],
        _ => vec![-1, 0, 1],
    };
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                span.iter().map(move |&o| {
                    let mut p = prefix.clone();
                    p.push(o);
                    p
                })
            })
            .collect();
    }
    out
}

/// Number of distinct cosets of the subtorus met by `tau^0(0), ..., tau^horizon(0)`,
/// counted through the rational values of saturated relation characters.
pub fn count_orbit_cosets(t: &TorusTranslation, horizon: u64) -> Result<u64> {
    let n = t.n();
    let s = structure(t);
    let saturated = if s.subtorus.len() == n {
        Vec::new()
    } else {
        integer_kernel(&s.subtorus, n)
    };
    // each saturated character takes a rational value on xi
    let mut values = Vec::with_capacity(saturated.len());
    for c in &saturated {
        let mut acc = LinComb::zero(t.basis().clone());
        for (x, m) in t.xi.iter().zip(c) {
            acc = acc.checked_add(&x.scale(&BigRational::from_integer(m.clone())))?;
        }
        if !acc.is_rational() {
            return Err(Error::IdentityViolation(format!(
                "character {c:?} is irrational on the orbit"
            )));
        }
        values.push(acc.rational_part().clone());
    }
    let mut seen = std::collections::HashSet::new();
    for j in 0..=horizon {
        let key: Vec<BigRational> = values
            .iter()
            .map(|v| {
                let x = v * BigInt::from(j);
                let f = x.floor();
                x - f
            })
            .collect();
        seen.insert(key);
    }
    Ok(seen.len() as u64)
}

/// gcd of the first `n` entries of a single relation.
pub fn relation_gcd(m: &[i64]) -> u64 {
    m.iter()
        .fold(0i64, |g, &x| g.gcd(&x))
        .unsigned_abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rational_torus(xs: &[(i64, i64)]) -> TorusTranslation {
        let b = Basis::new(vec![]);
        TorusTranslation::from_coeffs(b, xs.iter().map(|&(n, d)| vec![r(n, d)]).collect()).unwrap()
    }

    fn sqrt2_pair() -> TorusTranslation {
        let b = Basis::sqrts(&[2]);
        TorusTranslation::from_coeffs(b, vec![vec![r(0, 1), r(1, 2)], vec![r(0, 1), r(1, 4)]])
            .unwrap()
    }

    fn dense_pair() -> TorusTranslation {
        let b = Basis::sqrts(&[2, 3]);
        TorusTranslation::new(vec![
            LinComb::from_ints(b.clone(), &[-1, 1, 0]).unwrap(),
            LinComb::from_ints(b, &[-1, 0, 1]).unwrap(),
        ])
        .unwrap()
    }

    fn doubled() -> TorusTranslation {
        let b = Basis::sqrts(&[2]);
        // ((sqrt2 - 1)/2, 1/2 + (sqrt2 - 1)/2) = (-1/2 + sqrt2/2, sqrt2/2)
        TorusTranslation::from_coeffs(b, vec![vec![r(-1, 2), r(1, 2)], vec![r(0, 1), r(1, 2)]])
            .unwrap()
    }

    #[test]
    fn span_dims() {
        assert_eq!(rational_span_dim(&rational_torus(&[(1, 3)])), 1);
        let b = Basis::sqrts(&[2]);
        let t = TorusTranslation::new(vec![LinComb::from_ints(b, &[-1, 1]).unwrap()]).unwrap();
        assert_eq!(rational_span_dim(&t), 2);
        assert_eq!(rational_span_dim(&dense_pair()), 3);
    }

    #[test]
    fn lattices() {
        assert_eq!(relation_lattice(&sqrt2_pair()).unwrap(), vec![vec![1, -2, 0]]);
        assert!(relation_lattice(&dense_pair()).unwrap().is_empty());
        assert_eq!(
            relation_lattice(&rational_torus(&[(1, 2), (1, 3)])).unwrap(),
            vec![vec![2, 0, -1], vec![0, 3, -1]]
        );
        assert_eq!(relation_lattice(&doubled()).unwrap(), vec![vec![2, -2, 1]]);
    }

    #[test]
    fn reduction_at_construction() {
        let t = rational_torus(&[(7, 4), (-1, 3)]);
        assert_eq!(t.xi()[0].rational_part(), &r(3, 4));
        assert_eq!(t.xi()[1].rational_part(), &r(2, 3));
    }

    #[test]
    fn orbit_examples() {
        let pts = orbit_points(&rational_torus(&[(1, 3)]), 5).unwrap();
        let got: Vec<_> = pts.iter().map(|p| p[0].rational_part().clone()).collect();
        assert_eq!(got, vec![r(0, 1), r(1, 3), r(2, 3), r(0, 1), r(1, 3), r(2, 3)]);

        let pts = orbit_points(&rational_torus(&[(3, 4)]), 2).unwrap();
        let got: Vec<_> = pts.iter().map(|p| p[0].rational_part().clone()).collect();
        assert_eq!(got, vec![r(0, 1), r(3, 4), r(1, 2)]);

        let b = Basis::sqrts(&[2]);
        let t = TorusTranslation::new(vec![LinComb::from_ints(b.clone(), &[-1, 1]).unwrap()]).unwrap();
        let pts = orbit_points(&t, 2).unwrap();
        assert_eq!(pts[2][0], LinComb::from_ints(b, &[-2, 2]).unwrap());
    }

    #[test]
    fn closures() {
        let c = closure_description(&rational_torus(&[(1, 3)])).unwrap();
        assert_eq!((c.l, c.d), (0, 3));
        let reps: Vec<_> = c.representatives.iter().map(|p| p[0].rational_part().clone()).collect();
        assert_eq!(reps, vec![r(0, 1), r(1, 3), r(2, 3)]);

        let c = closure_description(&sqrt2_pair()).unwrap();
        assert_eq!((c.l, c.d), (1, 1));
        assert_eq!(c.subtorus_basis, vec![vec![2, 1]]);

        let t = doubled();
        let c = closure_description(&t).unwrap();
        assert_eq!((c.l, c.d), (1, 2));
        assert_eq!(relation_gcd(&c.relation_basis[0][..2]), 2);
        assert_eq!(count_orbit_cosets(&t, 50).unwrap(), 2);

        let c = closure_description(&dense_pair()).unwrap();
        assert_eq!((c.l, c.d), (2, 1));
    }

    #[test]
    fn coset_count_matches_for_rational_pair() {
        // (1/2, 1/3) has period 6 and no subtorus
        let t = rational_torus(&[(1, 2), (1, 3)]);
        let c = closure_description(&t).unwrap();
        assert_eq!((c.l, c.d), (0, 6));
        assert_eq!(count_orbit_cosets(&t, 40).unwrap(), 6);
    }

    #[test]
    fn density_small_cases() {
        let b = Basis::sqrts(&[2]);
        let t = TorusTranslation::new(vec![LinComb::from_ints(b, &[-1, 1]).unwrap()]).unwrap();
        let rep = density_check(&t, 0.01, 200).unwrap();
        assert!(rep.dense, "{rep:?}");

        let rep = density_check(&rational_torus(&[(1, 3)]), 0.4, 3).unwrap();
        assert!(rep.dense);
        assert_eq!(rep.worst_gap, 0.0);

        // too few points cannot cover the circle
        let b = Basis::sqrts(&[2]);
        let t = TorusTranslation::new(vec![LinComb::from_ints(b, &[-1, 1]).unwrap()]).unwrap();
        assert!(!density_check(&t, 0.01, 20).unwrap().dense);

        assert!(density_check(&doubled(), 0.05, 2000).unwrap().dense);
        assert!(density_check(&sqrt2_pair(), 0.05, 500).unwrap().dense);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"basis":["1","sqrt(2)"],"xi":[["0","1/2"],["0","1/4"]]}"#;
        let j: TorusJson = serde_json::from_str(text).unwrap();
        let t = j.into_translation(DEFAULT_MAX_BITS).unwrap();
        assert_eq!(t, sqrt2_pair());
        let v = closure_description(&t).unwrap().to_json();
        assert_eq!(v["relation_basis"], serde_json::json!([[1, -2, 0]]));
        assert_eq!(v["representatives"][0][0]["coeffs"], serde_json::json!(["0", "0"]));
    }
}
