//! Reeb orbit spectra: ellipsoids, iterate enumeration, degree ranks,
//! the action/degree ordering condition and degree collisions.
//!
//! Actions are measured in units of `pi`, so the ellipsoid
//! `|z1|^2/a1 + |z2|^2/a2 = 1` has simple orbits of action `a1` and `a2`.

mod classify;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactreal::QuadExt;
use crate::orbit::{IteratedOrbit, OrbitKind, SimpleOrbit};

pub use classify::{classify, classify_with, ClassificationResult, ClassifyOptions, Verdict};

/// Degree cap used when none is given.
pub const DEFAULT_DEGREE_CAP: i64 = 200;

/// An irrational ellipsoid `E(a1, a2)` with `0 < a1 < a2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEllipsoid")]
pub struct EllipsoidParams {
    pub a1: QuadExt,
    pub a2: QuadExt,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEllipsoid {
    a1: QuadExt,
    a2: QuadExt,
}

impl TryFrom<RawEllipsoid> for EllipsoidParams {
    type Error = Error;
    fn try_from(raw: RawEllipsoid) -> Result<Self> {
        Self::new(raw.a1, raw.a2)
    }
}

impl EllipsoidParams {
    pub fn new(a1: QuadExt, a2: QuadExt) -> Result<Self> {
        if !a1.is_positive() {
            return Err(Error::Domain(format!("a1 must be positive, got {a1}")));
        }
        if a1.compare(&a2)?.is_ge() {
            return Err(Error::Domain(format!("need a1 < a2, got a1 = {a1}, a2 = {a2}")));
        }
        let ratio = a2.checked_div(&a1)?;
        if ratio.is_rational() {
            return Err(Error::Domain(format!("a2/a1 = {ratio} is rational")));
        }
        Ok(Self { a1, a2 })
    }

    /// `a2 / a1`, irrational and greater than one.
    pub fn ratio(&self) -> QuadExt {
        self.a2.checked_div(&self.a1).expect("validated at construction")
    }
}

/// A finite set of simple orbits with distinct labels and comparable actions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    orbits: Vec<SimpleOrbit>,
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let orbits = Vec::<SimpleOrbit>::deserialize(d)?;
        Spectrum::new(orbits).map_err(serde::de::Error::custom)
    }
}

impl Spectrum {
    pub fn new(orbits: Vec<SimpleOrbit>) -> Result<Self> {
        for (i, a) in orbits.iter().enumerate() {
            for b in &orbits[i + 1..] {
                if a.label == b.label {
                    return Err(Error::Domain(format!("duplicate orbit label {:?}", a.label)));
                }
                a.action.common_field(&b.action)?;
            }
        }
        Ok(Self { orbits })
    }

    pub fn orbits(&self) -> &[SimpleOrbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Bound on the iterates to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cap {
    /// All iterates with action at most this value.
    Action(QuadExt),
    /// All iterates with degree at most this value.
    Degree(i64),
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Action(a) => write!(f, "action <= {a}"),
            Cap::Degree(d) => write!(f, "degree <= {d}"),
        }
    }
}

/// Multiplicity bound for orbits whose degree never exceeds a degree cap.
pub fn stalled_multiplicity(degree_cap: i64) -> u64 {
    degree_cap.max(2) as u64
}

/// The two simple orbits of an irrational ellipsoid.
///
/// `g1` has action `a1`, `r = 1`, `alpha = a1/a2`; `g2` has action `a2`,
/// `r = [a2/a1] + 1`, `alpha = a2/a1 - [a2/a1]`.
pub fn ellipsoid_spectrum(e: &EllipsoidParams) -> Result<Spectrum> {
    let rho = e.ratio();
    let whole = rho.floor();
    let r2 = whole
        .to_i64()
        .and_then(|w| w.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("[a2/a1] = {whole} exceeds i64")))?;
    let g1 = SimpleOrbit::new("gamma1", e.a1.clone(), OrbitKind::elliptic(1, rho.recip()?)?)?;
    let g2 = SimpleOrbit::new("gamma2", e.a2.clone(), OrbitKind::elliptic(r2, rho.fract())?)?;
    Spectrum::new(vec![g1, g2])
}

fn iterates_of(index: usize, o: &SimpleOrbit, cap: &Cap) -> Result<Vec<IteratedOrbit>> {
    let mut out = Vec::new();
    let make = |k: u64| {
        let mut it = o.iterate(k);
        it.orbit_index = index;
        it
    };
    match cap {
        Cap::Action(a) => {
            let k_max = a.checked_div(&o.action)?.floor();
            let k_max = if k_max < BigInt::from(1) {
                0
            } else {
                k_max
                    .to_u64()
                    .ok_or_else(|| Error::Domain(format!("action cap {a} allows too many iterates")))?
            };
            out.extend((1..=k_max).map(make));
        }
        Cap::Degree(d) => {
            let bound = if o.kind.degree_grows() {
                u64::MAX
            } else {
                stalled_multiplicity(*d)
            };
            let mut k = 1;
            while k <= bound {
                let it = make(k);
                if it.degree > *d {
                    // degrees are nondecreasing in k for growing kinds
                    if o.kind.degree_grows() {
                        break;
                    }
                } else {
                    out.push(it);
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

/// All iterates within the cap, grouped by orbit then multiplicity.
fn enumerate_unsorted(s: &Spectrum, cap: &Cap) -> Result<Vec<IteratedOrbit>> {
    let per_orbit = s
        .orbits
        .par_iter()
        .enumerate()
        .map(|(i, o)| iterates_of(i, o, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_orbit.into_iter().flatten().collect())
}

/// Sorts by exact action; on a tie returns the first tied pair instead.
fn sort_by_action(
    mut its: Vec<IteratedOrbit>,
) -> std::result::Result<Vec<IteratedOrbit>, Box<(IteratedOrbit, IteratedOrbit)>> {
    its.sort_by(|a, b| {
        a.action
            .compare(&b.action)
            .expect("actions share a field")
            .then((a.orbit_index, a.k).cmp(&(b.orbit_index, b.k)))
    });
    if let Some(w) = its.windows(2).find(|w| w[0].action == w[1].action) {
        return Err(Box::new((w[0].clone(), w[1].clone())));
    }
    Ok(its)
}

fn tie_error(a: &IteratedOrbit, b: &IteratedOrbit) -> Error {
    Error::ActionTie {
        first: a.name(),
        second: b.name(),
        action: a.action.to_string(),
    }
}

/// Iterates within `cap`, sorted by exact action; good and bad both included.
pub fn enumerate_iterates(s: &Spectrum, cap: &Cap) -> Result<Vec<IteratedOrbit>> {
    sort_by_action(enumerate_unsorted(s, cap)?).map_err(|pair| tie_error(&pair.0, &pair.1))
}

/// Whether degree order and action order agree on the good iterates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionO {
    pub holds: bool,
    /// Number of good iterates inspected.
    pub checked: usize,
    /// First adjacent pair (in action order) whose degrees fail to increase.
    pub violation: Option<[IteratedOrbit; 2]>,
}

/// Checks that degrees strictly increase along the action-sorted good iterates.
pub fn check_condition_o(s: &Spectrum, cap: &Cap) -> Result<ConditionO> {
    let sorted = enumerate_iterates(s, cap)?;
    Ok(condition_o_on(&sorted))
}

fn condition_o_on(sorted: &[IteratedOrbit]) -> ConditionO {
    let good: Vec<&IteratedOrbit> = sorted.iter().filter(|i| i.good).collect();
    let violation = good
        .windows(2)
        .find(|w| w[1].degree <= w[0].degree)
        .map(|w| [w[0].clone(), w[1].clone()]);
    ConditionO {
        holds: violation.is_none(),
        checked: good.len(),
        violation,
    }
}

/// Number of good generators in each degree up to a cap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub degree_cap: i64,
    pub ranks: BTreeMap<i64, u64>,
}

impl Ranks {
    /// Rank in degree `d`; zero when no generator has that degree.
    pub fn get(&self, d: i64) -> u64 {
        self.ranks.get(&d).copied().unwrap_or(0)
    }
}

/// Chain-level ranks: good iterates counted per degree, degrees `<= degree_cap`.
pub fn hc_ranks(s: &Spectrum, degree_cap: i64) -> Ranks {
    let its = enumerate_unsorted(s, &Cap::Degree(degree_cap)).expect("degree caps cannot fail");
    let mut ranks = BTreeMap::new();
    for it in its.iter().filter(|i| i.good) {
        *ranks.entry(it.degree).or_insert(0) += 1;
    }
    Ranks { degree_cap, ranks }
}

/// Two distinct good iterates of the same degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub degree: i64,
    /// Ordered by action.
    pub pair: [IteratedOrbit; 2],
}

fn by_action_then_index(a: &IteratedOrbit, b: &IteratedOrbit) -> std::cmp::Ordering {
    a.action
        .compare(&b.action)
        .expect("actions share a field")
        .then((a.orbit_index, a.k).cmp(&(b.orbit_index, b.k)))
}

fn collisions_in(good: &[IteratedOrbit]) -> Option<Collision> {
    let mut by_degree: BTreeMap<i64, Vec<&IteratedOrbit>> = BTreeMap::new();
    for it in good {
        by_degree.entry(it.degree).or_default().push(it);
    }
    by_degree.into_iter().find(|(_, v)| v.len() >= 2).map(|(degree, mut v)| {
        v.sort_by(|a, b| by_action_then_index(a, b));
        Collision {
            degree,
            pair: [v[0].clone(), v[1].clone()],
        }
    })
}

/// Smallest degree `<= degree_cap` carried by two good iterates, searched exhaustively.
pub fn find_degree_collision(s: &Spectrum, degree_cap: i64) -> Option<Collision> {
    let its = enumerate_unsorted(s, &Cap::Degree(degree_cap)).expect("degree caps cannot fail");
    let good: Vec<IteratedOrbit> = its.into_iter().filter(|i| i.good).collect();
    collisions_in(&good)
}

/// `degree(o, k+1) - degree(o, k)` for `k = 1..K-1`; each is `2r` or `2r + 2`.
pub fn degree_gap_structure(o: &SimpleOrbit, big_k: u64) -> Result<Vec<i64>> {
    if !o.kind.is_elliptic() {
        return Err(Error::Kind(format!(
            "degree gaps need an elliptic orbit, {} is {}",
            o.label,
            o.kind.tag()
        )));
    }
    if big_k < 2 {
        return Err(Error::Domain(format!("need K >= 2, got {big_k}")));
    }
    let degrees: Vec<i64> = (1..=big_k).map(|k| o.kind.cz(k) - 1).collect();
    Ok(degrees.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Rotation data of the ellipsoid realizing an action ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub rho: QuadExt,
    pub alpha1: QuadExt,
    pub alpha2: QuadExt,
    pub r1: i64,
    pub r2: i64,
    pub ellipsoid: EllipsoidParams,
}

/// For `rho = A2/A1 > 1` irrational: `alpha1 = 1/rho`, `alpha2 = rho - [rho]`,
/// `r1 = 1`, `r2 = [rho] + 1`, realized by `E(1, rho)`.
///
/// Before returning, the identities `alpha1 = A1/A2`,
/// `A2/A1 = (r2 + alpha2)/(1 + alpha1)` and `r2 = [1/alpha1] + 1` are
/// checked in exact arithmetic.
pub fn realize_from_ratio(rho: &QuadExt) -> Result<Realization> {
    if rho.is_rational() {
        return Err(Error::Domain(format!("ratio {rho} is rational")));
    }
    if rho.compare(&QuadExt::one())?.is_le() {
        return Err(Error::Domain(format!("ratio {rho} must exceed 1")));
    }
    let whole = rho.floor();
    let r2 = whole
        .to_i64()
        .and_then(|w| w.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("[{rho}] exceeds i64")))?;
    let alpha1 = rho.recip()?;
    let alpha2 = rho.fract();
    let ellipsoid = EllipsoidParams::new(QuadExt::one(), rho.clone())?;

    let a1_over_a2 = ellipsoid.a1.checked_div(&ellipsoid.a2)?;
    if a1_over_a2 != alpha1 {
        return Err(Error::IdentityViolation(format!("alpha1 {alpha1} != A1/A2 {a1_over_a2}")));
    }
    let ratio = alpha2
        .add_int(r2)
        .checked_div(&alpha1.add_int(1))?;
    if &ratio != rho {
        return Err(Error::IdentityViolation(format!(
            "(r2 + alpha2)/(1 + alpha1) = {ratio} differs from {rho}"
        )));
    }
    if alpha1.recip()?.floor() + 1 != BigInt::from(r2) {
        return Err(Error::IdentityViolation(format!("r2 = {r2} != [1/alpha1] + 1")));
    }
    Ok(Realization {
        rho: rho.clone(),
        alpha1,
        alpha2,
        r1: 1,
        r2,
        ellipsoid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    fn ell(label: &str, action: &str, r: i64, alpha: &str) -> SimpleOrbit {
        SimpleOrbit::new(label, q(action), OrbitKind::elliptic(r, q(alpha)).unwrap()).unwrap()
    }

    fn odd(label: &str, action: &str, r: i64) -> SimpleOrbit {
        SimpleOrbit::new(label, q(action), OrbitKind::OddHyperbolic { r }).unwrap()
    }

    fn names(its: &[IteratedOrbit]) -> Vec<String> {
        its.iter().map(IteratedOrbit::name).collect()
    }

    fn e1sqrt2() -> Spectrum {
        ellipsoid_spectrum(&EllipsoidParams::new(q("1"), q("sqrt(2)")).unwrap()).unwrap()
    }

    #[test]
    fn ellipsoid_data() {
        let s = e1sqrt2();
        let [g1, g2] = s.orbits() else { panic!() };
        assert_eq!(g1.kind, OrbitKind::elliptic(1, q("sqrt(2)/2")).unwrap());
        assert_eq!(g2.kind, OrbitKind::elliptic(2, q("sqrt(2)-1")).unwrap());
        assert_eq!(g2.action, q("sqrt(2)"));

        let s = ellipsoid_spectrum(&EllipsoidParams::new(q("1"), q("(1+sqrt(5))/2")).unwrap()).unwrap();
        assert_eq!(s.orbits()[1].kind, OrbitKind::elliptic(2, q("(sqrt(5)-1)/2")).unwrap());

        let s2 = ellipsoid_spectrum(&EllipsoidParams::new(q("2"), q("2*sqrt(2)")).unwrap()).unwrap();
        for (a, b) in s2.orbits().iter().zip(e1sqrt2().orbits()) {
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.action, b.action.scale_int(2));
        }

        assert!(EllipsoidParams::new(q("1"), q("2")).is_err());
        assert!(EllipsoidParams::new(q("sqrt(2)"), q("1")).is_err());
    }

    #[test]
    fn enumeration_order() {
        let its = enumerate_iterates(&e1sqrt2(), &Cap::Degree(24)).unwrap();
        assert_eq!(
            names(&its),
            [
                "gamma1^1", "gamma2^1", "gamma1^2", "gamma2^2", "gamma1^3", "gamma1^4", "gamma2^3",
                "gamma1^5", "gamma2^4", "gamma1^6", "gamma1^7", "gamma2^5"
            ]
        );
        let degrees: Vec<i64> = its.iter().map(|i| i.degree).collect();
        assert_eq!(degrees, (1..=12).map(|i| 2 * i).collect::<Vec<_>>());

        let single = Spectrum::new(vec![ell("g", "1", 1, "sqrt(2)/2")]).unwrap();
        let its = enumerate_iterates(&single, &Cap::Degree(12)).unwrap();
        assert_eq!(its.iter().map(|i| i.degree).collect::<Vec<_>>(), [2, 6, 10, 12]);
    }

    #[test]
    fn rational_actions_tie() {
        let s = Spectrum::new(vec![ell("g1", "1", 1, "sqrt(2)/2"), ell("g2", "2", 1, "sqrt(3)-1")]).unwrap();
        match enumerate_iterates(&s, &Cap::Degree(12)) {
            Err(Error::ActionTie { first, second, action }) => {
                assert_eq!((first.as_str(), second.as_str(), action.as_str()), ("g1^2", "g2^1", "2"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn action_cap() {
        let its = enumerate_iterates(&e1sqrt2(), &Cap::Action(q("3"))).unwrap();
        assert_eq!(names(&its), ["gamma1^1", "gamma2^1", "gamma1^2", "gamma2^2", "gamma1^3"]);
        assert!(matches!(
            enumerate_iterates(&e1sqrt2(), &Cap::Action(q("sqrt(3)"))),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn condition_o() {
        let c = check_condition_o(&e1sqrt2(), &Cap::Action(q("20"))).unwrap();
        assert!(c.holds);
        let s = Spectrum::new(vec![ell("g1", "1", 1, "sqrt(2)/2"), ell("g2", "7*sqrt(2)", 1, "sqrt(3)-1")]).unwrap();
        let c = check_condition_o(&s, &Cap::Action(q("20"))).unwrap();
        assert!(!c.holds);
        let [a, b] = c.violation.unwrap();
        assert_eq!((a.name(), b.name()), ("g1^9".into(), "g2^1".into()));
        let single = Spectrum::new(vec![odd("h", "1", 1)]).unwrap();
        assert!(check_condition_o(&single, &Cap::Degree(100)).unwrap().holds);
    }

    #[test]
    fn ranks() {
        let r = hc_ranks(&e1sqrt2(), 24);
        for d in -5..30 {
            let want = u64::from((2..=24).contains(&d) && d % 2 == 0);
            assert_eq!(r.get(d), want, "degree {d}");
        }
        let s = Spectrum::new(vec![odd("a", "1", 1), odd("b", "sqrt(2)", 2)]).unwrap();
        assert_eq!(hc_ranks(&s, 14).get(14), 2);
        assert!(hc_ranks(&Spectrum::default(), 50).ranks.is_empty());
    }

    #[test]
    fn collisions() {
        let s = Spectrum::new(vec![odd("a", "1", 1), ell("b", "sqrt(2)", 2, "sqrt(2)-1")]).unwrap();
        let c = find_degree_collision(&s, 100).unwrap();
        assert_eq!(c.degree, 8);
        // b^2 has action 2 sqrt(2) < 3, so it comes first
        assert_eq!((c.pair[0].name(), c.pair[1].name()), ("b^2".into(), "a^3".into()));

        let s = Spectrum::new(vec![odd("a", "1", 1), odd("b", "sqrt(2)", 2)]).unwrap();
        let c = find_degree_collision(&s, 100).unwrap();
        assert_eq!(c.degree, 14);
        assert_eq!((c.pair[0].name(), c.pair[1].name()), ("b^3".into(), "a^5".into()));

        assert!(find_degree_collision(&e1sqrt2(), 200).is_none());
    }

    #[test]
    fn gaps() {
        let g = degree_gap_structure(&ell("g", "1", 1, "sqrt(2)/2"), 6).unwrap();
        assert_eq!(g, [4, 4, 2, 4, 4]);
        let g = degree_gap_structure(&ell("g", "1", 1, "(sqrt(5)-1)/2"), 4).unwrap();
        assert_eq!(g, [4, 2, 4]);
        let g = degree_gap_structure(&ell("g", "1", 2, "sqrt(2)-1"), 3).unwrap();
        assert!(g.iter().all(|d| *d == 4 || *d == 6));
        assert!(matches!(degree_gap_structure(&odd("h", "1", 1), 3), Err(Error::Kind(_))));
    }

    #[test]
    fn realizations() {
        let r = realize_from_ratio(&q("sqrt(2)")).unwrap();
        assert_eq!((r.alpha1.clone(), r.alpha2.clone(), r.r1, r.r2), (q("sqrt(2)/2"), q("sqrt(2)-1"), 1, 2));
        let r = realize_from_ratio(&q("(1+sqrt(5))/2")).unwrap();
        assert_eq!((r.r2, r.alpha2), (2, q("(sqrt(5)-1)/2")));
        let r = realize_from_ratio(&q("1+sqrt(2)")).unwrap();
        assert_eq!((r.r2, r.alpha2, r.alpha1), (3, q("sqrt(2)-1"), q("sqrt(2)-1")));
        assert!(realize_from_ratio(&q("3/2")).is_err());
        assert!(realize_from_ratio(&q("sqrt(2)/2")).is_err());
    }

    #[test]
    fn spectrum_json() {
        let s = e1sqrt2();
        let text = serde_json::to_string(&s).unwrap();
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let dup = r#"[{"label":"a","action":"1","kind":{"odd_hyperbolic":{"r":1}}},
                      {"label":"a","action":"2","kind":{"odd_hyperbolic":{"r":1}}}]"#;
        assert!(serde_json::from_str::<Spectrum>(dup).is_err());
    }
}
