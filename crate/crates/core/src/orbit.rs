//! Closed Reeb orbits and the Conley-Zehnder index of their iterates.
//!
//! A nondegenerate simple orbit in dimension three falls into one of three
//! classes, determined by its Floquet multipliers:
//!
//! * elliptic, multiplier `exp(2 pi i alpha)` with `alpha` in `(0,1)` irrational:
//!   `CZ(g^k) = 2kr + 2[k alpha] + 1`;
//! * even hyperbolic, positive real multiplier: `CZ(g^k) = 2kr`;
//! * odd hyperbolic, negative real multiplier: `CZ(g^k) = (2r + 1)k`.
//!
//! The integer `r` absorbs the choice of trivialization. The grading degree is
//! `CZ - 1`, and the even iterates of an odd hyperbolic orbit are bad.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactreal::QuadExt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "RawKind")]
pub enum OrbitKind {
    Elliptic { r: i64, alpha: QuadExt },
    EvenHyperbolic { r: i64 },
    OddHyperbolic { r: i64 },
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawKind {
    Elliptic { r: i64, alpha: QuadExt },
    EvenHyperbolic { r: i64 },
    OddHyperbolic { r: i64 },
}

impl TryFrom<RawKind> for OrbitKind {
    type Error = Error;
    fn try_from(raw: RawKind) -> Result<Self> {
        match raw {
            RawKind::Elliptic { r, alpha } => OrbitKind::elliptic(r, alpha),
            RawKind::EvenHyperbolic { r } => Ok(OrbitKind::EvenHyperbolic { r }),
            RawKind::OddHyperbolic { r } => Ok(OrbitKind::OddHyperbolic { r }),
        }
    }
}

impl OrbitKind {
    /// Elliptic kind; `alpha` must be irrational and lie in `(0, 1)`.
    pub fn elliptic(r: i64, alpha: QuadExt) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::Domain(format!(
                "elliptic rotation angle must be irrational, got {alpha}"
            )));
        }
        if !alpha.is_positive() || alpha.compare(&QuadExt::one())? != Ordering::Less {
            return Err(Error::Domain(format!(
                "elliptic rotation angle must lie in (0,1), got {alpha}"
            )));
        }
        Ok(OrbitKind::Elliptic { r, alpha })
    }

    pub fn r(&self) -> i64 {
        match self {
            OrbitKind::Elliptic { r, .. }
            | OrbitKind::EvenHyperbolic { r }
            | OrbitKind::OddHyperbolic { r } => *r,
        }
    }

    pub fn alpha(&self) -> Option<&QuadExt> {
        match self {
            OrbitKind::Elliptic { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, OrbitKind::Elliptic { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            OrbitKind::Elliptic { .. } => "elliptic",
            OrbitKind::EvenHyperbolic { .. } => "even_hyperbolic",
            OrbitKind::OddHyperbolic { .. } => "odd_hyperbolic",
        }
    }

    /// Conley-Zehnder index of the `k`-th iterate.
    pub fn cz(&self, k: u64) -> i64 {
        assert!(k >= 1, "iterates start at k = 1");
        let k128 = i128::from(k);
        let cz = match self {
            OrbitKind::Elliptic { r, alpha } => {
                let fl = alpha
                    .floor_of_multiple(&BigInt::from(k))
                    .to_i128()
                    .expect("floor(k alpha) fits in i128");
                2 * k128 * i128::from(*r) + 2 * fl + 1
            }
            OrbitKind::EvenHyperbolic { r } => 2 * k128 * i128::from(*r),
            OrbitKind::OddHyperbolic { r } => (2 * i128::from(*r) + 1) * k128,
        };
        i64::try_from(cz).expect("Conley-Zehnder index exceeds i64")
    }

    /// Asymptotic degree growth per iterate is positive, so degrees are
    /// eventually above any cap.
    pub fn degree_grows(&self) -> bool {
        match self {
            OrbitKind::Elliptic { r, .. } => *r >= 0,
            OrbitKind::EvenHyperbolic { r } => *r >= 1,
            OrbitKind::OddHyperbolic { r } => *r >= 0,
        }
    }
}

/// A simple closed Reeb orbit; `action` is measured in units of `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrbit")]
pub struct SimpleOrbit {
    pub label: String,
    pub action: QuadExt,
    pub kind: OrbitKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    label: String,
    action: QuadExt,
    kind: OrbitKind,
}

impl TryFrom<RawOrbit> for SimpleOrbit {
    type Error = Error;
    fn try_from(raw: RawOrbit) -> Result<Self> {
        SimpleOrbit::new(raw.label, raw.action, raw.kind)
    }
}

impl SimpleOrbit {
    pub fn new(label: impl Into<String>, action: QuadExt, kind: OrbitKind) -> Result<Self> {
        let label = label.into();
        if !action.is_positive() {
            return Err(Error::Domain(format!(
                "orbit {label} must have positive action, got {action}"
            )));
        }
        Ok(Self {
            label,
            action,
            kind,
        })
    }

    pub fn iterate(&self, k: u64) -> IteratedOrbit {
        IteratedOrbit {
            label: self.label.clone(),
            orbit_index: 0,
            k,
            cz: self.kind.cz(k),
            degree: degree(self, k),
            action: self.action.scale_int(k),
            good: is_good(self, k),
        }
    }
}

/// The `k`-fold cover of a simple orbit together with its grading data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IteratedOrbit {
    /// Label of the underlying simple orbit.
    pub label: String,
    /// Position of the simple orbit within its spectrum.
    pub orbit_index: usize,
    pub k: u64,
    pub cz: i64,
    pub degree: i64,
    pub action: QuadExt,
    pub good: bool,
}

impl IteratedOrbit {
    /// Short name such as `g1^3`.
    pub fn name(&self) -> String {
        format!("{}^{}", self.label, self.k)
    }
}

pub fn cz_index(o: &SimpleOrbit, k: u64) -> i64 {
    o.kind.cz(k)
}

pub fn degree(o: &SimpleOrbit, k: u64) -> i64 {
    o.kind.cz(k) - 1
}

/// Even iterates of odd hyperbolic orbits are bad; everything else is good.
pub fn is_good(o: &SimpleOrbit, k: u64) -> bool {
    !(matches!(o.kind, OrbitKind::OddHyperbolic { .. }) && k.is_multiple_of(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Superadditivity {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Compares `|g^(k1+...+ks)|` against `|g^k1| + ... + |g^ks|`.
pub fn check_superadditivity(o: &SimpleOrbit, parts: &[u64]) -> Result<Superadditivity> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Domain("partition parts must be positive and nonempty".into()));
    }
    let total: u64 = parts.iter().sum();
    let lhs = degree(o, total);
    let rhs = parts.iter().map(|&k| degree(o, k)).sum();
    Ok(Superadditivity {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityWitness {
    pub label: String,
    pub k: u64,
    pub cz: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convexity {
    pub convex: bool,
    pub k_max: u64,
    pub witness: Option<ConvexityWitness>,
}

/// Checks `CZ(g^k) >= 3` for every orbit and every `k <= k_max`.
///
/// For `r >= 0` the index is nondecreasing in `k`, so the first iterate
/// decides; the cap only bounds the scan when `r < 0`.
pub fn is_dynamically_convex(orbits: &[SimpleOrbit], k_max: u64) -> Convexity {
    for o in orbits {
        for k in 1..=k_max.max(1) {
            let cz = o.kind.cz(k);
            if cz < 3 {
                return Convexity {
                    convex: false,
                    k_max,
                    witness: Some(ConvexityWitness {
                        label: o.label.clone(),
                        k,
                        cz,
                    }),
                };
            }
            if monotone_from_first(&o.kind) {
                break;
            }
        }
    }
    Convexity {
        convex: true,
        k_max,
        witness: None,
    }
}

fn monotone_from_first(kind: &OrbitKind) -> bool {
    match kind {
        OrbitKind::Elliptic { r, .. }
        | OrbitKind::OddHyperbolic { r }
        | OrbitKind::EvenHyperbolic { r } => *r >= 0,
    }
}
