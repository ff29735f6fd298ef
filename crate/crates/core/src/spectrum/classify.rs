//! Deciding whether a spectrum can carry a vanishing differential.
//!
//! A spectrum passes when, up to the degree cap, it has exactly one good
//! generator in every positive even degree and nothing else, and when the
//! action order of its iterates matches their degree order. Checks run in a
//! fixed order and the first failure is reported with a witness:
//!
//! 1. dynamical convexity (`CZ >= 3`, optional);
//! 2. no good iterate of odd degree;
//! 3. no good iterate of degree `<= 0`;
//! 4. no two good iterates share a degree, then no even degree in `[2, cap]` is missing;
//! 5. action order agrees with degree order;
//! 6. exactly two simple orbits, matching the ellipsoid built from their action ratio.

use serde::Serialize;

use super::{
    collisions_in, condition_o_on, enumerate_unsorted, realize_from_ratio, sort_by_action, Cap,
    EllipsoidParams, Spectrum,
};
use crate::error::{Error, Result};
use crate::exactreal::QuadExt;
use crate::orbit::{is_dynamically_convex, ConvexityWitness, IteratedOrbit, OrbitKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    ConsistentTwoOrbit {
        ellipsoid: EllipsoidParams,
        alpha1: QuadExt,
        alpha2: QuadExt,
        r1: i64,
        r2: i64,
    },
    InconsistentCollision {
        degree: i64,
        witness: [IteratedOrbit; 2],
    },
    InconsistentGap {
        missing_degree: i64,
    },
    NotDynamicallyConvex {
        witness: ConvexityWitness,
    },
    OddDegreePresence {
        witness: IteratedOrbit,
    },
    NonPositiveDegree {
        witness: IteratedOrbit,
    },
    ActionTie {
        witness: [IteratedOrbit; 2],
    },
    ConditionOViolation {
        witness: [IteratedOrbit; 2],
    },
    /// Every check passed to the cap but the spectrum does not have two simple orbits.
    InconclusiveAtCap {
        orbit_count: usize,
    },
    /// Two orbits passed every check yet differ from the ellipsoid their actions predict.
    RealizationMismatch {
        reason: String,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::ConsistentTwoOrbit { .. } => "ConsistentTwoOrbit",
            Verdict::InconsistentCollision { .. } => "InconsistentCollision",
            Verdict::InconsistentGap { .. } => "InconsistentGap",
            Verdict::NotDynamicallyConvex { .. } => "NotDynamicallyConvex",
            Verdict::OddDegreePresence { .. } => "OddDegreePresence",
            Verdict::NonPositiveDegree { .. } => "NonPositiveDegree",
            Verdict::ActionTie { .. } => "ActionTie",
            Verdict::ConditionOViolation { .. } => "ConditionOViolation",
            Verdict::InconclusiveAtCap { .. } => "InconclusiveAtCap",
            Verdict::RealizationMismatch { .. } => "RealizationMismatch",
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::ConsistentTwoOrbit { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Run the dynamical convexity check first.
    pub check_convexity: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            check_convexity: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub degree_cap: i64,
    pub orbit_count: usize,
    pub good_iterates: usize,
    /// Bad iterates within the cap; they never count toward any degree.
    pub bad_iterates: Vec<String>,
}

/// [`classify_with`] using the default options.
pub fn classify(s: &Spectrum, degree_cap: i64) -> Result<ClassificationResult> {
    classify_with(s, degree_cap, &ClassifyOptions::default())
}

pub fn classify_with(
    s: &Spectrum,
    degree_cap: i64,
    opts: &ClassifyOptions,
) -> Result<ClassificationResult> {
    if degree_cap < 4 {
        return Err(Error::Domain(format!("degree cap must be at least 4, got {degree_cap}")));
    }
    let all = enumerate_unsorted(s, &Cap::Degree(degree_cap))?;
    let (good, bad): (Vec<IteratedOrbit>, Vec<IteratedOrbit>) = all.iter().cloned().partition(|i| i.good);
    let finish = |verdict| ClassificationResult {
        verdict,
        degree_cap,
        orbit_count: s.len(),
        good_iterates: good.len(),
        bad_iterates: bad.iter().map(IteratedOrbit::name).collect(),
    };

    if opts.check_convexity {
        let c = is_dynamically_convex(s.orbits(), degree_cap.max(1) as u64);
        if let Some(witness) = c.witness {
            return Ok(finish(Verdict::NotDynamicallyConvex { witness }));
        }
    }

    let first_by_degree = |pred: &dyn Fn(&IteratedOrbit) -> bool| {
        good.iter()
            .filter(|i| pred(i))
            .min_by_key(|i| (i.degree, i.orbit_index, i.k))
            .cloned()
    };
    if let Some(witness) = first_by_degree(&|i| i.degree.rem_euclid(2) == 1) {
        return Ok(finish(Verdict::OddDegreePresence { witness }));
    }
    if let Some(witness) = first_by_degree(&|i| i.degree <= 0) {
        return Ok(finish(Verdict::NonPositiveDegree { witness }));
    }

    if let Some(c) = collisions_in(&good) {
        return Ok(finish(Verdict::InconsistentCollision {
            degree: c.degree,
            witness: c.pair,
        }));
    }
    let present: std::collections::BTreeSet<i64> = good.iter().map(|i| i.degree).collect();
    if let Some(missing_degree) = (1..=degree_cap / 2).map(|h| 2 * h).find(|d| !present.contains(d)) {
        return Ok(finish(Verdict::InconsistentGap { missing_degree }));
    }

    let sorted = match sort_by_action(all.clone()) {
        Ok(v) => v,
        Err(pair) => {
            let (a, b) = *pair;
            return Ok(finish(Verdict::ActionTie { witness: [a, b] }));
        }
    };
    if let Some(witness) = condition_o_on(&sorted).violation {
        return Ok(finish(Verdict::ConditionOViolation { witness }));
    }

    let [o1, o2] = s.orbits() else {
        return Ok(finish(Verdict::InconclusiveAtCap {
            orbit_count: s.len(),
        }));
    };
    let (small, large) = if o1.action.compare(&o2.action)?.is_lt() {
        (o1, o2)
    } else {
        (o2, o1)
    };
    let rho = large.action.checked_div(&small.action)?;
    let real = match realize_from_ratio(&rho) {
        Ok(r) => r,
        Err(e) => {
            return Ok(finish(Verdict::RealizationMismatch {
                reason: e.to_string(),
            }))
        }
    };
    let want1 = OrbitKind::elliptic(real.r1, real.alpha1.clone())?;
    let want2 = OrbitKind::elliptic(real.r2, real.alpha2.clone())?;
    if small.kind != want1 || large.kind != want2 {
        return Ok(finish(Verdict::RealizationMismatch {
            reason: format!(
                "action ratio {rho} predicts {} = {want1:?} and {} = {want2:?}",
                small.label, large.label
            ),
        }));
    }
    let ellipsoid = EllipsoidParams::new(small.action.clone(), large.action.clone())?;
    Ok(finish(Verdict::ConsistentTwoOrbit {
        ellipsoid,
        alpha1: real.alpha1,
        alpha2: real.alpha2,
        r1: real.r1,
        r2: real.r2,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::{ellipsoid_spectrum, EllipsoidParams};
    use super::*;
    use crate::orbit::SimpleOrbit;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    fn orbit(label: &str, action: &str, kind: OrbitKind) -> SimpleOrbit {
        SimpleOrbit::new(label, q(action), kind).unwrap()
    }

    #[test]
    fn ellipsoid_is_consistent() {
        let s = ellipsoid_spectrum(&EllipsoidParams::new(q("1"), q("sqrt(2)")).unwrap()).unwrap();
        let c = classify(&s, 200).unwrap();
        match c.verdict {
            Verdict::ConsistentTwoOrbit { alpha1, alpha2, r1, r2, ellipsoid } => {
                assert_eq!((alpha1, alpha2, r1, r2), (q("sqrt(2)/2"), q("sqrt(2)-1"), 1, 2));
                assert_eq!(ellipsoid.a2, q("sqrt(2)"));
            }
            v => panic!("{v:?}"),
        }
        assert!(c.bad_iterates.is_empty());
    }

    #[test]
    fn two_odd_hyperbolic_collide() {
        let s = Spectrum::new(vec![
            orbit("g1", "1", OrbitKind::OddHyperbolic { r: 1 }),
            orbit("g2", "sqrt(2)", OrbitKind::OddHyperbolic { r: 2 }),
        ])
        .unwrap();
        let c = classify(&s, 100).unwrap();
        match &c.verdict {
            Verdict::InconsistentCollision { degree, witness } => {
                assert_eq!(*degree, 14);
                assert_eq!(witness[0].name(), "g2^3");
                assert_eq!(witness[1].name(), "g1^5");
            }
            v => panic!("{v:?}"),
        }
        assert!(c.bad_iterates.contains(&"g1^2".to_string()));
    }

    #[test]
    fn single_elliptic_has_gap() {
        let s = Spectrum::new(vec![orbit("g", "1", OrbitKind::elliptic(1, q("sqrt(2)/2")).unwrap())]).unwrap();
        assert_eq!(classify(&s, 100).unwrap().verdict, Verdict::InconsistentGap { missing_degree: 4 });
        let empty = classify(&Spectrum::default(), 10).unwrap();
        assert_eq!(empty.verdict, Verdict::InconsistentGap { missing_degree: 2 });
    }

    #[test]
    fn convexity_and_odd_degrees() {
        let s = Spectrum::new(vec![
            orbit("h", "1", OrbitKind::EvenHyperbolic { r: 1 }),
            orbit("e", "sqrt(2)", OrbitKind::elliptic(0, q("sqrt(2)/2")).unwrap()),
        ])
        .unwrap();
        let c = classify(&s, 200).unwrap();
        assert_eq!(c.verdict.tag(), "NotDynamicallyConvex");
        let loose = classify_with(&s, 200, &ClassifyOptions { check_convexity: false }).unwrap();
        match loose.verdict {
            Verdict::OddDegreePresence { witness } => assert_eq!((witness.name(), witness.degree), ("h^1".into(), 1)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn ties_and_order() {
        let tie = Spectrum::new(vec![
            orbit("a", "1", OrbitKind::elliptic(1, q("sqrt(2)/2")).unwrap()),
            orbit("b", "2", OrbitKind::elliptic(2, q("sqrt(2)-1")).unwrap()),
        ])
        .unwrap();
        // degrees of a: 2,6,10,12,..., b: 4,8,... and a^2 / b^1 share action 2
        let v = classify(&tie, 12).unwrap().verdict;
        assert_eq!(v.tag(), "ActionTie", "{v:?}");

        // right grading, wrong actions: swap which orbit is cheaper
        let swapped = Spectrum::new(vec![
            orbit("a", "sqrt(2)", OrbitKind::elliptic(1, q("sqrt(2)/2")).unwrap()),
            orbit("b", "1", OrbitKind::elliptic(2, q("sqrt(2)-1")).unwrap()),
        ])
        .unwrap();
        assert_eq!(classify(&swapped, 24).unwrap().verdict.tag(), "ConditionOViolation");
    }

    #[test]
    fn json_has_verdict_tag() {
        let c = classify(&Spectrum::default(), 10).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "InconsistentGap");
        assert_eq!(v["missing_degree"], 2);
        assert_eq!(v["degree_cap"], 10);
    }
}
