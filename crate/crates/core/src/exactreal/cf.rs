//! Regular continued fractions of quadratic irrationals.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::quad::QuadExt;
use crate::error::{Error, Result};

/// States visited while looking for the period before giving up.
const PERIOD_SEARCH_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    /// The first `n_terms` partial quotients `[a0; a1, a2, ...]`.
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub quotients: Vec<BigInt>,
    /// Quotients before the periodic part, once the period is known.
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub preperiod: Vec<BigInt>,
    /// The repeating block; empty if the search cap was hit first.
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub period: Vec<BigInt>,
}

/// `(P + sqrt(D)) / Q` with `Q | D - P^2`; the classical surd recurrence.
#[derive(Clone, PartialEq, Eq, Hash)]
struct SurdState {
    p: BigInt,
    q: BigInt,
}

struct Expansion {
    d: BigInt,
    root: BigInt,
    state: SurdState,
}

impl Expansion {
    fn new(x: &QuadExt) -> Self {
        let d = x.q() * x.q() * BigInt::from(x.d());
        let (mut p, mut q) = if x.q().is_positive() {
            (x.p().clone(), x.s().clone())
        } else {
            (-x.p(), -x.s())
        };
        let mut d = d;
        if !(&d - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            d *= &q * &q;
            q *= qa;
        }
        let root = d.sqrt();
        Self {
            d,
            root,
            state: SurdState { p, q },
        }
    }

    fn step(&mut self) -> BigInt {
        let SurdState { p, q } = &self.state;
        let a = if q.is_positive() {
            (p + &self.root).div_floor(q)
        } else {
            let num: BigInt = -p - &self.root - 1;
            num.div_floor(&-q)
        };
        let p_next = &a * q - p;
        let q_next = (&self.d - &p_next * &p_next) / q;
        self.state = SurdState {
            p: p_next,
            q: q_next,
        };
        a
    }
}

/// Expands an irrational `x` into its first `n_terms` partial quotients and
/// detects the eventual period.
pub fn continued_fraction(x: &QuadExt, n_terms: usize) -> Result<ContinuedFraction> {
    if x.is_rational() {
        return Err(Error::RationalInput(x.to_string()));
    }
    let mut exp = Expansion::new(x);
    let mut seen: HashMap<SurdState, usize> = HashMap::new();
    let mut all = Vec::new();
    let mut cycle = None;
    while all.len() < PERIOD_SEARCH_CAP {
        if let Some(&start) = seen.get(&exp.state) {
            cycle = Some((start, all.len()));
            break;
        }
        seen.insert(exp.state.clone(), all.len());
        all.push(exp.step());
    }
    let (preperiod, period) = match cycle {
        Some((start, end)) => (all[..start].to_vec(), all[start..end].to_vec()),
        None => (Vec::new(), Vec::new()),
    };
    let mut quotients = Vec::with_capacity(n_terms);
    for i in 0..n_terms {
        let term = if i < all.len() {
            all[i].clone()
        } else if !period.is_empty() {
            period[(i - preperiod.len()) % period.len()].clone()
        } else {
            exp.step()
        };
        quotients.push(term);
    }
    Ok(ContinuedFraction {
        quotients,
        preperiod,
        period,
    })
}

/// Convergents `p_n / q_n` of a list of partial quotients.
pub fn convergents(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    quotients
        .iter()
        .map(|a| {
            let p = a * &p0 + &p1;
            let q = a * &q0 + &q1;
            p1 = std::mem::replace(&mut p0, p.clone());
            q1 = std::mem::replace(&mut q0, q.clone());
            (p, q)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt2() {
        let cf = continued_fraction(&QuadExt::sqrt(2), 6).unwrap();
        assert_eq!(cf.quotients, ints(&[1, 2, 2, 2, 2, 2]));
        assert_eq!(cf.preperiod, ints(&[1]));
        assert_eq!(cf.period, ints(&[2]));
    }

    #[test]
    fn golden_ratio() {
        let cf = continued_fraction(&q("(1+sqrt(5))/2"), 5).unwrap();
        assert_eq!(cf.quotients, ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cf.period, ints(&[1]));
    }

    #[test]
    fn reciprocal_root2() {
        let cf = continued_fraction(&q("sqrt(2)/2"), 5).unwrap();
        assert_eq!(cf.quotients, ints(&[0, 1, 2, 2, 2]));
        assert_eq!(cf.preperiod, ints(&[0, 1]));
        assert_eq!(cf.period, ints(&[2]));
    }

    #[test]
    fn negative_and_longer_periods() {
        // -sqrt(2) = [-2; 1, 1, 2, 2, ...]
        let cf = continued_fraction(&-QuadExt::sqrt(2), 6).unwrap();
        assert_eq!(cf.quotients, ints(&[-2, 1, 1, 2, 2, 2]));
        // sqrt(7) = [2; 1,1,1,4]
        let cf = continued_fraction(&QuadExt::sqrt(7), 9).unwrap();
        assert_eq!(cf.quotients, ints(&[2, 1, 1, 1, 4, 1, 1, 1, 4]));
        assert_eq!(cf.period, ints(&[1, 1, 1, 4]));
    }

    #[test]
    fn rational_rejected() {
        assert!(matches!(
            continued_fraction(&QuadExt::ratio(3, 7).unwrap(), 3),
            Err(Error::RationalInput(_))
        ));
    }

    #[test]
    fn convergents_of_sqrt2() {
        let c = convergents(&ints(&[1, 2, 2, 2]));
        let expect: Vec<(BigInt, BigInt)> = [(1, 1), (3, 2), (7, 5), (17, 12)]
            .iter()
            .map(|&(a, b)| (BigInt::from(a), BigInt::from(b)))
            .collect();
        assert_eq!(c, expect);
    }
}
