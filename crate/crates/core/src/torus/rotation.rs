//! First return of an irrational rotation of `R / vZ` to a small arc.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactreal::QuadExt;

/// Below this cap a direct exact scan is used.
const LINEAR_SCAN_CAP: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationHit {
    pub k: u64,
    /// `dist_{R/vZ}(k * step, target)`, exact.
    pub distance: QuadExt,
    /// Whether a dyadic enclosure at twice the search precision also clears `tol`.
    pub certified: bool,
}

/// Smallest `1 <= k <= k_max` with `dist(k * step, target) < tol` on `R / vZ`.
///
/// Fixed-point approximations of `step / v` and `target / v` turn the problem
/// into finding the first `k` with `A k + C mod 2^P` in an arc, solved by a
/// Euclid-style descent (the continued fraction of `A / 2^P`). The arc is
/// widened to absorb rounding, so every candidate is then checked exactly.
pub fn rotation_hit(
    v: u64,
    step: &QuadExt,
    target: &QuadExt,
    tol: &BigRational,
    k_max: u64,
) -> Result<RotationHit> {
    if v == 0 {
        return Err(Error::Domain("circumference v must be positive".into()));
    }
    if step.is_rational() {
        return Err(Error::RationalInput(format!("rotation step {step} is rational")));
    }
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    step.common_field(target)?;
    let vr = BigRational::from_integer(v.into());

    if k_max <= LINEAR_SCAN_CAP {
        for k in 1..=k_max {
            let dist = exact_distance(v, step, target, k);
            if dist_below(&dist, tol) {
                return Ok(finish(v, step, target, tol, k, dist, 256));
            }
        }
        return Err(Error::NotFound { k_max });
    }

    let eps = tol / &vr;
    let bits = 128 + 64 - k_max.leading_zeros() as u64 + eps.denom().bits();
    let bits = u32::try_from(bits).map_err(|_| Error::Domain("tolerance too fine".into()))?;
    let modulus = BigInt::one() << bits;
    let theta = step.scale(&vr.recip()).fract();
    let shift = (-target).scale(&vr.recip()).fract();
    let a = theta.floor_of_multiple(&modulus);
    let c = shift.floor_of_multiple(&modulus);
    let e = (&eps * &modulus).ceil().to_integer();
    let slack = BigInt::from(k_max) + 2;
    let width = &e * 2 + &slack;
    if width >= modulus {
        let dist = exact_distance(v, step, target, 1);
        if dist_below(&dist, tol) {
            return Ok(finish(v, step, target, tol, 1, dist, 2 * bits));
        }
    }
    let lower: BigInt = &modulus - &e - &slack;
    let lower = lower.mod_floor(&modulus);

    let mut start = BigInt::one();
    let k_max_big = BigInt::from(k_max);
    while start <= k_max_big {
        // want (a x + b) mod 2^P in [0, width]
        let b = (&a * &start + &c - &lower).mod_floor(&modulus);
        let x = if b <= width {
            Some(BigInt::zero())
        } else {
            first_in_range(&a, &modulus, &(&modulus - &b), &(&modulus + &width - &b))
        };
        let Some(x) = x else { break };
        let k = &start + x;
        if k > k_max_big {
            break;
        }
        let k_u: u64 = k.clone().try_into().expect("k <= k_max");
        let dist = exact_distance(v, step, target, k_u);
        if dist_below(&dist, tol) {
            return Ok(finish(v, step, target, tol, k_u, dist, 2 * bits));
        }
        start = k + 1;
    }
    Err(Error::NotFound { k_max })
}

/// Smallest `x >= 0` with `lo <= a x mod m <= hi`, for `0 <= lo <= hi < m`.
pub(crate) fn first_in_range(a: &BigInt, m: &BigInt, lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
    if lo.is_zero() {
        return Some(BigInt::zero());
    }
    let a = a.mod_floor(m);
    if a.is_zero() {
        return None;
    }
    let x = lo.div_ceil(&a);
    if &(&a * &x) <= hi {
        return Some(x);
    }
    // no multiple of a lies in [lo, hi]; solve for the wrap count y instead:
    // lo <= a x - m y <= hi  <=>  (m y mod a) in [a - hi mod a, a - lo mod a]
    let lo2 = &a - hi.mod_floor(&a);
    let hi2 = &a - lo.mod_floor(&a);
    let y = first_in_range(&m.mod_floor(&a), &a, &lo2, &hi2)?;
    Some((lo + m * y).div_ceil(&a))
}

fn exact_distance(v: u64, step: &QuadExt, target: &QuadExt, k: u64) -> QuadExt {
    let y = step
        .scale_int(k)
        .checked_sub(target)
        .expect("fields checked by caller");
    let vq = QuadExt::from_integer(v);
    let wraps = y.scale(&BigRational::new(BigInt::one(), v.into())).floor();
    let r = y.add_int(-(wraps * v));
    let other = vq.checked_sub(&r).expect("rational");
    if r.compare(&other).expect("same field").is_le() {
        r
    } else {
        other
    }
}

fn dist_below(dist: &QuadExt, tol: &BigRational) -> bool {
    dist.compare(&QuadExt::from_rational(tol))
        .expect("rational mixes with any field")
        .is_lt()
}

fn finish(
    v: u64,
    step: &QuadExt,
    target: &QuadExt,
    tol: &BigRational,
    k: u64,
    distance: QuadExt,
    bits: u32,
) -> RotationHit {
    RotationHit {
        k,
        distance,
        certified: certify(v, step, target, tol, k, bits),
    }
}

/// Re-checks a hit with the enclosure `[F, F + 1] / 2^bits` of `k * step - target`.
pub fn certify(v: u64, step: &QuadExt, target: &QuadExt, tol: &BigRational, k: u64, bits: u32) -> bool {
    let Ok(y) = step.scale_int(k).checked_sub(target) else {
        return false;
    };
    let scale = BigInt::one() << bits;
    let f = y.floor_of_multiple(&scale);
    let circle = BigInt::from(v) << bits;
    let r = f.mod_floor(&circle);
    let near = (&circle - &r).min(r);
    // distance is 1-Lipschitz, so the true value is at most near + 1 in these units
    (near + 1) * tol.denom() < tol.numer() * scale
}
