//! Rational combinations of named irrational constants.
//!
//! A [`Basis`] is a list of named constants, each able to produce nested
//! dyadic enclosures of itself at any requested precision. Element 0 is always
//! the constant `1`. A [`LinComb`] is a coefficient vector over a basis; its
//! floor is decided by refining enclosures until no integer lies inside.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::parse::{parse_rational, rational_text};
use super::quad::squarefree_split;
use crate::error::{Error, Result};

/// First precision tried by [`LinComb::floor`].
pub const START_BITS: u32 = 128;
/// Default precision cap; overridable through `REEB_PRECISION_BITS` in the CLI.
pub const DEFAULT_MAX_BITS: u32 = 16384;

const CACHED_LEVELS: usize = 12;

/// Integers `lo`, `hi` with `lo / 2^bits <= x <= hi / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl DyadicInterval {
    pub fn contains(&self, other: &DyadicInterval) -> bool {
        let (a, b) = align(self, other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.bits)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.bits)
    }
}

fn align(a: &DyadicInterval, b: &DyadicInterval) -> (DyadicInterval, DyadicInterval) {
    let bits = a.bits.max(b.bits);
    let lift = |x: &DyadicInterval| DyadicInterval {
        lo: &x.lo << (bits - x.bits),
        hi: &x.hi << (bits - x.bits),
        bits,
    };
    (lift(a), lift(b))
}

fn scaled_to_f64(n: &BigInt, bits: u32) -> f64 {
    // keep 64 significant bits before converting
    let shift = n.bits().saturating_sub(64) as u32;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top * 2f64.powi(shift as i32 - bits as i32)
}

/// A real constant with a certified enclosure oracle.
///
/// Implementations must return enclosures that are nested as `bits` grows and
/// whose width is at most `2^-bits`.
pub trait BasisConstant: fmt::Debug + Send + Sync {
    fn name(&self) -> String;
    fn enclose(&self, bits: u32) -> DyadicInterval;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unit;

impl BasisConstant for Unit {
    fn name(&self) -> String {
        "1".into()
    }

    fn enclose(&self, bits: u32) -> DyadicInterval {
        let v = BigInt::one() << bits;
        DyadicInterval {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }
}

/// `sqrt(n)` for a non-square `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SqrtConst(pub u64);

impl BasisConstant for SqrtConst {
    fn name(&self) -> String {
        format!("sqrt({})", self.0)
    }

    fn enclose(&self, bits: u32) -> DyadicInterval {
        let lo = (BigInt::from(self.0) << (2 * bits)).sqrt();
        let hi = &lo + 1;
        DyadicInterval { lo, hi, bits }
    }
}

/// Resolves the built-in constant names `1` and `sqrt(n)`.
pub fn builtin_constant(name: &str) -> Result<Arc<dyn BasisConstant>> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "1" {
        return Ok(Arc::new(Unit));
    }
    let inner = compact
        .strip_prefix("sqrt(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("unknown basis constant {name:?}")))?;
    let n: u64 = inner
        .parse()
        .map_err(|_| Error::Parse(format!("bad radicand in {name:?}")))?;
    let (_, m) = squarefree_split(n);
    if n == 0 || m == 1 {
        return Err(Error::Domain(format!("{name} is rational")));
    }
    Ok(Arc::new(SqrtConst(n)))
}

/// An ordered list of constants asserted Q-linearly independent by the caller.
pub struct Basis {
    consts: Vec<Arc<dyn BasisConstant>>,
    cache: [OnceLock<Vec<DyadicInterval>>; CACHED_LEVELS],
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl Basis {
    /// `1` is prepended; pass only the irrational constants.
    pub fn new(irrationals: Vec<Arc<dyn BasisConstant>>) -> Arc<Self> {
        let mut consts: Vec<Arc<dyn BasisConstant>> = vec![Arc::new(Unit)];
        consts.extend(irrationals);
        Arc::new(Self {
            consts,
            cache: Default::default(),
        })
    }

    /// Builds a basis from names; the first must be `"1"`.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        match names.first() {
            Some(first) if first.as_ref().trim() == "1" => {}
            _ => return Err(Error::Domain("basis element 0 must be \"1\"".into())),
        }
        let rest = names[1..]
            .iter()
            .map(|n| builtin_constant(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(rest))
    }

    /// `{1, sqrt(n1), sqrt(n2), ...}`.
    pub fn sqrts(radicands: &[u64]) -> Arc<Self> {
        Self::new(
            radicands
                .iter()
                .map(|&n| Arc::new(SqrtConst(n)) as Arc<dyn BasisConstant>)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.consts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.consts.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.consts.iter().map(|c| c.name()).collect()
    }

    fn enclosures(&self, bits: u32) -> std::borrow::Cow<'_, [DyadicInterval]> {
        let level = bits
            .checked_div(START_BITS)
            .filter(|m| m.is_power_of_two() && bits.is_multiple_of(START_BITS))
            .map(|m| m.trailing_zeros() as usize)
            .filter(|&l| l < CACHED_LEVELS);
        match level {
            Some(l) => std::borrow::Cow::Borrowed(
                self.cache[l].get_or_init(|| self.consts.iter().map(|c| c.enclose(bits)).collect()),
            ),
            None => std::borrow::Cow::Owned(self.consts.iter().map(|c| c.enclose(bits)).collect()),
        }
    }

    fn same_as(&self, other: &Basis) -> bool {
        std::ptr::eq(self, other) || self.names() == other.names()
    }
}

/// `sum coeffs[i] * basis[i]` with rational coefficients.
#[derive(Clone, Debug)]
pub struct LinComb {
    basis: Arc<Basis>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for LinComb {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.coeffs == other.coeffs
    }
}

impl Eq for LinComb {}

impl LinComb {
    pub fn new(basis: Arc<Basis>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::Domain(format!(
                "{} coefficients for a basis of {} constants",
                coeffs.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn from_ints(basis: Arc<Basis>, coeffs: &[i64]) -> Result<Self> {
        Self::new(basis, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn rational(basis: Arc<Basis>, r: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); basis.len()];
        coeffs[0] = r;
        Self { basis, coeffs }
    }

    pub fn zero(basis: Arc<Basis>) -> Self {
        Self::rational(basis, BigRational::zero())
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True when every irrational coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.coeffs[0]
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis.same_as(&other.basis) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "basis mismatch: {:?} vs {:?}",
                self.basis.names(),
                other.basis.names()
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += r;
        out
    }

    /// Common denominator and the integer numerators over it.
    fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, nums)
    }

    /// Enclosure `[lo, hi] / (den * 2^bits)` of the value.
    fn scaled_enclosure(&self, bits: u32) -> (BigInt, BigInt, BigInt) {
        let (den, nums) = self.integer_form();
        let encl = self.basis.enclosures(bits);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (n, e) in nums.iter().zip(encl.iter()) {
            if n.is_zero() {
                continue;
            }
            if n.is_positive() {
                lo += n * &e.lo;
                hi += n * &e.hi;
            } else {
                lo += n * &e.hi;
                hi += n * &e.lo;
            }
        }
        (lo, hi, den << bits)
    }

    /// Certified rational enclosure of the value at `bits` of constant precision.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let (lo, hi, scale) = self.scaled_enclosure(bits);
        (
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
    }

    /// Midpoint approximation with absolute error below `2^-60` times the
    /// coefficient mass; display and distance screening only.
    pub fn approx_f64(&self) -> f64 {
        let (lo, hi, scale) = self.scaled_enclosure(96);
        let mid: BigInt = (lo + hi) >> 1u32;
        let (q, r) = mid.div_mod_floor(&scale);
        let frac = scaled_ratio(&r, &scale);
        q.to_f64().unwrap_or(f64::NAN) + frac
    }

    /// Certified floor, refining from [`START_BITS`] by doubling up to `max_bits`.
    pub fn floor(&self, max_bits: u32) -> Result<BigInt> {
        if self.is_rational() {
            return Ok(self.coeffs[0].floor().to_integer());
        }
        let mut bits = START_BITS.min(max_bits.max(1));
        loop {
            let (lo, hi, scale) = self.scaled_enclosure(bits);
            let f_lo = lo.div_floor(&scale);
            if f_lo == hi.div_floor(&scale) {
                return Ok(f_lo);
            }
            if bits >= max_bits {
                return Err(Error::PrecisionExhausted {
                    bits,
                    what: format!("floor of {self}"),
                });
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    /// `self - floor(self)`, exact.
    pub fn fract(&self, max_bits: u32) -> Result<Self> {
        let f = self.floor(max_bits)?;
        Ok(self.add_rational(&BigRational::from_integer(-f)))
    }
}

fn scaled_ratio(r: &BigInt, scale: &BigInt) -> f64 {
    // r / scale with 0 <= r < scale, keeping 64 bits of each
    let shift = scale.bits().saturating_sub(64) as u32;
    let (a, b) = (r >> shift, scale >> shift);
    a.to_f64().unwrap_or(0.0) / b.to_f64().unwrap_or(1.0)
}

/// Certified floor of a combination, deciding exactly when rational.
pub fn lincomb_floor(x: &LinComb, max_bits: u32) -> Result<BigInt> {
    x.floor(max_bits)
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.basis.names();
        let mut first = true;
        for (c, n) in self.coeffs.iter().zip(&names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if n == "1" {
                write!(f, "{}", rational_text(c))?;
            } else {
                write!(f, "{}*{}", rational_text(c), n)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Wire form: `{ "basis": ["1","sqrt(2)"], "coeffs": ["0","1"] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinCombJson {
    pub basis: Vec<String>,
    pub coeffs: Vec<String>,
}

impl From<&LinComb> for LinCombJson {
    fn from(x: &LinComb) -> Self {
        Self {
            basis: x.basis.names(),
            coeffs: x.coeffs.iter().map(rational_text).collect(),
        }
    }
}

impl LinCombJson {
    pub fn into_lincomb(self) -> Result<LinComb> {
        let basis = Basis::from_names(&self.basis)?;
        self.with_basis(basis)
    }

    /// Reuses an already-built basis whose names must match.
    pub fn with_basis(self, basis: Arc<Basis>) -> Result<LinComb> {
        if basis.names() != self.basis {
            return Err(Error::Domain(format!(
                "basis {:?} does not match {:?}",
                self.basis,
                basis.names()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        LinComb::new(basis, coeffs)
    }
}

impl Serialize for LinComb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinCombJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinComb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LinCombJson::deserialize(d)?
            .into_lincomb()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn floor_examples() {
        let b = Basis::sqrts(&[2, 3]);
        // 5(sqrt2 - 1) + 3(sqrt3 - 1) = -8 + 5 sqrt2 + 3 sqrt3 = 4.2673...
        let x = LinComb::from_ints(b.clone(), &[-8, 5, 3]).unwrap();
        assert_eq!(lincomb_floor(&x, DEFAULT_MAX_BITS).unwrap(), BigInt::from(4));
        let x = LinComb::new(b.clone(), vec![r(7, 2), r(0, 1), r(0, 1)]).unwrap();
        assert_eq!(lincomb_floor(&x, DEFAULT_MAX_BITS).unwrap(), BigInt::from(3));
        let x = LinComb::from_ints(b, &[0, 1, 1]).unwrap();
        assert_eq!(lincomb_floor(&x, DEFAULT_MAX_BITS).unwrap(), BigInt::from(3));
    }

    #[test]
    fn precision_exhausted_near_integer() {
        // 1e40 * sqrt2 - its floor differs from an integer by far less than 2^-8
        let b = Basis::sqrts(&[2]);
        let big = BigInt::from(10u32).pow(40);
        let f = (BigInt::from(2) * &big * &big).sqrt();
        let x = LinComb::new(
            b,
            vec![BigRational::from_integer(-f), BigRational::from_integer(big)],
        )
        .unwrap();
        // tiny cap cannot decide floor(frac * 1) once we scale it up
        let scaled = x.scale(&BigRational::from_integer(BigInt::from(10u32).pow(30)));
        assert!(matches!(
            scaled.floor(8),
            Err(Error::PrecisionExhausted { .. })
        ));
        assert!(scaled.floor(DEFAULT_MAX_BITS).is_ok());
    }

    #[test]
    fn enclosures_are_nested() {
        let c = SqrtConst(3);
        let mut prev = c.enclose(1);
        for bits in 2..200 {
            let next = c.enclose(bits);
            assert!(prev.contains(&next), "bits {bits}");
            assert!(&next.hi - &next.lo <= BigInt::one());
            prev = next;
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{ "basis": ["1","sqrt(2)","sqrt(3)"], "coeffs": ["0","1","1"] }"#;
        let x: LinComb = serde_json::from_str(text).unwrap();
        assert_eq!(x.to_string(), "1*sqrt(2) + 1*sqrt(3)");
        let back = serde_json::to_string(&x).unwrap();
        let y: LinComb = serde_json::from_str(&back).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<LinComb>(r#"{"basis":["sqrt(2)"],"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<LinComb>(r#"{"basis":["1","sqrt(4)"],"coeffs":["1","1"]}"#).is_err());
    }

    #[test]
    fn approx_is_close() {
        let b = Basis::sqrts(&[2]);
        let x = LinComb::new(b, vec![r(-1, 3), r(5, 7)]).unwrap();
        let expect = -1.0 / 3.0 + 5.0 / 7.0 * 2f64.sqrt();
        assert!((x.approx_f64() - expect).abs() < 1e-14);
    }
}
