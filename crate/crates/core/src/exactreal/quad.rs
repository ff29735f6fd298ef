use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact element `(p + q*sqrt(d)) / s` of a real quadratic field.
///
/// Values are normalized eagerly: `s > 0`, `gcd(p, q, s) = 1`, `d` is
/// squarefree, and a value with `q = 0` always carries the field tag `d = 1`
/// (the rationals). Rationals therefore combine with any field, while two
/// irrational values only combine when their tags agree. Equality is a
/// coordinate check.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    p: BigInt,
    q: BigInt,
    s: BigInt,
    d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Splits `n` into `(f, m)` with `n = f^2 * m` and `m` squarefree.
pub(crate) fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            m *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (f, m * n)
}

impl QuadExt {
    /// Builds `(p + q*sqrt(d)) / s`, pulling square factors out of `d`.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        s: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self> {
        let (p, mut q, s) = (p.into(), q.into(), s.into());
        if s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = if d == 0 {
            q = BigInt::zero();
            1
        } else {
            let (f, m) = squarefree_split(d);
            q *= f;
            m
        };
        if d == 1 {
            // sqrt(f^2) is the integer f, already folded into q.
            let p = p + q;
            return Ok(Self::normalized(p, BigInt::zero(), s, 1));
        }
        Ok(Self::normalized(p, q, s, d))
    }

    fn normalized(mut p: BigInt, mut q: BigInt, mut s: BigInt, mut d: u64) -> Self {
        debug_assert!(!s.is_zero());
        if s.is_negative() {
            p = -p;
            q = -q;
            s = -s;
        }
        if q.is_zero() {
            d = 1;
        }
        let g = p.gcd(&q).gcd(&s);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            s /= &g;
        }
        Self { p, q, s, d }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::normalized(n.into(), BigInt::zero(), BigInt::one(), 1)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalized(r.numer().clone(), BigInt::zero(), r.denom().clone(), 1)
    }

    /// `num / den` as a rational.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::new(num, 0, den, 1)
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: u64) -> Self {
        Self::new(0, 1, 1, d).expect("denominator is 1")
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// Field tag; `1` for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.s.is_one()
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.p.clone(), self.s.clone()))
    }

    /// Rational coordinates `(a, b)` with value `a + b*sqrt(d)`.
    pub fn coords(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.p.clone(), self.s.clone()),
            BigRational::new(self.q.clone(), self.s.clone()),
        )
    }

    /// Inverse of [`QuadExt::coords`].
    pub fn from_coords(a: &BigRational, b: &BigRational, d: u64) -> Result<Self> {
        let s = a.denom().lcm(b.denom());
        let p = a.numer() * (&s / a.denom());
        let q = b.numer() * (&s / b.denom());
        Self::new(p, q, s, d)
    }

    /// Common field of two values, or `FieldMismatch`.
    pub fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (a, b) if a == b => Ok(a),
            _ => Err(Error::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::normalized(
            &self.p * &other.s + &other.p * &self.s,
            &self.q * &other.s + &other.q * &self.s,
            &self.s * &other.s,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let dd = BigInt::from(d);
        Ok(Self::normalized(
            &self.p * &other.p + &self.q * &other.q * &dd,
            &self.p * &other.q + &self.q * &other.p,
            &self.s * &other.s,
            d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = BigInt::from(d);
        // a / b = a * conj(b) * s_b / (s_a * norm)
        let norm = &other.p * &other.p - &other.q * &other.q * &dd;
        Ok(Self::normalized(
            (&self.p * &other.p - &self.q * &other.q * &dd) * &other.s,
            (&self.q * &other.p - &self.p * &other.q) * &other.s,
            &self.s * norm,
            d,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Multiplies by an integer.
    pub fn scale_int(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::normalized(&self.p * &k, &self.q * &k, self.s.clone(), self.d)
    }

    /// Multiplies by a rational.
    pub fn scale(&self, r: &BigRational) -> Self {
        Self::normalized(
            &self.p * r.numer(),
            &self.q * r.numer(),
            &self.s * r.denom(),
            self.d,
        )
    }

    /// Adds an integer.
    pub fn add_int(&self, n: impl Into<BigInt>) -> Self {
        Self::normalized(&self.p + n.into() * &self.s, self.q.clone(), self.s.clone(), self.d)
    }

    /// Sign of the value, decided with integer arithmetic only.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact floor: the integer `f` with `f <= self < f + 1`.
    pub fn floor(&self) -> BigInt {
        let num_floor = if self.q.is_zero() {
            self.p.clone()
        } else {
            let t = (&self.q * &self.q * BigInt::from(self.d)).sqrt();
            // q^2 d is never a perfect square, so sqrt(q^2 d) is irrational.
            if self.q.is_positive() {
                &self.p + t
            } else {
                &self.p - t - 1
            }
        };
        num_floor.div_floor(&self.s)
    }

    /// `floor(k * self)` without building the product.
    pub fn floor_of_multiple(&self, k: &BigInt) -> BigInt {
        let kp = k * &self.p;
        let kq = k * &self.q;
        let num_floor = if kq.is_zero() {
            kp
        } else {
            let t = (&kq * &kq * BigInt::from(self.d)).sqrt();
            if kq.is_positive() {
                kp + t
            } else {
                kp - t - 1
            }
        };
        num_floor.div_floor(&self.s)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self.add_int(-self.floor())
    }

    /// Exact comparison; `FieldMismatch` across fields.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Nearest-ish `f64`, accurate even when `p` and `q sqrt(d)` nearly cancel.
    pub fn to_f64(&self) -> f64 {
        if self.q.is_zero() {
            return BigRational::new(self.p.clone(), self.s.clone())
                .to_f64()
                .unwrap_or(f64::NAN);
        }
        // |p + q sqrt(d)| >= 1 / (|p| + |q| sqrt(d)), so this many extra bits
        // keep 60 significant bits after cancellation
        let bits = 64 + 2 * (self.p.bits().max(self.q.bits()) + 4) + self.s.bits();
        let scale = BigInt::one() << bits;
        BigRational::new(self.floor_of_multiple(&scale), scale)
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Decimal rendering truncated toward zero to `digits` places. Display only.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_negative() {
            return format!("-{}", (-self).to_decimal(digits));
        }
        let scale = BigInt::from(10u32).pow(digits);
        let (int, frac) = self.scale_int(scale.clone()).floor().div_rem(&scale);
        if digits == 0 {
            return int.to_string();
        }
        format!("{}.{:0>width$}", int, frac, width = digits as usize)
    }
}

fn sign_of(p: &BigInt, q: &BigInt, d: u64) -> Ordering {
    let sp = p.sign();
    let sq = q.sign();
    use num_bigint::Sign::*;
    match (sp, sq) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        _ => {
            // opposite signs: compare p^2 with q^2 d
            let lhs = p * p;
            let rhs = q * q * BigInt::from(d);
            let p_wins = lhs > rhs;
            match (sp, p_wins) {
                (Plus, true) | (Minus, false) => Ordering::Greater,
                _ => Ordering::Less,
            }
        }
    }
}

/// Field arithmetic with explicit field and zero-division errors.
pub fn quad_arith(a: &QuadExt, b: &QuadExt, op: QuadOp) -> Result<QuadExt> {
    match op {
        QuadOp::Add => a.checked_add(b),
        QuadOp::Sub => a.checked_sub(b),
        QuadOp::Mul => a.checked_mul(b),
        QuadOp::Div => a.checked_div(b),
    }
}

pub fn quad_floor(a: &QuadExt) -> BigInt {
    a.floor()
}

pub fn quad_compare(a: &QuadExt, b: &QuadExt) -> Result<Ordering> {
    a.compare(b)
}

impl PartialOrd for QuadExt {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            p: -&self.p,
            q: -&self.q,
            s: self.s.clone(),
            d: self.d,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

// Operator forms panic on a field mismatch; the `checked_*` methods report it.
macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("quadratic field mismatch")
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            if self.s.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.s)
            }
        } else {
            let sign = if self.q.is_negative() { '-' } else { '+' };
            write!(
                f,
                "({}{}{}*sqrt({}))/{}",
                self.p,
                sign,
                self.q.abs(),
                self.d,
                self.s
            )
        }
    }
}

impl FromStr for QuadExt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_quad(s)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn product_simplifies() {
        // (1+sqrt2)(2-sqrt2) = 2 - sqrt2 + 2 sqrt2 - 2 = sqrt2
        let a = q("1+sqrt(2)");
        let b = q("2-sqrt(2)");
        assert_eq!(a.checked_mul(&b).unwrap(), QuadExt::sqrt(2));
    }

    #[test]
    fn self_division_is_one() {
        for s in ["(3-2*sqrt(5))/7", "sqrt(3)", "-5/3"] {
            let x = q(s);
            assert_eq!(quad_arith(&x, &x, QuadOp::Div).unwrap(), QuadExt::one());
        }
    }

    #[test]
    fn coordinatewise_addition() {
        let a = q("(0+1*sqrt(2))/2");
        let b = q("(-1+1*sqrt(2))/2");
        assert_eq!(a.checked_add(&b).unwrap(), q("(-1+2*sqrt(2))/2"));
    }

    #[test]
    fn field_mismatch_and_zero_division() {
        let a = QuadExt::sqrt(2);
        let b = QuadExt::sqrt(3);
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.compare(&b), Err(Error::FieldMismatch { .. })));
        assert_eq!(a.checked_div(&QuadExt::zero()), Err(Error::DivisionByZero));
        // rationals mix with any field
        assert!(a.checked_add(&QuadExt::ratio(1, 2).unwrap()).is_ok());
    }

    #[test]
    fn floors() {
        assert_eq!(q("(3+2*sqrt(2))/2").floor(), BigInt::from(2));
        assert_eq!(q("7/2").floor(), BigInt::from(3));
        assert_eq!(q("-sqrt(2)").floor(), BigInt::from(-2));
        assert_eq!(q("-7/2").floor(), BigInt::from(-4));
        assert_eq!(q("(1-2*sqrt(2))/3").floor(), BigInt::from(-1));
    }

    #[test]
    fn comparisons() {
        assert_eq!(QuadExt::sqrt(2).compare(&q("3/2")).unwrap(), Ordering::Less);
        let x = q("(5-3*sqrt(7))/4");
        assert_eq!(x.compare(&x).unwrap(), Ordering::Equal);
        assert_eq!(q("1+sqrt(2)").compare(&q("2*sqrt(2)-1")).unwrap(), Ordering::Greater);
    }

    #[test]
    fn normalization_is_canonical() {
        let a = QuadExt::new(2, 4, -6, 2).unwrap();
        assert_eq!(a.to_string(), "(-1-2*sqrt(2))/3");
        assert_eq!(QuadExt::new(0, 1, 1, 8).unwrap(), QuadExt::new(0, 2, 1, 2).unwrap());
        assert!(QuadExt::new(1, 1, 1, 9).unwrap().is_rational());
        assert_eq!(QuadExt::new(1, 1, 1, 9).unwrap(), QuadExt::from_integer(4));
        assert_eq!(QuadExt::new(1, 0, 1, 5).unwrap().d(), 1);
        assert_eq!(QuadExt::new(1, 1, 0, 5), Err(Error::DivisionByZero));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(QuadExt::sqrt(2).to_decimal(5), "1.41421");
        assert_eq!((-QuadExt::sqrt(2)).to_decimal(3), "-1.414");
        assert_eq!(q("7/2").to_decimal(0), "3");
    }

    #[test]
    fn squarefree_split_examples() {
        assert_eq!(squarefree_split(12), (2, 3));
        assert_eq!(squarefree_split(72), (6, 2));
        assert_eq!(squarefree_split(1), (1, 1));
        assert_eq!(squarefree_split(49), (7, 1));
        assert_eq!(squarefree_split(2 * 97 * 97), (97, 2));
    }
}
