//! Jump sequences `j_n(xi) = [n / xi]` and the affine relations between them.
//!
//! For `xi` in `(0,1)` irrational, `j_n` is the unique integer with
//! `j_n * xi < n < (j_n + 1) * xi`, i.e. the position of the `n`-th increment
//! of the floor sequence `[k xi]`. All sequence checks here run to an explicit
//! finite horizon that is reported with every answer.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactreal::{rational_text, QuadExt};

fn check_unit_interval(xi: &QuadExt) -> Result<()> {
    if xi.is_rational() {
        return Err(Error::Domain(format!("{xi} must be irrational")));
    }
    if !xi.is_positive() || xi.compare(&QuadExt::one())? != Ordering::Less {
        return Err(Error::Domain(format!("{xi} must lie in (0,1)")));
    }
    Ok(())
}

/// Precomputed `1/xi` so terms are single floors.
struct Jumper {
    xi: QuadExt,
    inv: QuadExt,
}

impl Jumper {
    fn new(xi: &QuadExt) -> Result<Self> {
        check_unit_interval(xi)?;
        Ok(Self {
            xi: xi.clone(),
            inv: xi.recip()?,
        })
    }

    fn term(&self, n: u64) -> u64 {
        self.inv
            .floor_of_multiple(&BigInt::from(n))
            .to_u64()
            .expect("jump term fits in u64")
    }

    fn floor_mul(&self, k: u64) -> BigInt {
        self.xi.floor_of_multiple(&BigInt::from(k))
    }

    fn is_jump(&self, k: u64) -> bool {
        self.floor_mul(k + 1) == self.floor_mul(k) + 1
    }

    /// The `n` with `j_n = k`, given that `k` is a jump.
    fn index_of(&self, k: u64) -> u64 {
        self.floor_mul(k + 1).to_u64().expect("index fits in u64")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpSequence {
    pub xi: QuadExt,
    pub terms: Vec<u64>,
}

/// First `n_terms` jumps of `xi`, each checked against the defining sandwich.
pub fn jump_sequence(xi: &QuadExt, n_terms: u64) -> Result<JumpSequence> {
    if n_terms == 0 {
        return Err(Error::Domain("jump sequence length must be positive".into()));
    }
    let j = Jumper::new(xi)?;
    let mut terms = Vec::with_capacity(n_terms as usize);
    for n in 1..=n_terms {
        let t = j.term(n);
        // j_n xi <= n < (j_n + 1) xi
        let lo = j.floor_mul(t);
        let hi = j.floor_mul(t + 1);
        let n_big = BigInt::from(n);
        if lo >= n_big || hi < n_big {
            return Err(Error::IdentityViolation(format!(
                "jump sandwich failed for xi = {xi}, n = {n}"
            )));
        }
        terms.push(t);
    }
    Ok(JumpSequence {
        xi: xi.clone(),
        terms,
    })
}

/// True iff `[ (k+1) xi ] = [ k xi ] + 1`.
pub fn is_jump(xi: &QuadExt, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::Domain("jump positions start at k = 1".into()));
    }
    Ok(Jumper::new(xi)?.is_jump(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsequenceCheck {
    pub holds: bool,
    pub horizon: u64,
    /// First jump of the smaller sequence that is not a jump of the larger one.
    pub counterexample: Option<u64>,
}

/// Whether the first `horizon` terms of `j(xi2)` are all jumps of `xi1`.
///
/// Each side is evaluated in its own field, so no cross-field arithmetic is
/// needed and pairs from different fields are decided exactly.
pub fn is_jump_subsequence(xi2: &QuadExt, xi1: &QuadExt, horizon: u64) -> Result<SubsequenceCheck> {
    if horizon == 0 {
        return Err(Error::Domain("horizon must be positive".into()));
    }
    let small = Jumper::new(xi2)?;
    let big = Jumper::new(xi1)?;
    for n in 1..=horizon {
        let k = small.term(n);
        if !big.is_jump(k) {
            return Ok(SubsequenceCheck {
                holds: false,
                horizon,
                counterexample: Some(k),
            });
        }
    }
    Ok(SubsequenceCheck {
        holds: true,
        horizon,
        counterexample: None,
    })
}

/// `xi2 = p * xi1 + q` with rational `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRelation {
    pub p: BigRational,
    pub q: BigRational,
}

impl AffineRelation {
    pub fn slope_sign(&self) -> Ordering {
        if self.p.is_positive() {
            Ordering::Greater
        } else if self.p.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }

    /// `p = 0`: `xi2` is rational, where jump sequences are not defined.
    pub fn is_degenerate(&self) -> bool {
        self.p.is_zero()
    }
}

impl Serialize for AffineRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AffineRelation", 4)?;
        st.serialize_field("p", &rational_text(&self.p))?;
        st.serialize_field("q", &rational_text(&self.q))?;
        st.serialize_field("slope_sign", &(self.slope_sign() as i8))?;
        st.serialize_field("degenerate", &self.is_degenerate())?;
        st.end()
    }
}

/// Solves `xi2 = p * xi1 + q` exactly in coordinates over `{1, sqrt(d)}`.
///
/// Returns `None` when no rational relation exists. A rational `xi1` admits a
/// relation only with a rational `xi2`, reported as the degenerate `(0, xi2)`.
pub fn find_affine_relation(xi1: &QuadExt, xi2: &QuadExt) -> Result<Option<AffineRelation>> {
    xi1.common_field(xi2)?;
    let (a1, b1) = xi1.coords();
    let (a2, b2) = xi2.coords();
    if b1.is_zero() {
        return Ok(b2.is_zero().then(|| AffineRelation {
            p: BigRational::zero(),
            q: a2,
        }));
    }
    let p = &b2 / &b1;
    let q = &a2 - &p * &a1;
    Ok(Some(AffineRelation { p, q }))
}

/// Smallest `k <= bound` that is a jump of both `xi2` and `xi3`.
pub fn find_common_jump(xi2: &QuadExt, xi3: &QuadExt, bound: u64) -> Result<Option<u64>> {
    let a = Jumper::new(xi2)?;
    let b = Jumper::new(xi3)?;
    // walk both jump sequences in merge order
    let (mut n, mut m) = (1u64, 1u64);
    loop {
        let (ja, jb) = (a.term(n), b.term(m));
        if ja.min(jb) > bound {
            return Ok(None);
        }
        match ja.cmp(&jb) {
            Ordering::Equal => return Ok(Some(ja)),
            Ordering::Less => n += 1,
            Ordering::Greater => m += 1,
        }
    }
}

/// Exact test of `xi1 = k * xi2` for a positive integer `k`, for `xi1 <= 1/2`.
///
/// Nested jump sequences with `xi1 <= 1/2` force such a `k`; if the nesting
/// holds to `horizon` but no integer factor exists, that is reported as
/// [`Error::FactorContradiction`].
pub fn kotschick_factor(xi1: &QuadExt, xi2: &QuadExt, horizon: u64) -> Result<Option<u64>> {
    check_unit_interval(xi1)?;
    check_unit_interval(xi2)?;
    let half = QuadExt::ratio(1, 2)?;
    if xi1.compare(&half)? == Ordering::Greater {
        return Err(Error::Domain(format!("{xi1} exceeds 1/2")));
    }
    let ratio = xi1.checked_div(xi2)?;
    let factor = if ratio.is_integer() && ratio.is_positive() {
        ratio.p().to_u64()
    } else {
        None
    };
    if factor.is_none() && is_jump_subsequence(xi2, xi1, horizon)?.holds {
        return Err(Error::FactorContradiction {
            xi1: xi1.to_string(),
            xi2: xi2.to_string(),
            horizon,
        });
    }
    Ok(factor)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    /// `max |m(a+b) - m(a) - m(b)|` over `a, b >= 1`, `a + b <= horizon`.
    pub defect: u64,
    /// `[3 xi1]`, the a priori bound.
    pub bound: u64,
    pub horizon: u64,
}

/// Measures how far the index map `m`, defined by `j_n(xi2) = j_{m(n)}(xi1)`,
/// is from additive.
pub fn quasimorphism_defect(xi1: &QuadExt, xi2: &QuadExt, horizon: u64) -> Result<Defect> {
    let big = Jumper::new(xi1)?;
    let small = Jumper::new(xi2)?;
    let mut m = Vec::with_capacity(horizon as usize + 1);
    m.push(0i64);
    for n in 1..=horizon {
        let k = small.term(n);
        if !big.is_jump(k) {
            return Err(Error::SubsequenceViolation {
                n,
                term: k.to_string(),
            });
        }
        let idx = big.index_of(k);
        debug_assert_eq!(big.term(idx), k);
        m.push(idx as i64);
    }
    let h = horizon as usize;
    let mut defect = 0u64;
    for a in 1..h {
        for b in a..=(h - a) {
            let dev = (m[a + b] - m[a] - m[b]).unsigned_abs();
            defect = defect.max(dev);
        }
    }
    let bound = xi1
        .floor_of_multiple(&BigInt::from(3))
        .to_u64()
        .expect("[3 xi1] is small");
    Ok(Defect {
        defect,
        bound,
        horizon,
    })
}
