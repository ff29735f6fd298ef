//! Exact scalars: quadratic-field elements with decidable floor and order,
//! and certified-interval combinations of named irrationals.

mod cf;
mod lincomb;
mod parse;
mod quad;

pub use cf::{continued_fraction, convergents, ContinuedFraction};
pub use lincomb::{
    builtin_constant, lincomb_floor, Basis, BasisConstant, DyadicInterval, LinComb, LinCombJson,
    SqrtConst, Unit, DEFAULT_MAX_BITS, START_BITS,
};
pub use parse::{parse_quad, parse_rational, rational_text};
pub use quad::{quad_arith, quad_compare, quad_floor, QuadExt, QuadOp};
