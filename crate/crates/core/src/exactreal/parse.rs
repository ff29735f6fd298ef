//! Text forms for exact scalars.
//!
//! Scalars are arithmetic expressions over integers and `sqrt(d)` with `+ - * /`,
//! parentheses and the usual precedence, e.g. `(p+q*sqrt(d))/s`, `2*sqrt(2)-1`
//! or `sqrt(2)/2 - 1/5`. Every square root in one expression must share its
//! radicand up to square factors. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::quad::QuadExt;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    bytes: Vec<u8>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let bytes = src.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Self { src, bytes, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.src))
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn sqrt_arg(&mut self) -> Result<u64> {
        if !self.eat_str("sqrt(") {
            return Err(self.err("expected sqrt("));
        }
        let d = self.uint()?;
        if !self.eat(b')') {
            return Err(self.err("expected )"));
        }
        u64::try_from(d).map_err(|_| self.err("radicand too large"))
    }
}

// expr   := term (('+' | '-') term)*
// term   := factor (('*' | '/') factor)*
// factor := '-' factor | '+' factor | digits | 'sqrt(' digits ')' | '(' expr ')'
fn expr(c: &mut Cursor) -> Result<QuadExt> {
    let mut acc = term(c)?;
    loop {
        if c.eat(b'+') {
            acc = acc.checked_add(&term(c)?)?;
        } else if c.eat(b'-') {
            acc = acc.checked_sub(&term(c)?)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<QuadExt> {
    let mut acc = factor(c)?;
    loop {
        if c.eat(b'*') {
            acc = acc.checked_mul(&factor(c)?)?;
        } else if c.eat(b'/') {
            let den = factor(c)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc = acc.checked_div(&den)?;
        } else {
            return Ok(acc);
        }
    }
}

fn factor(c: &mut Cursor) -> Result<QuadExt> {
    match c.peek() {
        Some(b'-') => {
            c.pos += 1;
            Ok(-factor(c)?)
        }
        Some(b'+') => {
            c.pos += 1;
            factor(c)
        }
        Some(b'(') => {
            c.pos += 1;
            let inner = expr(c)?;
            if !c.eat(b')') {
                return Err(c.err("unbalanced parenthesis"));
            }
            Ok(inner)
        }
        Some(b's') => Ok(QuadExt::sqrt(c.sqrt_arg()?)),
        Some(b'0'..=b'9') => Ok(QuadExt::from_integer(c.uint()?)),
        _ => Err(c.err("expected a number, sqrt(..) or (")),
    }
}

/// Parses the exact scalar text form.
pub fn parse_quad(src: &str) -> Result<QuadExt> {
    let mut c = Cursor::new(src);
    if c.bytes.is_empty() {
        return Err(c.err("empty scalar"));
    }
    let x = expr(&mut c)?;
    if c.pos != c.bytes.len() {
        return Err(c.err("trailing input"));
    }
    Ok(x)
}

/// Parses a rational `p/s` or integer `p`.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    parse_quad(src)?
        .to_rational()
        .ok_or_else(|| Error::Parse(format!("expected a rational, got {src:?}")))
}

/// Canonical text for a rational: `p` or `p/s`.
pub fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
