//! Exact rational and integer linear algebra.
//!
//! Every scalar is a [`Rational`] (an arbitrary-precision fraction kept in
//! lowest terms); there is no floating point anywhere in this crate's math.
//! Symmetric matrices are flattened to vectors of length `n(n+1)/2` in
//! row-major upper-triangle order, `(0,0), (0,1), .., (0,n-1), (1,1), ..`,
//! wherever they are treated as points of the space of symmetric matrices.

mod hnf;
mod lattice;
mod solve;
mod sym;

pub use hnf::hnf;
pub use lattice::{IntMatrix, LatticeVector};
pub use solve::{linearly_independent, rank, solve_cone_coefficients};
pub use sym::{gram_an, quad_form, rank1, sym_inner, SymMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `num / den`, reduced. Panics on a zero denominator; use
/// [`checked_div`] where the divisor is data.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses `"p/q"` or `"p"` with optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational '{text}'"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{text}'")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` text (just `"p"` for integers).
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Smallest integer `s` with `s*s >= value` for `value >= 0`.
pub(crate) fn ceil_sqrt(value: &Rational) -> BigInt {
    debug_assert!(!value.is_negative());
    // sqrt(p/q) = sqrt(p*q)/q
    let p = value.numer();
    let q = value.denom();
    let pq = p * q;
    let mut root = pq.sqrt();
    if &root * &root < pq {
        root += 1;
    }
    // ceil(root / q) is an upper bound for sqrt(p/q)
    let (quot, rem) = root.div_rem(q);
    let mut s = quot;
    if !rem.is_zero() {
        s += 1;
    }
    while &(&s * &s) * q < *p {
        s += 1;
    }
    s
}

/// Scales a rational vector to a primitive integer vector (content 1) with the
/// same direction. The zero vector maps to itself.
pub(crate) fn primitive_integer(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v.numer() * &lcm) / v.denom())
        .collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    ints
}
