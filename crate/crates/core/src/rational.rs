//! Exact rational scalars and their text form.
//!
//! Every coefficient the library produces is a [`Q`]. The canonical text form
//! is `"p/q"` in lowest terms with a positive denominator, or `"p"` when the
//! value is an integer.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

pub type Q = num_rational::Ratio<i64>;

/// Fractional part in `[0, 1)`.
pub fn fract(q: Q) -> Q {
    q - q.floor()
}

pub fn is_integral(q: &Q) -> bool {
    q.is_integer()
}

/// Smallest value `x >= lower` with `fract(x) == residue`.
pub fn ceil_to_residue(lower: Q, residue: Q) -> Q {
    residue + (lower - residue).ceil()
}

/// Largest value `x <= upper` with `fract(x) == residue`.
pub fn floor_to_residue(upper: Q, residue: Q) -> Q {
    residue + (upper - residue).floor()
}

/// Canonical text form.
pub fn format_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_vector(v: &[Q]) -> String {
    v.iter().map(format_q).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"`. Non-reduced fractions are rejected unless `lenient`.
pub fn parse_q_with(s: &str, lenient: bool) -> Result<Q, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: i64 = num.parse().map_err(|_| err("bad numerator"))?;
    let den: i64 = match den {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => 1,
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    if !lenient && (den.is_negative() || num.gcd(&den) != 1) {
        return Err(err("not in lowest terms"));
    }
    Ok(Q::new(num, den))
}

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    parse_q_with(s, false)
}

/// Parses a comma separated vector such as `"1/2,1/2"`.
pub fn parse_vector(s: &str) -> Result<Vec<Q>, ParseRationalError> {
    s.split(',').map(parse_q).collect()
}

pub fn dot(v: &[Q], m: &[i64]) -> Q {
    v.iter()
        .zip(m)
        .fold(Q::zero(), |acc, (a, &b)| acc + *a * Q::from_integer(b))
}
