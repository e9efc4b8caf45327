//! Scalar types used for probabilities.
//!
//! The logic engine runs on exact rationals ([`Exact`]) so that every
//! identity it is checked against holds with zero tolerance. The classifier
//! and any caller that prefers speed can use `f64`. Both implement [`Prob`].

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational probability.
pub type Exact = BigRational;

/// Arithmetic mode selectable at run time (CLI, config files).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Float,
}

impl FromStr for Arithmetic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" | "rational" => Ok(Arithmetic::Exact),
            "float" | "f64" => Ok(Arithmetic::Float),
            other => Err(Error::InvalidProbability(format!("unknown arithmetic mode `{other}`"))),
        }
    }
}

/// Tolerance used by float mode wherever exact mode demands equality.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

pub trait Prob:
    Clone
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact rationals render as `p/q` (or an integer), floats as decimals.
    fn render(&self) -> String;
    fn powu(&self, exp: usize) -> Self;
    /// Equality as the arithmetic mode understands it: exact for rationals,
    /// within [`FLOAT_TOLERANCE`] for floats.
    fn approx_eq(&self, other: &Self) -> bool;
}

impl Prob for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn powu(&self, exp: usize) -> Self {
        num_traits::pow::pow(self.clone(), exp)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Prob for f64 {
    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn powu(&self, exp: usize) -> Self {
        self.powi(exp as i32)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }
}

/// Parses `p/q`, a plain decimal (`0.125`, `1e-3`) or an integer into an
/// exact rational. Decimal text is converted digit by digit, so `0.1` is
/// exactly one tenth.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidProbability(text.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Parses a value that must lie in `[0, 1]`.
pub fn parse_probability(text: &str) -> Result<BigRational> {
    let r = parse_rational(text)?;
    if r.is_negative() || r > BigRational::one() {
        return Err(Error::InvalidProbability(text.to_string()));
    }
    Ok(r)
}

/// Exact rational from an `f64` given on the command line or in config.
/// Goes through the shortest decimal representation so `0.8` means 4/5.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::InvalidProbability(x.to_string()));
    }
    parse_rational(&format!("{x}"))
}

pub(crate) fn in_unit_interval<P: Prob>(p: &P) -> bool {
    *p >= P::zero() && *p <= P::one()
}
