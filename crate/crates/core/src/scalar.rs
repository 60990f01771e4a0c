//! Numeric values used by rank orders and measures.
//!
//! Everything that carries a weight is generic over [`Scalar`]. Floating
//! point types work for quick experiments; [`num_rational::Rational64`]
//! gives exact sums when ties matter.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Neg};

use num_rational::Rational64;
use num_traits::{FromPrimitive, Zero};

/// A totally ordered (up to NaN, which is never produced) additive value.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + Add<Output = Self>
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Parses an unsigned numeric literal as written in program text
    /// (`12`, `0.5`, `3/4`). The sign is handled by the caller.
    fn parse_literal(text: &str) -> Option<Self>;

    /// Text that [`Scalar::parse_literal`] reads back to the same value,
    /// with a leading `-` for negative values.
    fn render(&self) -> String {
        self.to_string()
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }
}

fn split_ratio(text: &str) -> Option<(&str, Option<&str>)> {
    match text.split_once('/') {
        Some((num, den)) if !num.is_empty() && !den.is_empty() => Some((num, Some(den))),
        Some(_) => None,
        None => Some((text, None)),
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn parse_literal(text: &str) -> Option<Self> {
                let (num, den) = split_ratio(text)?;
                let mut value: $t = num.parse().ok()?;
                if let Some(den) = den {
                    let den: $t = den.parse().ok()?;
                    if den == 0.0 {
                        return None;
                    }
                    value /= den;
                }
                value.is_finite().then_some(value)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational64 {
    fn parse_literal(text: &str) -> Option<Self> {
        let (num, den) = split_ratio(text)?;
        let value = match num.split_once('.') {
            Some((int, frac)) => {
                if int.is_empty() || frac.is_empty() || frac.len() > 15 {
                    return None;
                }
                let scale = 10i64.checked_pow(frac.len() as u32)?;
                let int: i64 = int.parse().ok()?;
                let frac: i64 = frac.parse().ok()?;
                Rational64::new(int.checked_mul(scale)?.checked_add(frac)?, scale)
            }
            None => Rational64::from_integer(num.parse().ok()?),
        };
        match den {
            Some(den) => {
                let den: i64 = den.parse().ok()?;
                (den != 0).then(|| value / Rational64::from_integer(den))
            }
            None => Some(value),
        }
    }
}

/// A value of `[-inf, +inf]` over the scalar type `S`.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub enum Extended<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> Extended<S> {
    pub fn zero() -> Self {
        Extended::Finite(S::zero())
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, Extended::Finite(_))
    }

    /// Sum of two extended values; `None` when `+inf` meets `-inf`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        use Extended::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a.clone() + b.clone())),
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
        }
    }

    /// Adds a finite shift, leaving infinities in place.
    pub fn shifted(&self, by: &S) -> Self {
        match self {
            Extended::Finite(v) => Extended::Finite(v.clone() + by.clone()),
            other => other.clone(),
        }
    }

    /// Compares two values; `None` only if a float payload is NaN.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        self.partial_cmp(other)
    }

    /// Parses `inf`, `-inf`, or a signed scalar literal.
    pub fn parse(text: &str) -> Option<Self> {
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        if body == "inf" {
            return Some(if negative { Extended::NegInf } else { Extended::PosInf });
        }
        let value = S::parse_literal(body)?;
        Some(Extended::Finite(if negative { -value } else { value }))
    }
}

impl<S: Scalar> Display for Extended<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("inf"),
            Extended::Finite(v) => f.write_str(&v.render()),
        }
    }
}
