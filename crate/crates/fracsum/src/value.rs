//! Exact and floating value representations shared by all modules.
//!
//! Sums over integer-valued functions accumulate in checked `i128`;
//! rational-valued functions accumulate exactly in `BigRational` through a
//! balanced pairwise merger (sequential left-to-right addition would drag an
//! enormous common denominator through every step); `f64` paths use Neumaier
//! compensation with a fixed summation order.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = Ratio<BigInt>;

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or a plain integer into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::Parameter(format!("cannot parse rational from {s:?}: {e}")))
}

/// Render a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Correctly-rounded-enough conversion that survives numerators and
/// denominators far beyond `f64` range (e.g. 40 000-digit exact sums).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Shift so the integer quotient carries ~64 significant bits, divide,
    // then scale back.  Exact for everything f64 can represent.
    let shift = 64i64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if negative {
        -v
    } else {
        v
    }
}

/// A sum or function value: exact integer, exact rational, or float.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i128),
    Rational(Rational),
    Real(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Int(v) => *v as f64,
            Value::Rational(r) => rational_to_f64(r),
            Value::Real(v) => *v,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Value::Int(v) => Some(Rational::from(BigInt::from(*v))),
            Value::Rational(r) => Some(r.clone()),
            Value::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Real(_))
    }

    /// Exact equality for exact kinds; float kinds compare within a
    /// relative tolerance.
    pub fn matches(&self, other: &Value, rel_tol: f64) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                let scale = a.abs().max(b.abs()).max(1e-300);
                (a - b).abs() <= rel_tol * scale
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rational(r) => write!(f, "{}", format_rational(r)),
            Value::Real(v) => write!(f, "{v}"),
        }
    }
}

/// Balanced pairwise accumulator for exact rational sums.
///
/// Works like a binary counter: level `k` holds the sum of a complete block
/// of 2^k pushed terms.  Merging equal-sized blocks keeps intermediate
/// numerators and denominators near the minimum the final result forces,
/// instead of the O(n)-times-larger values left-to-right addition creates.
#[derive(Default)]
pub struct RationalAccumulator {
    levels: Vec<Option<Rational>>,
}

impl RationalAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Rational) {
        let mut carry = term;
        for slot in self.levels.iter_mut() {
            match slot.take() {
                None => {
                    *slot = Some(carry);
                    return;
                }
                Some(prev) => carry += prev,
            }
        }
        self.levels.push(Some(carry));
    }

    pub fn finish(self) -> Rational {
        let mut total = Rational::zero();
        for level in self.levels.into_iter().flatten() {
            total += level;
        }
        total
    }
}

/// Neumaier-compensated float accumulator (fixed summation order makes
/// results reproducible run to run).
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation += (self.sum - t) + term;
        } else {
            self.compensation += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Checked i128 accumulator; overflow is a resource error rather than a
/// silent wrap.
#[derive(Debug, Default, Clone, Copy)]
pub struct CheckedIntSum {
    sum: i128,
}

impl CheckedIntSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: i128) -> Result<()> {
        self.sum = self
            .sum
            .checked_add(term)
            .ok_or_else(|| Error::Resource("i128 overflow in integer accumulation".into()))?;
        Ok(())
    }

    pub fn total(&self) -> i128 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_sequential_on_harmonic_tail() {
        let mut acc = RationalAccumulator::new();
        let mut seq = Rational::zero();
        for n in 1..=200i64 {
            let t = rat(1, n * (n + 1));
            acc.push(t.clone());
            seq += t;
        }
        let total = acc.finish();
        assert_eq!(total, seq);
        assert_eq!(total, rat(200, 201));
    }

    #[test]
    fn big_rational_to_f64_handles_huge_components() {
        // 10^500 / (3 * 10^500) = 1/3 with components far beyond f64 range.
        let big = BigInt::from(10u32).pow(500);
        let r = Rational::new(big.clone(), big * 3);
        assert!((rational_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rational_to_f64(&rat(-7, 2)), -3.5);
        assert_eq!(rational_to_f64(&rat(0, 5)), 0.0);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rational("5/11").unwrap();
        assert_eq!(format_rational(&r), "5/11");
        assert_eq!(format_rational(&parse_rational("4").unwrap()), "4");
        assert!(parse_rational("not-a-number").is_err());
    }

    #[test]
    fn compensated_sum_beats_naive_on_cancellation() {
        let mut c = CompensatedSum::new();
        c.add(1e16);
        c.add(1.0);
        c.add(-1e16);
        assert_eq!(c.total(), 1.0);
    }

    #[test]
    fn checked_int_overflow_reported() {
        let mut s = CheckedIntSum::new();
        s.add(i128::MAX).unwrap();
        assert!(s.add(1).is_err());
    }
}
