//! Exact, unreduced score fractions.
//!
//! Scores keep the raw counts they were computed from (`7/14`, not `1/2`) so
//! reports show the same fractions as a hand computation, and so corpus
//! totals can pool numerators and denominators. A zero denominator resolves to
//! 0 or 1 depending on the rule the ratio was built with.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::MetricError;

/// Value of a ratio whose denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IfUndefined {
    Zero,
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RatioRepr", from = "RatioRepr")]
pub struct Ratio {
    numerator: u64,
    denominator: u64,
    if_undefined: IfUndefined,
}

impl Ratio {
    /// `if_undefined` only matters when `denominator` is zero and is normalized
    /// away otherwise.
    pub fn new(numerator: u64, denominator: u64, if_undefined: IfUndefined) -> Self {
        let if_undefined = if denominator == 0 {
            if_undefined
        } else {
            IfUndefined::Zero
        };
        Ratio {
            numerator,
            denominator,
            if_undefined,
        }
    }

    /// Recall-style ratio: 0/0 counts as 0.
    pub fn recall(numerator: u64, denominator: u64) -> Self {
        Self::new(numerator, denominator, IfUndefined::Zero)
    }

    /// Precision-style ratio: 0/0 counts as 1.
    pub fn precision(numerator: u64, denominator: u64) -> Self {
        Self::new(numerator, denominator, IfUndefined::One)
    }

    pub fn zero() -> Self {
        Self::recall(0, 1)
    }

    pub fn one() -> Self {
        Self::recall(1, 1)
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn if_undefined(&self) -> IfUndefined {
        self.if_undefined
    }

    pub fn is_undefined(&self) -> bool {
        self.denominator == 0
    }

    /// The resolved value as a reduced fraction with a positive denominator.
    pub fn exact(&self) -> (u64, u64) {
        if self.denominator == 0 {
            return match self.if_undefined {
                IfUndefined::Zero => (0, 1),
                IfUndefined::One => (1, 1),
            };
        }
        let g = gcd(self.numerator, self.denominator);
        (self.numerator / g, self.denominator / g)
    }

    pub fn value(&self) -> f64 {
        let (n, d) = self.exact();
        n as f64 / d as f64
    }

    /// Exact comparison of the resolved value with `numerator/denominator`.
    pub fn is(&self, numerator: u64, denominator: u64) -> bool {
        let (n, d) = self.exact();
        n as u128 * denominator as u128 == numerator as u128 * d as u128
    }

    pub fn cmp_value(&self, other: &Ratio) -> Ordering {
        let (a, b) = self.exact();
        let (c, d) = other.exact();
        (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
    }

    pub fn value_eq(&self, other: &Ratio) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }

    /// Sums numerators and denominators. A pooled 0/0 keeps the shared rule.
    pub fn pooled(&self, other: &Ratio) -> Ratio {
        let rule = if self.denominator == 0 {
            self.if_undefined
        } else {
            other.if_undefined
        };
        Ratio::new(
            self.numerator + other.numerator,
            self.denominator + other.denominator,
            rule,
        )
    }

    /// Decimal rendering rounded half-to-even at `places`, computed on the exact value.
    pub fn round_half_even(&self, places: u32) -> String {
        let (n, d) = self.exact();
        let scale = 10u128.pow(places);
        let scaled = n as u128 * scale;
        let (d, mut q, r) = (d as u128, scaled / d as u128, scaled % d as u128);
        match (2 * r).cmp(&d) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q % 2 == 1 => q += 1,
            _ => {}
        }
        let int = q / scale;
        if places == 0 {
            return int.to_string();
        }
        format!("{int}.{:0width$}", q % scale, width = places as usize)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Serialize, Deserialize)]
struct RatioRepr {
    numerator: u64,
    denominator: u64,
    value: f64,
}

impl From<Ratio> for RatioRepr {
    fn from(r: Ratio) -> Self {
        RatioRepr {
            numerator: r.numerator,
            denominator: r.denominator,
            value: r.value(),
        }
    }
}

impl From<RatioRepr> for Ratio {
    fn from(r: RatioRepr) -> Self {
        let if_undefined = if r.denominator == 0 && r.value >= 0.5 {
            IfUndefined::One
        } else {
            IfUndefined::Zero
        };
        Ratio::new(r.numerator, r.denominator, if_undefined)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Reduces a wide fraction and narrows it to `u64`, shedding low bits in the
/// (unrealistic) case where the reduced form still does not fit.
pub(crate) fn narrow(n: u128, d: u128) -> (u64, u64) {
    let g = gcd128(n, d);
    let (mut n, mut d) = (n / g, d / g);
    while d > u64::MAX as u128 || n > u64::MAX as u128 {
        n >>= 1;
        d >>= 1;
    }
    (n as u64, d as u64)
}

/// Harmonic mean of recall and precision, `2/F = 1/R + 1/P`, exact. Zero when
/// both inputs are zero.
pub fn f_measure(recall: &Ratio, precision: &Ratio) -> Result<Ratio, MetricError> {
    let (a, b) = recall.exact();
    let (c, d) = precision.exact();
    if a > b {
        return Err(MetricError::Domain(format!("recall {a}/{b}")));
    }
    if c > d {
        return Err(MetricError::Domain(format!("precision {c}/{d}")));
    }
    // R = a/b, P = c/d  =>  F = 2ac / (ad + cb)
    let num = 2 * a as u128 * c as u128;
    let den = a as u128 * d as u128 + c as u128 * b as u128;
    if den == 0 {
        return Ok(Ratio::zero());
    }
    let (n, d) = narrow(num, den);
    Ok(Ratio::recall(n, d))
}
