//! Distances that are exact on graphs and floating point on model spaces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default tolerance for floating-point verdicts.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Length {
    Exact(Scalar),
    Approx(f64),
}

impl Length {
    pub fn zero() -> Self {
        Length::Exact(Scalar::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Length::Exact(s) => s.to_f64(),
            Length::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Scalar> {
        match self {
            Length::Exact(s) => Some(s),
            Length::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Length::Exact(_))
    }

    /// The exact value, or an error naming `what`.
    pub fn require_exact(&self, what: &str) -> Result<&Scalar> {
        self.as_exact()
            .ok_or_else(|| Error::input(format!("{what} must be an exact rational on this space")))
    }

    pub fn plus(&self, other: &Length) -> Length {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => Length::Exact(a + b),
            _ => Length::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn minus(&self, other: &Length) -> Length {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => Length::Exact(a - b),
            _ => Length::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn abs(&self) -> Length {
        match self {
            Length::Exact(a) => Length::Exact(a.abs()),
            Length::Approx(x) => Length::Approx(x.abs()),
        }
    }

    pub fn abs_diff(&self, other: &Length) -> Length {
        self.minus(other).abs()
    }

    pub fn max(&self, other: &Length) -> Length {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => Length::Exact(Scalar::max_of(a, b).clone()),
            _ => Length::Approx(self.to_f64().max(other.to_f64())),
        }
    }

    pub fn min(&self, other: &Length) -> Length {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => Length::Exact(Scalar::min_of(a, b).clone()),
            _ => Length::Approx(self.to_f64().min(other.to_f64())),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Length::Exact(a) => a.is_negative(),
            Length::Approx(x) => *x < 0.0,
        }
    }

    /// Exactly zero for exact values; `|x| <= tol` for floats.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Length::Exact(a) => a.is_zero(),
            Length::Approx(x) => x.abs() <= tol,
        }
    }

    /// Comparison: exact when both are exact, by float value otherwise.
    pub fn compare(&self, other: &Length) -> Ordering {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl From<Scalar> for Length {
    fn from(s: Scalar) -> Self {
        Length::Exact(s)
    }
}

impl From<f64> for Length {
    fn from(x: f64) -> Self {
        Length::Approx(x)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Exact(s) => fmt::Display::fmt(s, f),
            Length::Approx(x) => f.pad(&format_float(*x)),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Renders a float with 12 significant digits, trailing zeros trimmed.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}
