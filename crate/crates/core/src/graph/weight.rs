use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Numeric domain of edge weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Exact signed integers.
    Integer,
    /// 64-bit floats; every weight must be finite.
    Real,
}

/// An edge weight / path length.
///
/// Implemented for `i64` and `f64` (the two file-level modes) and for
/// `i128`, which the mean-cycle search uses for scaled weights.
pub trait Weight:
    Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Default
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const MODE: WeightMode;

    fn is_finite(self) -> bool;

    /// Total order; only meaningful on finite values.
    fn total_cmp(&self, other: &Self) -> Ordering;

    fn to_f64(self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// The exact integer value in integer mode, `None` in real mode.
    fn as_i128(self) -> Option<i128>;

    /// Parses one weight token of the graph file format.
    fn parse_token(s: &str) -> Option<Self>;

    /// Formats a weight so that [`Weight::parse_token`] reads it back exactly.
    fn format_token(self) -> String;

    fn is_negative(self) -> bool {
        self < Self::ZERO
    }
}

impl Weight for i64 {
    const ZERO: Self = 0;
    const MODE: WeightMode = WeightMode::Integer;

    fn is_finite(self) -> bool {
        true
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn as_i128(self) -> Option<i128> {
        Some(self as i128)
    }

    fn parse_token(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    fn format_token(self) -> String {
        self.to_string()
    }
}

impl Weight for i128 {
    const ZERO: Self = 0;
    const MODE: WeightMode = WeightMode::Integer;

    fn is_finite(self) -> bool {
        true
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn from_i64(v: i64) -> Self {
        v as i128
    }

    fn as_i128(self) -> Option<i128> {
        Some(self)
    }

    fn parse_token(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    fn format_token(self) -> String {
        self.to_string()
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    const MODE: WeightMode = WeightMode::Real;

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn as_i128(self) -> Option<i128> {
        None
    }

    fn parse_token(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    // `{:?}` is the shortest representation that round-trips, and always
    // carries a '.' or exponent so the file stays recognisably real-valued.
    fn format_token(self) -> String {
        format!("{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_tokens_are_marked_and_exact() {
        assert_eq!(3.0f64.format_token(), "3.0");
        for x in [0.1f64, -1.0 / 3.0, 1e-300, 12345.678901234567] {
            assert_eq!(f64::parse_token(&x.format_token()), Some(x));
        }
        assert!(f64::parse_token("nan").unwrap().is_nan());
    }

    #[test]
    fn integer_tokens() {
        assert_eq!(i64::parse_token("-42"), Some(-42));
        assert_eq!(i64::parse_token("4.0"), None);
    }
}
