//! Extended real numbers.
//!
//! [`ExtReal`] is a point of the extended real line `[-inf, +inf]`, used for
//! interval endpoints and real-line coordinates. [`Dist`] is an extended
//! nonnegative real `[0, +inf]`, the value type of every distance in the crate.
//! Neither admits NaN, so both carry a total order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A point of `[-inf, +inf]`. Never NaN.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INF: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const POS_INF: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps `x`, returning `None` for NaN.
    pub fn new(x: f64) -> Option<Self> {
        if x.is_nan() {
            None
        } else {
            // -0.0 and 0.0 are the same point; keep a single bit pattern.
            Some(ExtReal(if x == 0.0 { 0.0 } else { x }))
        }
    }

    /// Panics on NaN. For literals and values already known to be numbers.
    pub fn of(x: f64) -> Self {
        Self::new(x).expect("NaN is not an extended real")
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// `|self - other|`, with `|inf - inf| = 0` for equal infinities.
    pub fn abs_diff(self, other: ExtReal) -> Dist {
        if self.0 == other.0 {
            Dist::ZERO
        } else {
            Dist::of((self.0 - other.0).abs())
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<ExtReal> for f64 {
    fn from(x: ExtReal) -> f64 {
        x.0
    }
}

/// An extended nonnegative real, `[0, +inf]`.
///
/// Addition saturates at `+inf`; finite values never compare equal to `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dist(f64);

impl Dist {
    pub const ZERO: Dist = Dist(0.0);
    pub const INF: Dist = Dist(f64::INFINITY);

    /// Wraps `x`, returning `None` for NaN or negative values.
    pub fn new(x: f64) -> Option<Self> {
        if x.is_nan() || x < 0.0 {
            None
        } else {
            Some(Dist(if x == 0.0 { 0.0 } else { x }))
        }
    }

    pub fn of(x: f64) -> Self {
        Self::new(x).unwrap_or_else(|| panic!("{x} is not an extended nonnegative real"))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn min(self, other: Dist) -> Dist {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Dist) -> Dist {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self^p` for `p >= 1`; `inf^p = inf`.
    pub fn powf(self, p: f64) -> Dist {
        Dist(self.0.powf(p))
    }

    /// `|a - b|` within tolerance, with infinities equal only to themselves.
    pub fn approx_eq(self, other: Dist, tol: f64) -> bool {
        if self.is_infinite() || other.is_infinite() {
            self == other
        } else {
            (self.0 - other.0).abs() <= tol
        }
    }

    /// `self <= other + tol`, with the same infinity handling as `approx_eq`.
    pub fn le_tol(self, other: Dist, tol: f64) -> bool {
        if other.is_infinite() {
            true
        } else if self.is_infinite() {
            false
        } else {
            self.0 <= other.0 + tol
        }
    }
}

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for Dist {
    type Output = Dist;

    fn add(self, rhs: Dist) -> Dist {
        Dist(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Dist {
    fn sum<I: Iterator<Item = Dist>>(iter: I) -> Dist {
        iter.fold(Dist::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("+inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Serialized as a JSON number, or the string sentinels `"-inf"` / `"+inf"`.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Sentinel(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => ExtReal::new(x).ok_or_else(|| serde::de::Error::custom("NaN")),
            Raw::Sentinel(s) => match s.as_str() {
                "+inf" => Ok(ExtReal::POS_INF),
                "-inf" => Ok(ExtReal::NEG_INF),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number, \"-inf\" or \"+inf\", found {other:?}"
                ))),
            },
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("+inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let x = ExtReal::deserialize(d)?;
        Dist::new(x.get()).ok_or_else(|| serde::de::Error::custom("negative distance"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_addition() {
        assert_eq!(Dist::of(3.0) + Dist::INF, Dist::INF);
        assert_eq!(Dist::INF + Dist::INF, Dist::INF);
        assert_eq!(Dist::ZERO + Dist::of(2.5), Dist::of(2.5));
    }

    #[test]
    fn finite_never_equals_infinite() {
        assert!(Dist::of(f64::MAX) < Dist::INF);
        assert!(!Dist::of(1e308).approx_eq(Dist::INF, 1e300));
        assert!(Dist::INF.approx_eq(Dist::INF, 0.0));
    }

    #[test]
    fn rejects_nan_and_negatives() {
        assert!(Dist::new(f64::NAN).is_none());
        assert!(Dist::new(-1.0).is_none());
        assert!(ExtReal::new(f64::NAN).is_none());
        assert_eq!(ExtReal::of(-0.0), ExtReal::ZERO);
    }

    #[test]
    fn abs_diff_handles_infinities() {
        assert_eq!(ExtReal::POS_INF.abs_diff(ExtReal::POS_INF), Dist::ZERO);
        assert_eq!(ExtReal::NEG_INF.abs_diff(ExtReal::of(0.0)), Dist::INF);
        assert_eq!(ExtReal::of(0.25).abs_diff(ExtReal::of(0.75)), Dist::of(0.5));
    }

    #[test]
    fn sentinels_round_trip() {
        let xs = vec![ExtReal::NEG_INF, ExtReal::of(0.1), ExtReal::POS_INF];
        let s = serde_json::to_string(&xs).unwrap();
        assert_eq!(s, r#"["-inf",0.1,"+inf"]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xs);
        assert!(serde_json::from_str::<ExtReal>(r#""inf""#).is_err());
    }
}
