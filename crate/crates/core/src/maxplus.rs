//! Scalars of the max-plus semiring `ℝ_max = (ℝ ∪ {−∞}, max, +)` and the
//! Maslov family `⊕_h` that deforms ordinary addition into `max`.
//!
//! | op  | meaning | neutral |
//! |-----|---------|---------|
//! | `⊕` | `max`   | `−∞`    |
//! | `⊙` | `+`     | `0`     |
//!
//! `−∞` is a distinguished variant, not an `f64` sentinel, so `⊙` is total
//! and `−∞ ⊙ x = −∞` can never turn into `NaN`. NaN and `+∞` are rejected at
//! construction.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Absolute tolerance for comparing values that went through arithmetic.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// An element of `ℝ ∪ {−∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum MaxPlus {
    #[default]
    NegInf,
    Finite(f64),
}

pub use MaxPlus::{Finite, NegInf};

impl MaxPlus {
    /// Tropical zero, `−∞`.
    pub const ZERO: MaxPlus = NegInf;
    /// Tropical unit, `0`.
    pub const ONE: MaxPlus = Finite(0.0);

    /// Builds a value from an `f64`. `f64::NEG_INFINITY` maps to [`NegInf`];
    /// NaN and `+∞` are errors.
    pub fn new(x: f64) -> Result<Self, Error> {
        if x.is_nan() {
            Err(Error::NotMaxPlus("NaN".into()))
        } else if x == f64::INFINITY {
            Err(Error::NotMaxPlus("+inf".into()))
        } else if x == f64::NEG_INFINITY {
            Ok(NegInf)
        } else {
            // normalise -0.0 so that equality and serialization agree
            Ok(Finite(if x == 0.0 { 0.0 } else { x }))
        }
    }

    /// Panicking variant of [`MaxPlus::new`] for literals.
    pub fn lit(x: f64) -> Self {
        Self::new(x).expect("literal must be a max-plus value")
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, NegInf)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The value as `f64`, with `−∞` mapped to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(x) => x,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            NegInf => None,
            Finite(x) => Some(x),
        }
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `a ⊙ b = a + b`, with `−∞` absorbing.
    pub fn odot(self, other: Self) -> Self {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => NegInf,
        }
    }

    /// Tropical minimum, the meet of the order. Used by gluing.
    pub fn meet(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `|a − b|` in the extended sense: `0` when both are `−∞`, `+∞` when
    /// exactly one is.
    pub fn abs_diff(self, other: Self) -> f64 {
        match (self, other) {
            (NegInf, NegInf) => 0.0,
            (Finite(a), Finite(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        }
    }

    /// Equality up to an absolute tolerance; `−∞` only matches `−∞`.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        self.abs_diff(other) <= tol
    }

    /// `⊕` over an iterator; `−∞` for an empty one.
    pub fn sum<I: IntoIterator<Item = MaxPlus>>(iter: I) -> Self {
        iter.into_iter().fold(NegInf, MaxPlus::oplus)
    }
}

impl From<f64> for MaxPlus {
    /// Panics on NaN / `+∞`; use [`MaxPlus::new`] for untrusted input.
    fn from(x: f64) -> Self {
        MaxPlus::lit(x)
    }
}

impl Eq for MaxPlus {}

impl PartialOrd for MaxPlus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlus {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, Finite(_)) => Ordering::Less,
            (Finite(_), NegInf) => Ordering::Greater,
            // no NaN by construction
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            Finite(x) => write!(f, "{x:?}"),
        }
    }
}

impl Serialize for MaxPlus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            NegInf => serializer.serialize_str("-inf"),
            Finite(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for MaxPlus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MaxPlusVisitor;

        impl Visitor<'_> for MaxPlusVisitor {
            type Value = MaxPlus;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a finite number or the string \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<MaxPlus, E> {
                if v.is_finite() {
                    MaxPlus::new(v).map_err(E::custom)
                } else {
                    Err(E::custom("non-finite numbers must be written as \"-inf\""))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<MaxPlus, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<MaxPlus, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<MaxPlus, E> {
                match v {
                    "-inf" => Ok(NegInf),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(MaxPlusVisitor)
    }
}

/// Maslov-deformed addition `u ⊕_h v = h·ln(e^{u/h} + e^{v/h})`.
///
/// Evaluated as `m + h·ln(1 + e^{−|u−v|/h})` with `m = max(u, v)`, so nothing
/// overflows for small `h`. The result lies in `[m, m + h·ln 2]` and tends to
/// `m` as `h ↓ 0`.
pub fn oplus_h(u: f64, v: f64, h: f64) -> Result<f64, Error> {
    if h.is_nan() || h <= 0.0 || h.is_infinite() {
        return Err(Error::NonPositiveTemperature(h));
    }
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::NotMaxPlus(format!("oplus_h needs finite operands, got ({u}, {v})")));
    }
    let m = u.max(v);
    let gap = (u - v).abs();
    Ok(m + h * (-gap / h).exp().ln_1p())
}
