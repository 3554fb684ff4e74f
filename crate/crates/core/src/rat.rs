//! Exact rationals and their extension by `+∞`.
//!
//! All rational quantities in the crate (targets, skewness values, weights,
//! relative types) are [`Rat`], an arbitrary-precision reduced fraction.
//! Values that may be infinite (curve valuations, intersection numbers of
//! curves sharing a component) are [`ExtRat`].

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q` (optionally surrounded by whitespace).
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let s = text.trim();
    let bad = || Error::BadRational(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// A rational or `+∞`.
///
/// The derived ordering places every finite value below `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Finite(Rat),
    Infinite,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinite)
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinite => None,
        }
    }

    /// Multiplies by a nonnegative rational; `0 · ∞` is taken to be `0`.
    pub fn scale(&self, c: &Rat) -> ExtRat {
        debug_assert!(!c.is_negative());
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * c),
            ExtRat::Infinite if c.is_zero() => ExtRat::zero(),
            ExtRat::Infinite => ExtRat::Infinite,
        }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        match text.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(ExtRat::Infinite),
            other => parse_rat(other).map(ExtRat::Finite),
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl From<u64> for ExtRat {
    fn from(n: u64) -> Self {
        ExtRat::Finite(Rat::from_integer(BigInt::from(n)))
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinite,
        }
    }
}

impl Mul<&Rat> for &ExtRat {
    type Output = ExtRat;
    fn mul(self, rhs: &Rat) -> ExtRat {
        self.scale(rhs)
    }
}

impl PartialEq<Rat> for ExtRat {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, ExtRat::Finite(r) if r == other)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{r}"),
            ExtRat::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExtRat::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Rat`] as its `"p/q"` string.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat(" -4 ").unwrap(), int(-4));
        assert_eq!(format_rat(&rat(20, 12)), "5/3");
        assert_eq!(format_rat(&int(8)), "8");
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        for bad in ["", "1/0", "1/-2", "x", "1.5", "--1", "1/"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ext_ordering_and_sum() {
        let a = ExtRat::from(rat(3, 2));
        assert!(a < ExtRat::Infinite);
        assert_eq!(a.clone().min(ExtRat::Infinite), a);
        assert_eq!(a.clone() + ExtRat::Infinite, ExtRat::Infinite);
        assert_eq!(a.clone() + a, ExtRat::from_int(3));
        assert_eq!(ExtRat::parse("inf").unwrap(), ExtRat::Infinite);
        assert_eq!(ExtRat::Infinite.to_string(), "inf");
    }
}
