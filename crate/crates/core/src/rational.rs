//! Exact rationals and half-open rational intervals.
//!
//! Both serialize as `num/den` strings so that endpoints survive JSON and CSV
//! round trips without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced rational number with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.0.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
        Rat((&a.0 + &b.0) / BigInt::from(2))
    }

    pub fn add(&self, other: &Rat) -> Rat {
        Rat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        Rat(&self.0 - &other.0)
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        Rat(&self.0 * &other.0)
    }

    pub fn neg(&self) -> Rat {
        Rat(-&self.0)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::integer(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `num/den` or a bare integer. Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains(['.', 'e', 'E']) {
            return Err(Error::parse(s, "decimal notation is not exact; use num/den"));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::parse(s, "bad numerator"))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::parse(s, "bad denominator"))?;
        if den.is_zero() {
            return Err(Error::parse(s, "zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: Rat,
    hi: Rat,
}

impl TryFrom<RawInterval> for RatInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        RatInterval::new(raw.lo, raw.hi)
    }
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo >= hi {
            return Err(Error::invalid(format!("empty interval [{lo}, {hi})")));
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn from_ints(lo: i64, hi: i64) -> Result<Self> {
        Self::new(Rat::integer(lo), Rat::integer(hi))
    }

    /// `[-Q-1, Q+1)`, which holds every root of a monic polynomial of height at most `Q`.
    pub fn covering_height(q: u64) -> Self {
        let b = BigInt::from(q) + BigInt::one();
        RatInterval {
            lo: Rat::integer(-b.clone()),
            hi: Rat::integer(b),
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        self.hi.sub(&self.lo)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x < &self.hi
    }

    /// Interval `[-hi, -lo)`: the image under `x -> -x`, shifted to the half-open convention.
    pub fn mirrored(&self) -> RatInterval {
        RatInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = std::cmp::max(&self.lo, &other.lo).clone();
        let hi = std::cmp::min(&self.hi, &other.hi).clone();
        match lo.cmp(&hi) {
            Ordering::Less => Some(RatInterval { lo, hi }),
            _ => None,
        }
    }

    /// Splits into `parts` equal half-open pieces.
    pub fn split(&self, parts: usize) -> Vec<RatInterval> {
        assert!(parts >= 1);
        let step = Rat(self.width().0 / BigInt::from(parts));
        let mut edges = Vec::with_capacity(parts + 1);
        for i in 0..parts {
            edges.push(self.lo.add(&Rat(&step.0 * BigInt::from(i))));
        }
        edges.push(self.hi.clone());
        edges
            .windows(2)
            .map(|w| RatInterval {
                lo: w[0].clone(),
                hi: w[1].clone(),
            })
            .collect()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for RatInterval {
    type Err = Error;

    /// Parses `lo:hi` with each endpoint in `num/den` form.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected lo:hi"))?;
        RatInterval::new(lo.parse()?, hi.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let r: Rat = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("7".parse::<Rat>().unwrap().to_string(), "7/1");
        assert!("1.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn interval_parse() {
        let i: RatInterval = "-3/1:3/1".parse().unwrap();
        assert_eq!(i.lo(), &Rat::integer(-3));
        assert!("3/1:3/1".parse::<RatInterval>().is_err());
        assert!("1/2".parse::<RatInterval>().is_err());
    }

    #[test]
    fn half_open_membership() {
        let i = RatInterval::from_ints(1, 2).unwrap();
        assert!(i.contains(&Rat::integer(1)));
        assert!(!i.contains(&Rat::integer(2)));
    }

    #[test]
    fn split_partitions() {
        let i: RatInterval = "0/1:1/1".parse().unwrap();
        let parts = i.split(3);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].hi(), parts[1].lo());
        assert_eq!(parts[1].hi().to_string(), "2/3");
        assert_eq!(parts[2].hi(), i.hi());
    }

    #[test]
    fn json_round_trip() {
        let i: RatInterval = "-1/3:5/2".parse().unwrap();
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"lo":"-1/3","hi":"5/2"}"#);
        let back: RatInterval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
        assert!(serde_json::from_str::<RatInterval>(r#"{"lo":"1/1","hi":"0/1"}"#).is_err());
    }
}
