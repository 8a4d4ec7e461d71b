//! Monic integer polynomials, the height box they are drawn from, and the
//! root-pair coefficient map used for two-root measure arguments.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// `x^n + a_{n-1} x^{n-1} + ... + a_0` with the leading 1 implicit.
///
/// Serializes as the JSON array `[a_0, ..., a_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicIntPoly {
    coeffs: Vec<BigInt>,
}

impl MonicIntPoly {
    /// `coeffs` are `a_0..a_{n-1}`; the degree is their count.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a monic polynomial needs degree >= 1"));
        }
        Ok(MonicIntPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from a full coefficient vector (lowest first) whose last entry is 1.
    pub(crate) fn from_full(mut full: Vec<BigInt>) -> Result<Self> {
        match full.pop() {
            Some(l) if l.is_one() => Self::new(full),
            _ => Err(Error::invalid("polynomial is not monic")),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0..a_{n-1}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_0..a_{n-1}, 1`.
    pub fn full_coeffs(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.push(BigInt::one());
        v
    }

    /// Naive height, the leading 1 included.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(BigInt::one(), |m, c| if c > m { c } else { m })
    }

    /// `den(x)^n * p(x)`: an exact integer with the sign of `p(x)`, zero iff `x` is a root.
    pub fn eval_scaled(&self, x: &Rat) -> BigInt {
        arith::eval_homogeneous(&self.full_coeffs(), x.num(), x.den())
            .expect("bigint arithmetic does not overflow")
    }

    /// `(n+1)^(1/2) H(p)`, the classical upper bound on the Mahler measure.
    pub fn mahler_upper_bound(&self) -> f64 {
        let h = self.height().to_f64().unwrap_or(f64::INFINITY);
        ((self.degree() + 1) as f64).sqrt() * h
    }

    pub(crate) fn to_i128_full(&self) -> Option<Vec<i128>> {
        let mut v = arith::to_i128_vec(&self.coeffs)?;
        v.push(1);
        Some(v)
    }

    /// Coefficients of `p(-x)` up to the overall sign `(-1)^n`, i.e. the monic
    /// polynomial whose roots are the negatives of these roots.
    pub fn negated_roots(&self) -> MonicIntPoly {
        let n = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (n - i) % 2 == 1 { -c } else { c.clone() })
            .collect();
        MonicIntPoly { coeffs }
    }
}

impl fmt::Display for MonicIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "x^{n}")?;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            match i {
                0 => write!(f, " {sign} {mag}")?,
                1 if mag.is_one() => write!(f, " {sign} x")?,
                1 => write!(f, " {sign} {mag}x")?,
                _ if mag.is_one() => write!(f, " {sign} x^{i}")?,
                _ => write!(f, " {sign} {mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for MonicIntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for MonicIntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = MonicIntPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of integers [a_0, ..., a_{n-1}]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                #[derive(Deserialize)]
                #[serde(untagged)]
                enum Num {
                    Int(i64),
                    Str(String),
                }
                let mut coeffs = Vec::new();
                while let Some(v) = seq.next_element::<Num>()? {
                    coeffs.push(match v {
                        Num::Int(i) => BigInt::from(i),
                        Num::Str(s) => s.parse().map_err(de::Error::custom)?,
                    });
                }
                MonicIntPoly::new(coeffs).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

/// An integer polynomial with arbitrary leading coefficient, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        arith::trim(&mut coeffs);
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        arith::degree(&self.0)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(|c| c.is_one())
    }

    pub fn eval_scaled(&self, x: &Rat) -> BigInt {
        arith::eval_homogeneous(&self.0, x.num(), x.den()).expect("bigint arithmetic does not overflow")
    }

    pub fn to_monic(&self) -> Option<MonicIntPoly> {
        if self.is_monic() && self.0.len() >= 2 {
            MonicIntPoly::from_full(self.0.clone()).ok()
        } else {
            None
        }
    }
}

impl From<&MonicIntPoly> for IntPoly {
    fn from(p: &MonicIntPoly) -> Self {
        IntPoly(p.full_coeffs())
    }
}

/// Number of monic polynomials of degree `n` and height at most `q`, `(2q+1)^n`, saturating.
pub fn box_size(n: usize, q: u64) -> u128 {
    let side = 2 * q as u128 + 1;
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(side))
}

fn check_box(n: usize, q: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    if q == 0 {
        return Err(Error::invalid("height bound must be at least 1"));
    }
    i64::try_from(q).map_err(|_| Error::invalid("height bound too large"))
}

/// Lexicographic walk over `[-Q, Q]^n` with `a_{n-1}` most significant and
/// `a_{n-1}` restricted to a prefix range.
#[derive(Clone, Debug)]
pub(crate) struct SmallBox {
    q: i64,
    top_end: i64,
    cur: Vec<i64>,
    done: bool,
}

impl SmallBox {
    pub(crate) fn new(n: usize, q: i64, top: RangeInclusive<i64>) -> Self {
        let (start, end) = (*top.start().max(&-q), *top.end().min(&q));
        let mut cur = vec![-q; n];
        cur[n - 1] = start;
        SmallBox {
            q,
            top_end: end,
            cur,
            done: start > end,
        }
    }

    /// Current tuple `a_0..a_{n-1}`, or `None` once exhausted.
    pub(crate) fn get(&self) -> Option<&[i64]> {
        (!self.done).then_some(self.cur.as_slice())
    }

    pub(crate) fn advance(&mut self) {
        let n = self.cur.len();
        for i in 0..n {
            let limit = if i == n - 1 { self.top_end } else { self.q };
            if self.cur[i] < limit {
                self.cur[i] += 1;
                return;
            }
            self.cur[i] = -self.q;
        }
        self.done = true;
    }
}

/// Iterator over every monic polynomial of a degree and height bound.
#[derive(Clone, Debug)]
pub struct MonicEnumerator {
    inner: SmallBox,
}

impl Iterator for MonicEnumerator {
    type Item = MonicIntPoly;

    fn next(&mut self) -> Option<MonicIntPoly> {
        let p = MonicIntPoly::from_i64(self.inner.get()?).expect("degree >= 1");
        self.inner.advance();
        Some(p)
    }
}

/// All monic degree-`n` polynomials with coefficients in `[-Q, Q]`, lexicographic
/// in `(a_{n-1}, ..., a_0)`; `(2Q+1)^n` items.
pub fn enumerate_monic(n: usize, q: u64) -> Result<MonicEnumerator> {
    let qi = check_box(n, q)?;
    Ok(MonicEnumerator {
        inner: SmallBox::new(n, qi, -qi..=qi),
    })
}

/// The part of [`enumerate_monic`] whose leading free coefficient `a_{n-1}`
/// lies in `top`. Disjoint `top` ranges give disjoint slices.
pub fn enumerate_monic_slice(n: usize, q: u64, top: RangeInclusive<i64>) -> Result<MonicEnumerator> {
    let qi = check_box(n, q)?;
    Ok(MonicEnumerator {
        inner: SmallBox::new(n, qi, top),
    })
}

pub(crate) fn validate_box(n: usize, q: u64) -> Result<i64> {
    check_box(n, q)
}

/// Input of the root-pair coordinate change: `xi x^n + ... = (x-alpha)(x-beta) g(x)`
/// with `g(x) = xi x^{n-2} + b_{n-3} x^{n-3} + ... + b_0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootPairMapInput {
    pub xi: f64,
    /// `b_0..b_{n-3}`; empty for `n = 2`.
    pub b: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl RootPairMapInput {
    pub fn degree(&self) -> usize {
        self.b.len() + 2
    }

    /// `g` evaluated at `x`.
    pub fn cofactor_at(&self, x: f64) -> f64 {
        self.b.iter().rev().fold(self.xi, |acc, &c| acc * x + c)
    }
}

/// Coefficients `a_0..a_{n-1}` of `(x - alpha)(x - beta) g(x)` below the leading `xi`.
pub fn root_pair_coeff_map(input: &RootPairMapInput) -> Vec<f64> {
    let n = input.degree();
    // g as full vector b_0..b_{n-3}, xi
    let mut g = input.b.clone();
    g.push(input.xi);
    let quad = [input.alpha * input.beta, -(input.alpha + input.beta), 1.0];
    let mut out = vec![0.0; n + 1];
    for (i, gc) in g.iter().enumerate() {
        for (j, qc) in quad.iter().enumerate() {
            out[i + j] += gc * qc;
        }
    }
    out.truncate(n);
    out
}

/// `(beta - alpha) g(alpha) g(beta)`, the Jacobian of [`root_pair_coeff_map`]
/// with respect to `(b_{n-3}, ..., b_0, alpha, beta)` and rows `a_{n-1}, ..., a_0`.
/// For `n = 2` this is `xi^2 (beta - alpha)`.
pub fn jacobian_reference(input: &RootPairMapInput) -> f64 {
    (input.beta - input.alpha) * input.cofactor_at(input.alpha) * input.cofactor_at(input.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(c: &[i64]) -> MonicIntPoly {
        MonicIntPoly::from_i64(c).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_monic(2, 1).unwrap().count(), 9);
        assert_eq!(enumerate_monic(3, 2).unwrap().count(), 125);
        let lin: Vec<_> = enumerate_monic(1, 3).unwrap().collect();
        assert_eq!(lin.len(), 7);
        assert_eq!(lin[0], p(&[-3]));
        assert_eq!(lin[6], p(&[3]));
        assert!(enumerate_monic(0, 3).is_err());
        assert!(enumerate_monic(2, 0).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        for n in 1..=3 {
            for q in 1..=3u64 {
                let all: Vec<_> = enumerate_monic(n, q).unwrap().collect();
                assert_eq!(all.len() as u128, box_size(n, q));
                let keys: Vec<Vec<i64>> = all
                    .iter()
                    .map(|p| p.coeffs().iter().rev().map(|c| c.to_i64().unwrap()).collect())
                    .collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
                let uniq: HashSet<_> = keys.iter().collect();
                assert_eq!(uniq.len(), all.len());
                assert!(all.iter().all(|p| p.height() <= BigInt::from(q)));
            }
        }
    }

    #[test]
    fn slices_partition_the_box() {
        let whole: Vec<_> = enumerate_monic(3, 2).unwrap().collect();
        let mut parts: Vec<_> = enumerate_monic_slice(3, 2, -2..=-1).unwrap().collect();
        parts.extend(enumerate_monic_slice(3, 2, 0..=0).unwrap());
        parts.extend(enumerate_monic_slice(3, 2, 1..=2).unwrap());
        assert_eq!(parts, whole);
        assert_eq!(enumerate_monic_slice(3, 2, 5..=9).unwrap().count(), 0);
    }

    #[test]
    fn heights() {
        assert_eq!(p(&[-2, 0]).height(), BigInt::from(2));
        assert_eq!(p(&[0, 0, 0]).height(), BigInt::from(1));
        assert_eq!(p(&[-5, 3]).height(), BigInt::from(5));
    }

    #[test]
    fn scaled_evaluation() {
        let x2m2 = p(&[-2, 0]);
        assert_eq!(x2m2.eval_scaled(&Rat::integer(1)), BigInt::from(-1));
        assert_eq!(x2m2.eval_scaled(&"3/2".parse().unwrap()), BigInt::from(1));
        assert_eq!(p(&[-1, 0]).eval_scaled(&Rat::integer(1)), BigInt::from(0));
    }

    #[test]
    fn mahler_bound_values() {
        assert!((p(&[-1, -1]).mahler_upper_bound() - 3f64.sqrt()).abs() < 1e-12);
        assert!((p(&[5, 0, 0]).mahler_upper_bound() - 10.0).abs() < 1e-12);
        assert!((p(&[-7]).mahler_upper_bound() - 7.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn root_pair_examples() {
        let a = root_pair_coeff_map(&RootPairMapInput { xi: 1.0, b: vec![], alpha: 1.0, beta: 2.0 });
        assert_eq!(a, vec![2.0, -3.0]);
        let a = root_pair_coeff_map(&RootPairMapInput { xi: 1.0, b: vec![1.0], alpha: 0.0, beta: 0.0 });
        assert_eq!(a, vec![0.0, 0.0, 1.0]);
        // double root: (x-1)^2 (x+3)
        let a = root_pair_coeff_map(&RootPairMapInput { xi: 1.0, b: vec![3.0], alpha: 1.0, beta: 1.0 });
        assert_eq!(a, vec![3.0, -5.0, 1.0]);
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian_reference(&RootPairMapInput { xi: 0.5, b: vec![], alpha: 1.0, beta: 3.0 });
        assert!((j - 0.5).abs() < 1e-15);
        let j = jacobian_reference(&RootPairMapInput { xi: 1.3, b: vec![0.2, -1.0], alpha: 0.7, beta: 0.7 });
        assert_eq!(j, 0.0);
        let j = jacobian_reference(&RootPairMapInput { xi: 1.0, b: vec![2.0], alpha: 1.0, beta: -1.0 });
        assert!((j + 6.0).abs() < 1e-15);
    }

    #[test]
    fn serde_array_form() {
        let q = p(&[-2, 0, 5]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[-2,0,5]");
        assert_eq!(serde_json::from_str::<MonicIntPoly>(&s).unwrap(), q);
        let huge: MonicIntPoly = serde_json::from_str(r#"["123456789012345678901234567890", 1]"#).unwrap();
        assert_eq!(huge.degree(), 2);
        assert!(serde_json::from_str::<MonicIntPoly>("[]").is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[-1, -1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[5, 0, -3]).to_string(), "x^3 - 3x^2 + 5");
    }
}
