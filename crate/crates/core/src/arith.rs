//! Dense integer polynomial arithmetic, generic over the coefficient ring.
//!
//! Every routine is written against [`Coeff`] with checked operations and
//! returns `None` on overflow. With `BigInt` coefficients the checks never
//! fail; with `i128` they let hot loops run allocation-free and fall back to
//! `BigInt` only when a value outgrows the machine word.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the zero polynomial is the empty vector).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub trait Coeff:
    Clone
    + Debug
    + Integer
    + Signed
    + Roots
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Integer
        + Signed
        + Roots
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub(crate) fn cadd<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_add(b)
}

#[inline]
pub(crate) fn csub<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_sub(b)
}

#[inline]
pub(crate) fn cmul<T: Coeff>(a: &T, b: &T) -> Option<T> {
    a.checked_mul(b)
}

pub(crate) fn from_usize<T: Coeff>(k: usize) -> T {
    T::from_usize(k).expect("small constant fits every coefficient type")
}

pub(crate) fn trim<T: Coeff>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub(crate) fn degree<T: Coeff>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn lead<T: Coeff>(p: &[T]) -> &T {
    p.last().expect("nonzero polynomial")
}

pub(crate) fn derivative<T: Coeff>(p: &[T]) -> Option<Vec<T>> {
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    for (k, c) in p.iter().enumerate().skip(1) {
        out.push(cmul(c, &from_usize(k))?);
    }
    trim(&mut out);
    Some(out)
}

/// Nonnegative gcd of all coefficients.
pub(crate) fn content<T: Coeff>(p: &[T]) -> T {
    let mut g = T::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content, keeping the sign of the leading coefficient.
pub(crate) fn primitive<T: Coeff>(mut p: Vec<T>) -> Vec<T> {
    let g = content(&p);
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c = c.div_floor(&g);
        }
    }
    p
}

pub(crate) fn neg<T: Coeff>(p: &mut [T]) {
    for c in p.iter_mut() {
        *c = -c.clone();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem<T: Coeff>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: Vec<T> = a.to_vec();
    let lb = lead(b).clone();
    let Some(da) = degree(a) else {
        return Some(r);
    };
    if da < db {
        return Some(r);
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = lead(&r).clone();
        // r <- lb * r - lr * x^(dr-db) * b
        for c in r.iter_mut() {
            *c = cmul(c, &lb)?;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = cmul(&lr, bc)?;
            r[i + shift] = csub(&r[i + shift], &t)?;
        }
        debug_assert!(r[dr].is_zero());
        r.truncate(dr);
        trim(&mut r);
        steps -= 1;
    }
    for _ in 0..steps {
        for c in r.iter_mut() {
            *c = cmul(c, &lb)?;
        }
    }
    Some(r)
}

/// Quotient and remainder of `a` divided by a monic polynomial `b`.
pub(crate) fn div_rem_monic<T: Coeff>(a: &[T], b: &[T]) -> Option<(Vec<T>, Vec<T>)> {
    debug_assert!(lead(b).is_one());
    let db = degree(b).expect("division by the zero polynomial");
    let Some(da) = degree(a).filter(|&da| da >= db) else {
        return Some((Vec::new(), a.to_vec()));
    };
    let mut r = a.to_vec();
    let mut q = vec![T::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let coef = r[k + db].clone();
        if coef.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = cmul(&coef, bc)?;
            r[i + k] = csub(&r[i + k], &t)?;
        }
        q[k] = coef;
    }
    trim(&mut r);
    Some((q, r))
}

/// Exact quotient by a monic divisor. Outer `None` means overflow, inner
/// `None` a nonzero remainder.
pub(crate) fn div_monic_exact<T: Coeff>(a: &[T], b: &[T]) -> Option<Option<Vec<T>>> {
    let (q, r) = div_rem_monic(a, b)?;
    Some(r.is_empty().then_some(q))
}

pub(crate) fn mul<T: Coeff>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = cadd(&out[i + j], &cmul(x, y)?)?;
        }
    }
    trim(&mut out);
    Some(out)
}

/// Horner evaluation at an integer point.
pub(crate) fn eval<T: Coeff>(p: &[T], x: &T) -> Option<T> {
    let mut acc = T::zero();
    for c in p.iter().rev() {
        acc = cadd(&cmul(&acc, x)?, c)?;
    }
    Some(acc)
}

/// `den^deg(p) * p(num/den)`, an integer with the sign of `p(num/den)` when `den > 0`.
pub(crate) fn eval_homogeneous<T: Coeff>(p: &[T], num: &T, den: &T) -> Option<T> {
    let mut acc = T::zero();
    let mut den_pow = T::one();
    // acc holds sum_{i>=k} c_i num^(i-k) den^(deg-i) after visiting c_k
    for (i, c) in p.iter().rev().enumerate() {
        if i > 0 {
            den_pow = cmul(&den_pow, den)?;
        }
        acc = cadd(&cmul(&acc, num)?, &cmul(c, &den_pow)?)?;
    }
    Some(acc)
}

/// Primitive gcd with positive leading coefficient.
pub(crate) fn gcd_primitive<T: Coeff>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(prem(&x, &y)?);
        x = y;
        y = r;
    }
    if !x.is_empty() && lead(&x).is_negative() {
        neg(&mut x);
    }
    Some(x)
}

/// All positive divisors of `|m|`, ascending. `m` must be nonzero.
pub(crate) fn divisors<T: Coeff>(m: &T) -> Vec<T> {
    let mut rest = m.abs();
    debug_assert!(!rest.is_zero());
    let mut divs = vec![T::one()];
    let mut p = from_usize::<T>(2);
    loop {
        if p.clone() * p.clone() > rest {
            break;
        }
        if rest.is_multiple_of(&p) {
            let base = divs.len();
            let mut pk = T::one();
            while rest.is_multiple_of(&p) {
                rest = rest.div_floor(&p);
                pk = pk * p.clone();
                for i in 0..base {
                    divs.push(divs[i].clone() * pk.clone());
                }
            }
        }
        p = p + T::one();
    }
    if !rest.is_one() {
        let base = divs.len();
        for i in 0..base {
            divs.push(divs[i].clone() * rest.clone());
        }
    }
    divs.sort();
    divs
}

pub(crate) fn to_i128_vec(p: &[BigInt]) -> Option<Vec<i128>> {
    p.iter().map(|c| c.to_i128()).collect()
}

pub(crate) fn to_bigint_vec(p: &[i128]) -> Vec<BigInt> {
    p.iter().map(|&c| BigInt::from(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prem_matches_hand_computation() {
        // (x^2 + 1) prem (2x + 1): 4x^2 + 4 = (2x+1)(2x - 1) + 5
        let r = prem(&[1i128, 0, 1], &[1, 2]).unwrap();
        assert_eq!(r, vec![5]);
    }

    #[test]
    fn exact_division() {
        let p = [-1i128, 0, 1];
        assert_eq!(div_monic_exact(&p, &[1, 1]), Some(Some(vec![-1, 1])));
        assert_eq!(div_monic_exact(&p, &[2, 1]), Some(None));
        assert_eq!(div_rem_monic(&p, &[2, 1]), Some((vec![-2, 1], vec![3])));
    }

    #[test]
    fn homogeneous_eval_sign() {
        // x^2 - 2 at 3/2 scaled by 4 is 1
        assert_eq!(eval_homogeneous(&[-2i128, 0, 1], &3, &2), Some(1));
        assert_eq!(eval_homogeneous(&[-2i128, 0, 1], &1, &1), Some(-1));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        assert_eq!(mul(&[big, 1], &[big, 1]), None);
        let b: Vec<BigInt> = to_bigint_vec(&[big, 1]);
        assert!(mul(&b, &b).is_some());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)^2 (x+2) and its derivative share x - 1
        let p = mul(&mul(&[-1i128, 1], &[-1, 1]).unwrap(), &[2, 1]).unwrap();
        let dp = derivative(&p).unwrap();
        assert_eq!(gcd_primitive(&p, &dp).unwrap(), vec![-1, 1]);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&12i128), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&-9i128), vec![1, 3, 9]);
        assert_eq!(divisors(&BigInt::from(1)), vec![BigInt::from(1)]);
        assert_eq!(divisors(&(1i128 << 80)).len(), 81);
        assert_eq!(divisors(&(2 * 3 * 5 * 7i128)).len(), 16);
    }
}
