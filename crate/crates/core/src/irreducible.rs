//! Irreducibility of monic integer polynomials over the rationals.
//!
//! A monic integer polynomial is reducible over Q iff it splits into two monic
//! integer factors (Gauss's lemma), so the test searches for a monic factor of
//! degree `d <= n/2`. Linear factors come from the rational-root test. Higher
//! degree candidates are pinned down by the divisibility conditions
//! `f(0) | p(0)`, `f(1) | p(1)`, `f(-1) | p(-1)` and confirmed by exact division.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Coeff};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::poly::{self, MonicIntPoly, SmallBox};

/// Evidence that `left * right` equals the tested polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub left: MonicIntPoly,
    pub right: MonicIntPoly,
}

impl FactorWitness {
    /// Full coefficient vector of `left * right`.
    pub fn product(&self) -> Vec<BigInt> {
        arith::mul(&self.left.full_coeffs(), &self.right.full_coeffs()).expect("bigint")
    }

    pub fn reproduces(&self, p: &MonicIntPoly) -> bool {
        self.product() == p.full_coeffs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(FactorWitness),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }

    pub fn witness(&self) -> Option<&FactorWitness> {
        match self {
            Irreducibility::Reducible(w) => Some(w),
            Irreducibility::Irreducible => None,
        }
    }
}

/// Decides irreducibility over Q, with a verified factorization when reducible.
/// Degree-1 polynomials count as irreducible.
pub fn check_irreducible(p: &MonicIntPoly) -> Irreducibility {
    let split = match p.to_i128_full().filter(|v| fits_fast_path(v)) {
        Some(full) => find_factor::<i128>(&full, None)
            .map(|o| o.map(|(l, r)| (arith::to_bigint_vec(&l), arith::to_bigint_vec(&r)))),
        None => None,
    };
    let split = match split {
        Some(s) => s,
        None => find_factor::<BigInt>(&p.full_coeffs(), None).expect("bigint arithmetic does not overflow"),
    };
    match split {
        None => Irreducibility::Irreducible,
        Some((l, r)) => {
            let w = FactorWitness {
                left: MonicIntPoly::from_full(l).expect("monic factor"),
                right: MonicIntPoly::from_full(r).expect("monic cofactor"),
            };
            debug_assert!(w.reproduces(p));
            Irreducibility::Reducible(w)
        }
    }
}

pub fn is_irreducible(p: &MonicIntPoly) -> bool {
    check_irreducible(p).is_irreducible()
}

fn fits_fast_path(full: &[i128]) -> bool {
    full.iter().all(|c| c.unsigned_abs() < 1 << 40)
}

/// Returns `Some(None)` if irreducible, `Some(Some((f, g)))` with
/// `deg f <= deg g` if reducible, and `None` on arithmetic overflow.
/// `a0_divisors` may supply the positive divisors of `|p(0)|`.
pub(crate) fn find_factor<T: Coeff>(
    full: &[T],
    a0_divisors: Option<&[T]>,
) -> Option<Option<(Vec<T>, Vec<T>)>> {
    let n = full.len() - 1;
    if n <= 1 {
        return Some(None);
    }
    let a0 = &full[0];
    if a0.is_zero() {
        let right = full[1..].to_vec();
        return Some(Some((vec![T::zero(), T::one()], right)));
    }
    let owned;
    let div0: &[T] = match a0_divisors {
        Some(d) => d,
        None => {
            owned = arith::divisors(a0);
            &owned
        }
    };

    // linear factors x - r with r | a0
    let height = full.iter().map(|c| c.abs()).max().expect("nonempty");
    for d in div0 {
        if *d > height.clone() + T::one() {
            break;
        }
        for r in [d.clone(), -d.clone()] {
            if arith::eval(full, &r)?.is_zero() {
                let left = vec![-r, T::one()];
                let right = arith::div_monic_exact(full, &left)?.expect("r is a root");
                return Some(Some((left, right)));
            }
        }
    }
    if n < 4 {
        return Some(None);
    }

    // no rational roots, so p(1), p(-1), p(2), p(-2) are all nonzero
    let p1 = arith::eval(full, &T::one())?;
    let pm1 = arith::eval(full, &-T::one())?;
    let two = arith::from_usize::<T>(2);
    let p2 = arith::eval(full, &two)?;
    let pm2 = arith::eval(full, &-two.clone())?;
    let bound = factor_coeff_bound(n, &height)?;

    let signed = |ds: Vec<T>| -> Vec<T> {
        ds.into_iter()
            .flat_map(|d| [d.clone(), -d])
            .collect()
    };
    let c0s: Vec<T> = signed(div0.to_vec())
        .into_iter()
        .filter(|c| c.abs() <= bound)
        .collect();
    let us = signed(arith::divisors(&p1));
    let vs = signed(arith::divisors(&pm1));

    let try_factor = |f: &[T]| -> Option<Option<Vec<T>>> {
        let f2 = arith::eval(f, &two)?;
        if f2.is_zero() || !p2.is_multiple_of(&f2) {
            return Some(None);
        }
        let fm2 = arith::eval(f, &-two.clone())?;
        if fm2.is_zero() || !pm2.is_multiple_of(&fm2) {
            return Some(None);
        }
        arith::div_monic_exact(full, f)
    };

    for d in 2..=n / 2 {
        if d == 2 {
            for c0 in &c0s {
                for u in &us {
                    let c1 = arith::csub(&arith::csub(u, &T::one())?, c0)?;
                    if c1.abs() > bound {
                        continue;
                    }
                    let v = arith::cadd(&arith::csub(&T::one(), &c1)?, c0)?;
                    if v.is_zero() || !pm1.is_multiple_of(&v) {
                        continue;
                    }
                    let f = vec![c0.clone(), c1, T::one()];
                    if let Some(q) = try_factor(&f)? {
                        return Some(Some((f, q)));
                    }
                }
            }
            continue;
        }
        // free coefficients c_3..c_{d-1}; c_1, c_2 solved from f(1) = u, f(-1) = v
        let free = d - 3;
        let b = bound.to_i64().unwrap_or(i64::MAX / 4);
        let mut odo = if free > 0 { Some(SmallBox::new(free, b, -b..=b)) } else { None };
        loop {
            let rest: Vec<T> = match &odo {
                Some(o) => match o.get() {
                    Some(vals) => vals.iter().map(|&x| T::from_i64(x).expect("fits")).collect(),
                    None => break,
                },
                None => Vec::new(),
            };
            for c0 in &c0s {
                // f(1) and f(-1) contributions of c0, the free block and the leading 1
                let mut k1 = arith::cadd(c0, &T::one())?;
                let mut km1 = if d % 2 == 0 {
                    arith::cadd(c0, &T::one())?
                } else {
                    arith::csub(c0, &T::one())?
                };
                for (j, c) in rest.iter().enumerate() {
                    k1 = arith::cadd(&k1, c)?;
                    km1 = if (j + 3) % 2 == 0 {
                        arith::cadd(&km1, c)?
                    } else {
                        arith::csub(&km1, c)?
                    };
                }
                for u in &us {
                    let s = arith::csub(u, &k1)?; // c1 + c2
                    for v in &vs {
                        let t = arith::csub(v, &km1)?; // c2 - c1
                        let sum = arith::cadd(&s, &t)?;
                        if sum.is_odd() {
                            continue;
                        }
                        let c2 = sum.div_floor(&two);
                        let c1 = arith::csub(&s, &c2)?;
                        if c1.abs() > bound || c2.abs() > bound {
                            continue;
                        }
                        let mut f = Vec::with_capacity(d + 1);
                        f.push(c0.clone());
                        f.push(c1);
                        f.push(c2);
                        f.extend(rest.iter().cloned());
                        f.push(T::one());
                        if let Some(q) = try_factor(&f)? {
                            return Some(Some((f, q)));
                        }
                    }
                }
            }
            match &mut odo {
                Some(o) => o.advance(),
                None => break,
            }
        }
    }
    Some(None)
}

/// `2^n * ceil((n+1)^(1/2) H)`: every coefficient of a monic integer factor of
/// `p` is at most `binom(d, i) M(p) <= 2^n (n+1)^(1/2) H(p)` in absolute value.
pub(crate) fn factor_coeff_bound<T: Coeff>(n: usize, height: &T) -> Option<T> {
    let h2 = arith::cmul(height, height)?;
    let m2 = arith::cmul(&h2, &arith::from_usize(n + 1))?;
    let mut root = m2.sqrt();
    if arith::cmul(&root, &root)? < m2 {
        root = root + T::one();
    }
    let pow = arith::from_usize::<T>(1usize.checked_shl(n as u32)?);
    arith::cmul(&root, &pow)
}

/// Exact count of reducible monic polynomials of degree `n` and height at most `Q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducibleCount {
    pub n: usize,
    pub q: u64,
    pub count: u64,
    /// `Q^(n-1)` for `n != 2`, `2 Q ln Q` for `n = 2`.
    pub normalizer: f64,
    /// `count / normalizer`; absent when the normalizer vanishes (`n = 2`, `Q = 1`).
    pub ratio: Option<f64>,
}

pub fn reducible_normalizer(n: usize, q: u64) -> f64 {
    let qf = q as f64;
    if n == 2 {
        2.0 * qf * qf.ln()
    } else {
        qf.powi(n as i32 - 1)
    }
}

/// Positive divisors of every `m` in `1..=max`, indexed by `m`.
pub(crate) struct DivisorTable {
    table: Vec<Vec<i128>>,
}

impl DivisorTable {
    pub(crate) fn new(max: u64) -> Self {
        let max = max as usize;
        let mut table = vec![Vec::new(); max + 1];
        for d in 1..=max {
            for m in (d..=max).step_by(d) {
                table[m].push(d as i128);
            }
        }
        DivisorTable { table }
    }

    pub(crate) fn get(&self, m: i128) -> Option<&[i128]> {
        self.table.get(m.unsigned_abs() as usize).map(|v| v.as_slice())
    }
}

/// Per-slice classification of the height box. `visit` receives each
/// polynomial's full coefficient vector (lowest first, trailing 1) together
/// with its irreducibility.
pub(crate) fn classify_slice<F>(n: usize, q: i64, top: i64, divs: &DivisorTable, mut visit: F)
where
    F: FnMut(&[i64], bool),
{
    let mut walker = SmallBox::new(n, q, top..=top);
    let mut full = vec![0i128; n + 1];
    full[n] = 1;
    while let Some(a) = walker.get() {
        for (dst, &src) in full.iter_mut().zip(a) {
            *dst = src as i128;
        }
        let irreducible = match find_factor::<i128>(&full, divs.get(full[0])) {
            Some(split) => split.is_none(),
            None => {
                let big = arith::to_bigint_vec(&full);
                find_factor::<BigInt>(&big, None).expect("bigint").is_none()
            }
        };
        visit(a, irreducible);
        walker.advance();
    }
}

/// Exhaustive count of reducible monic polynomials, refusing boxes larger than the budget.
pub fn count_reducible(n: usize, q: u64, exec: &Exec) -> Result<ReducibleCount> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let qi = poly::validate_box(n, q)?;
    exec.check_budget(poly::box_size(n, q))?;
    let count = if n == 1 {
        0
    } else {
        let divs = DivisorTable::new(q);
        exec.install(|| {
            (-qi..=qi)
                .into_par_iter()
                .map(|top| {
                    let mut c = 0u64;
                    classify_slice(n, qi, top, &divs, |_, irr| c += u64::from(!irr));
                    c
                })
                .sum()
        })
    };
    let normalizer = reducible_normalizer(n, q);
    let ratio = (normalizer > 0.0).then(|| count as f64 / normalizer);
    Ok(ReducibleCount { n, q, count, normalizer, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, ToPrimitive, Zero};

    fn p(c: &[i64]) -> MonicIntPoly {
        MonicIntPoly::from_i64(c).unwrap()
    }

    /// Integer-root oracle for degree 2 and 3: reducible iff some r | a_0 is a root.
    fn has_integer_root(c: &[i64]) -> bool {
        let a0 = c[0];
        if a0 == 0 {
            return true;
        }
        (1..=a0.abs()).filter(|d| a0 % d == 0).any(|d| {
            [d, -d].iter().any(|&r| {
                let mut acc: i128 = 1;
                for &ci in c.iter().rev() {
                    acc = acc * r as i128 + ci as i128;
                }
                acc == 0
            })
        })
    }

    #[test]
    fn small_examples() {
        assert!(is_irreducible(&p(&[-2, 0])));
        let w = check_irreducible(&p(&[-1, 0]));
        let w = w.witness().expect("x^2 - 1 splits");
        assert!(w.reproduces(&p(&[-1, 0])));
        assert!(is_irreducible(&p(&[1, 1, 0])));
        assert!(is_irreducible(&p(&[5])));
    }

    #[test]
    fn quartic_products_are_found() {
        // (x^2 + x + 1)(x^2 - 3x + 5), no rational roots
        let full = arith::mul(&[1i64, 1, 1], &[5, -3, 1]).unwrap();
        let q = p(&full[..4]);
        let w = check_irreducible(&q);
        assert!(w.witness().unwrap().reproduces(&q));
        // x^4 + 1 and x^4 - 2 are irreducible; x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(is_irreducible(&p(&[1, 0, 0, 0])));
        assert!(is_irreducible(&p(&[-2, 0, 0, 0])));
        assert!(!is_irreducible(&p(&[4, 0, 0, 0])));
    }

    #[test]
    fn sextic_with_cubic_factors() {
        // (x^3 + x + 1)(x^3 - x^2 + 3)
        let full = arith::mul(&[1i64, 1, 0, 1], &[3, 0, -1, 1]).unwrap();
        let q = p(&full[..6]);
        let w = check_irreducible(&q);
        let w = w.witness().expect("reducible");
        assert_eq!(w.left.degree(), 3);
        assert!(w.reproduces(&q));
        // x^6 + x + 1 is irreducible
        assert!(is_irreducible(&p(&[1, 1, 0, 0, 0, 0])));
    }

    #[test]
    fn octic_with_quartic_factors() {
        // (x^4 + x + 1)(x^4 - x^3 + 2): exercises the free-coefficient walk
        let full = arith::mul(&[1i64, 1, 0, 0, 1], &[2, 0, 0, -1, 1]).unwrap();
        let q = p(&full[..8]);
        let w = check_irreducible(&q);
        assert!(w.witness().expect("reducible").reproduces(&q));
    }

    #[test]
    fn agrees_with_integer_root_oracle() {
        for n in 2..=3 {
            for a in poly::enumerate_monic(n, if n == 2 { 10 } else { 6 }).unwrap() {
                let c: Vec<i64> = a.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
                let verdict = check_irreducible(&a);
                assert_eq!(!verdict.is_irreducible(), has_integer_root(&c), "{a}");
                if let Some(w) = verdict.witness() {
                    assert!(w.reproduces(&a));
                    assert!(w.left.degree() <= w.right.degree());
                }
            }
        }
    }

    #[test]
    fn big_coefficients_fall_back() {
        // x^2 - 2^90 * 9, past the machine-word fast path
        let big: BigInt = BigInt::from(3u64 << 45);
        let q = MonicIntPoly::new(vec![-(big.clone() * big.clone()), BigInt::zero()]).unwrap();
        let w = check_irreducible(&q);
        assert!(w.witness().expect("x^2 - b^2").reproduces(&q));
    }

    #[test]
    fn reducible_quadratics() {
        let exec = Exec::default();
        let r = count_reducible(2, 1, &exec).unwrap();
        assert_eq!(r.count, 4);
        assert!(r.ratio.is_none());
        assert_eq!(count_reducible(1, 7, &exec).unwrap().count, 0);
        assert!(count_reducible(0, 7, &exec).is_err());
    }

    #[test]
    fn reducible_count_matches_pair_oracle() {
        // x^2 + bx + c = (x - r)(x - s): count distinct (b, c) in the box
        let exec = Exec::default();
        for q in [1i64, 2, 5, 17, 40] {
            let mut seen = std::collections::HashSet::new();
            for r in -q - 1..=q + 1 {
                for s in r..=q + 1 {
                    let (b, c) = (-(r + s), r * s);
                    if b.abs() <= q && c.abs() <= q {
                        seen.insert((b, c));
                    }
                }
            }
            assert_eq!(count_reducible(2, q as u64, &exec).unwrap().count, seen.len() as u64);
        }
    }

    #[test]
    fn budget_guard() {
        let exec = Exec::default().with_budget(100);
        assert!(matches!(count_reducible(3, 3, &exec), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn factor_bound_covers_known_factors() {
        // every monic factor found for degree-4 products respects the bound
        for q in poly::enumerate_monic(4, 2).unwrap() {
            if let Irreducibility::Reducible(w) = check_irreducible(&q) {
                let bound = factor_coeff_bound(4, &q.height()).unwrap();
                for c in w.left.coeffs().iter().chain(w.right.coeffs()) {
                    assert!(c.abs() <= bound);
                }
            }
        }
    }
}
