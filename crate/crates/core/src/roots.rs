//! Exact real-root counting and isolation with Sturm chains, and Perron
//! classification of real roots.
//!
//! Sign variations are evaluated with zeros dropped. For a squarefree `p` the
//! difference `V(a) - V(b)` then counts the distinct roots in `(a, b]` for any
//! `a < b`, roots at the endpoints included, which is what lets half-open
//! counts be assembled from variation values at bin boundaries.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, Coeff};
use crate::poly::{IntPoly, MonicIntPoly};
use crate::rational::{Rat, RatInterval};

/// Sturm chain over a generic coefficient ring. `None` from any method means
/// the ring overflowed.
#[derive(Clone, Debug)]
pub(crate) struct Chain<T> {
    polys: Vec<Vec<T>>,
}

impl<T: Coeff> Chain<T> {
    /// Chain of a squarefree polynomial of degree at least 1.
    pub(crate) fn build(p: &[T]) -> Option<Self> {
        debug_assert!(arith::degree(p).is_some_and(|d| d >= 1));
        let mut polys = vec![p.to_vec(), arith::primitive(arith::derivative(p)?)];
        loop {
            let (a, b) = (&polys[polys.len() - 2], &polys[polys.len() - 1]);
            if arith::degree(b) == Some(0) {
                break;
            }
            let delta = arith::degree(a)? - arith::degree(b)?;
            let mut r = arith::prem(a, b)?;
            if r.is_empty() {
                // not squarefree; the last element is the gcd
                break;
            }
            // -rem = -prem / lc(b)^(delta+1), up to a positive factor
            let flip = !(arith::lead(b).is_negative() && delta % 2 == 0);
            if flip {
                arith::neg(&mut r);
            }
            polys.push(arith::primitive(r));
        }
        Some(Chain { polys })
    }

    /// Sign variations at `num/den` (`den > 0`), zeros dropped.
    pub(crate) fn variations(&self, num: &T, den: &T) -> Option<usize> {
        let mut count = 0;
        let mut last = 0i8;
        for s in &self.polys {
            let v = arith::eval_homogeneous(s, num, den)?;
            let sign = sign_of(&v);
            if sign != 0 {
                if last != 0 && sign != last {
                    count += 1;
                }
                last = sign;
            }
        }
        Some(count)
    }

    /// Sign variations at `+inf` or `-inf`.
    pub(crate) fn variations_at_infinity(&self, positive: bool) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in &self.polys {
            let mut sign = sign_of(arith::lead(s));
            if !positive && arith::degree(s).unwrap_or(0) % 2 == 1 {
                sign = -sign;
            }
            if last != 0 && sign != last {
                count += 1;
            }
            last = sign;
        }
        count
    }

    /// Whether `num/den` is a root of the first chain element.
    pub(crate) fn is_root(&self, num: &T, den: &T) -> Option<bool> {
        Some(arith::eval_homogeneous(&self.polys[0], num, den)?.is_zero())
    }

    /// Variations and root flag at a point, the data a half-open count needs.
    pub(crate) fn probe(&self, num: &T, den: &T) -> Option<(usize, bool)> {
        Some((self.variations(num, den)?, self.is_root(num, den)?))
    }
}

/// Distinct roots in `[lo, hi)` from probes at both endpoints.
pub(crate) fn half_open_count(lo: (usize, bool), hi: (usize, bool)) -> usize {
    lo.0 + usize::from(lo.1) - hi.0 - usize::from(hi.1)
}

fn sign_of<T: Coeff>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient. Same distinct roots as `p`.
pub fn squarefree_part(p: &MonicIntPoly) -> IntPoly {
    IntPoly::new(squarefree_full(&p.full_coeffs()))
}

fn squarefree_full(full: &[BigInt]) -> Vec<BigInt> {
    let d = arith::derivative(full).expect("bigint");
    if d.is_empty() {
        return full.to_vec();
    }
    let g = arith::gcd_primitive(full, &d).expect("bigint");
    if arith::degree(&g) == Some(0) {
        return full.to_vec();
    }
    // g divides a monic polynomial, so it is monic itself
    arith::div_monic_exact(full, &g)
        .expect("bigint")
        .expect("gcd divides p")
}

/// Exact Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    inner: Chain<BigInt>,
}

impl SturmChain {
    pub fn new(p: &MonicIntPoly) -> Self {
        let sq = squarefree_full(&p.full_coeffs());
        SturmChain {
            inner: Chain::build(&sq).expect("bigint"),
        }
    }

    pub fn polys(&self) -> Vec<IntPoly> {
        self.inner.polys.iter().map(|s| IntPoly::new(s.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.inner.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.polys.is_empty()
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        self.inner.variations(x.num(), x.den()).expect("bigint")
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        self.inner.variations_at_infinity(positive)
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_open_closed(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a < b, "empty interval");
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct roots in `[lo, hi)`.
    pub fn count_half_open(&self, iv: &RatInterval) -> usize {
        half_open_count(self.probe(iv.lo()), self.probe(iv.hi()))
    }

    /// Total number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    fn probe(&self, x: &Rat) -> (usize, bool) {
        self.inner.probe(x.num(), x.den()).expect("bigint")
    }
}

/// Number of distinct real roots of `p` in the half-open interval `[lo, hi)`.
pub fn count_roots_in(p: &MonicIntPoly, iv: &RatInterval) -> usize {
    if let Some(c) = count_roots_fast(p, iv) {
        return c;
    }
    SturmChain::new(p).count_half_open(iv)
}

fn count_roots_fast(p: &MonicIntPoly, iv: &RatInterval) -> Option<usize> {
    let full = p.to_i128_full()?;
    let d = arith::derivative(&full)?;
    let sq = if d.is_empty() {
        full
    } else {
        let g = arith::gcd_primitive(&full, &d)?;
        if arith::degree(&g) == Some(0) {
            full
        } else {
            arith::div_monic_exact(&full, &g)??
        }
    };
    let chain = Chain::build(&sq)?;
    let end = |x: &Rat| -> Option<(usize, bool)> {
        chain.probe(&x.num().to_i128()?, &x.den().to_i128()?)
    };
    Some(half_open_count(end(iv.lo())?, end(iv.hi())?))
}

/// Isolating interval of a single real root of `poly`.
///
/// Serializes as `{"lo": "num/den", "hi": "num/den"}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub interval: RatInterval,
    /// Squarefree polynomial the root belongs to.
    pub poly: MonicIntPoly,
}

impl Serialize for RootBox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.interval.serialize(s)
    }
}

impl RootBox {
    pub fn lo(&self) -> &Rat {
        self.interval.lo()
    }

    pub fn hi(&self) -> &Rat {
        self.interval.hi()
    }

    pub fn midpoint(&self) -> f64 {
        Rat::midpoint(self.lo(), self.hi()).to_f64()
    }

    /// Bisects until the width is at most `eps`, keeping exactly one root inside.
    pub fn refine(&mut self, eps: &Rat) {
        let mut lo = self.lo().clone();
        let mut hi = self.hi().clone();
        let s_lo = self.poly.eval_scaled(&lo).signum();
        if s_lo.is_zero() {
            // the root is the left endpoint itself
            if hi.sub(&lo) > *eps {
                hi = lo.add(eps);
            }
            self.interval = RatInterval::new(lo, hi).expect("nonempty");
            return;
        }
        while hi.sub(&lo) > *eps {
            let mid = Rat::midpoint(&lo, &hi);
            let s = self.poly.eval_scaled(&mid).signum();
            if s.is_zero() {
                let cap = mid.add(eps);
                lo = mid;
                hi = std::cmp::min(hi, cap);
                break;
            } else if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.interval = RatInterval::new(lo, hi).expect("nonempty");
    }
}

/// One box of width at most `eps` per distinct real root, in increasing order.
/// Bisection starts from `[-1-H(p), 1+H(p)]`.
pub fn isolate_roots(p: &MonicIntPoly, eps: &Rat) -> Vec<RootBox> {
    assert!(eps.as_ratio().is_positive(), "eps must be positive");
    let sq = MonicIntPoly::from_full(squarefree_full(&p.full_coeffs())).expect("monic");
    let chain = SturmChain::new(&sq);
    let b = Rat::integer(p.height() + BigInt::one());
    let lo = b.neg();
    let mut out = Vec::new();
    let total = chain.variations_at(&lo) - chain.variations_at(&b);
    isolate_rec(&chain, &sq, lo, b, total, eps, &mut out);
    out
}

fn isolate_rec(
    chain: &SturmChain,
    sq: &MonicIntPoly,
    a: Rat,
    b: Rat,
    count: usize,
    eps: &Rat,
    out: &mut Vec<RootBox>,
) {
    // `count` is the number of roots in (a, b]; neither endpoint is a root
    match count {
        0 => {}
        1 => {
            let mut rb = RootBox {
                interval: RatInterval::new(a, b).expect("nonempty"),
                poly: sq.clone(),
            };
            rb.refine(eps);
            out.push(rb);
        }
        _ => {
            let m = non_root_split(sq, &a, &b);
            let left = chain.count_open_closed(&a, &m);
            isolate_rec(chain, sq, a, m.clone(), left, eps, out);
            isolate_rec(chain, sq, m, b, count - left, eps, out);
        }
    }
}

/// A point strictly inside `(a, b)`, near the middle, that is not a root.
fn non_root_split(p: &MonicIntPoly, a: &Rat, b: &Rat) -> Rat {
    let w = b.sub(a);
    for k in 1.. {
        // 1/2 first, then k/(2k+1) and (k+1)/(2k+1)
        for frac in [Rat::new(k, 2 * k).unwrap(), Rat::new(k, 2 * k + 1).unwrap(), Rat::new(k + 1, 2 * k + 1).unwrap()] {
            let m = a.add(&w.mul(&frac));
            if !p.eval_scaled(&m).is_zero() {
                return m;
            }
        }
    }
    unreachable!()
}

/// Box of width at most `eps` around the largest real root, if there is one.
pub fn largest_root_box(p: &MonicIntPoly, eps: &Rat) -> Option<RootBox> {
    let sq = MonicIntPoly::from_full(squarefree_full(&p.full_coeffs())).expect("monic");
    let chain = SturmChain::new(&sq);
    let mut b = Rat::integer(p.height() + BigInt::one());
    let mut a = b.neg();
    let mut count = chain.variations_at(&a) - chain.variations_at(&b);
    if count == 0 {
        return None;
    }
    // invariant: (a, b] holds `count` roots including the largest, neither endpoint a root
    while count > 1 {
        let m = non_root_split(&sq, &a, &b);
        let right = chain.count_open_closed(&m, &b);
        if right >= 1 {
            a = m;
            count = right;
        } else {
            b = m;
            count = chain.count_open_closed(&a, &b);
        }
    }
    let mut rb = RootBox {
        interval: RatInterval::new(a, b).expect("nonempty"),
        poly: sq,
    };
    rb.refine(eps);
    Some(rb)
}

impl RootBox {
    /// Exact comparison of the isolated root with a rational `x`.
    pub fn cmp_root(&self, x: &Rat) -> Ordering {
        if x < self.lo() {
            return Ordering::Greater;
        }
        if x >= self.hi() {
            return Ordering::Less;
        }
        let s_lo = self.poly.eval_scaled(self.lo()).signum();
        if s_lo.is_zero() {
            return self.lo().cmp(x);
        }
        let s_x = self.poly.eval_scaled(x).signum();
        if s_x.is_zero() {
            Ordering::Equal
        } else if s_x == s_lo {
            // no sign change in [lo, x]
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// Outcome of comparing a real root against its conjugates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerronVerdict {
    pub is_perron: bool,
    /// The exact sufficient criterion `alpha > (n+1)^(1/4) H^(1/2)` holds.
    pub certified_by_bound: bool,
    /// `|alpha|` minus the largest conjugate modulus, from companion-matrix eigenvalues.
    pub margin: f64,
    /// Numerical margin below tolerance with no exact argument either way.
    pub indeterminate: bool,
}

impl PerronVerdict {
    /// The bound certifies a Perron number while the numerical check disagrees.
    pub fn contradiction(&self) -> bool {
        self.certified_by_bound && self.margin <= 0.0
    }
}

pub const PERRON_TOLERANCE: f64 = 1e-9;

/// Classifies the root of `p` isolated by `alpha_box` (`p` irreducible).
pub fn classify_perron(p: &MonicIntPoly, alpha_box: &RootBox) -> PerronVerdict {
    classify_perron_with_bound(p, alpha_box).0
}

/// [`classify_perron`] together with the certified lower bound used for alpha.
pub(crate) fn classify_perron_with_bound(p: &MonicIntPoly, alpha_box: &RootBox) -> (PerronVerdict, Rat) {
    let n = p.degree();
    let eig = companion_eigenvalues(p);
    let mid = alpha_box.midpoint();
    let (j, _) = eig
        .iter()
        .enumerate()
        .map(|(i, z)| (i, (z.0 - mid).hypot(z.1)))
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal))
        .expect("degree >= 1");
    let alpha = eig[j].0;
    let others = eig
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, z)| z.0.hypot(z.1))
        .fold(0.0f64, f64::max);
    let margin = alpha.abs() - others;

    let alpha_lo = sharpen_lower_bound(alpha_box, alpha);
    let certified = alpha_lo.as_ratio().is_positive() && {
        let l = alpha_lo.as_ratio();
        let l4 = l * l * l * l;
        let h = p.height();
        let rhs = BigRational::from_integer(BigInt::from(n + 1) * &h * &h);
        l4 > rhs
    };

    let positive = root_is_positive(alpha_box);
    let (is_perron, indeterminate) = if !positive {
        (false, false)
    } else if n >= 2 && rotation_order(p) > 1 {
        // p(x) = g(x^k): alpha * e^(2 pi i / k) is a conjugate of equal modulus
        (false, false)
    } else if certified {
        (true, false)
    } else if margin.abs() < PERRON_TOLERANCE {
        (false, true)
    } else {
        (margin > 0.0, false)
    };
    let verdict = PerronVerdict {
        is_perron,
        certified_by_bound: certified,
        margin,
        indeterminate,
    };
    (verdict, alpha_lo)
}

fn root_is_positive(rb: &RootBox) -> bool {
    if !rb.hi().as_ratio().is_positive() {
        return false;
    }
    if !rb.lo().as_ratio().is_negative() {
        return !rb.poly.eval_scaled(rb.lo()).is_zero() || rb.lo().as_ratio().is_positive();
    }
    let s0 = rb.poly.eval_scaled(&Rat::zero()).signum();
    !s0.is_zero() && s0 == rb.poly.eval_scaled(rb.lo()).signum()
}

/// Largest `k` such that `p(x) = g(x^k)`.
fn rotation_order(p: &MonicIntPoly) -> usize {
    let full = p.full_coeffs();
    let n = p.degree();
    let mut g = n;
    for (i, c) in full.iter().enumerate() {
        if !c.is_zero() {
            g = gcd_usize(g, i);
        }
    }
    g
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// A certified lower bound for the root in `rb`: the numerical estimate pulled
/// down slightly, accepted only if an exact sign test confirms it.
fn sharpen_lower_bound(rb: &RootBox, estimate: f64) -> Rat {
    let lo = rb.lo();
    let s_lo = rb.poly.eval_scaled(lo).signum();
    if s_lo.is_zero() || !estimate.is_finite() {
        return lo.clone();
    }
    let guess = estimate - 1e-12 * estimate.abs().max(1.0);
    let Some(g) = BigRational::from_float(guess).map(Rat::from_ratio) else {
        return lo.clone();
    };
    if &g > lo && &g < rb.hi() && rb.poly.eval_scaled(&g).signum() == s_lo {
        g
    } else {
        lo.clone()
    }
}

/// All complex roots of `p` as `(re, im)`, from the companion matrix.
pub fn companion_eigenvalues(p: &MonicIntPoly) -> Vec<(f64, f64)> {
    let n = p.degree();
    let a: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if n == 1 {
        return vec![(-a[0], 0.0)];
    }
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -a[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}
