//! Exact census of real algebraic integers of degree `n` and height at most `Q`.
//!
//! Every monic polynomial of the height box is visited once. Reducible ones
//! are discarded; an irreducible monic polynomial is the minimal polynomial of
//! each of its roots, so every algebraic integer is counted exactly once by
//! adding the distinct real roots of its minimal polynomial to the bins.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{self, DensityParams};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::irreducible::{self, DivisorTable};
use crate::poly::{self, MonicIntPoly};
use crate::rational::{Rat, RatInterval};
use crate::roots::{self, half_open_count, Chain, RootBox};

/// What to compute beyond the exact counts.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusOptions {
    pub density: DensityParams,
    /// Fill `predicted` and `normalized_error` per bin.
    pub predict: bool,
    /// Classify the largest real root of every irreducible polynomial.
    pub perron: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            density: DensityParams::default(),
            predict: true,
            perron: true,
        }
    }
}

impl CensusOptions {
    pub fn counts_only() -> Self {
        CensusOptions {
            predict: false,
            perron: false,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusBin {
    pub lo: Rat,
    pub hi: Rat,
    pub count: u64,
    pub predicted: Option<f64>,
    pub normalized_error: Option<f64>,
}

impl CensusBin {
    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone()).expect("bins are nonempty")
    }
}

/// Perron classification totals over the roots counted in the binned range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerronTotals {
    pub perron_count: u64,
    pub certified_count: u64,
    pub indeterminate_perron: u64,
    /// Certified by the bound but not confirmed by the conjugate moduli.
    pub contradictions: u64,
    /// Roots provably above `(n+1)^(1/4) Q^(1/2)`.
    pub above_threshold: u64,
    /// Roots above that threshold that were not certified.
    pub above_threshold_uncertified: u64,
    /// Perron roots in the plateau zone `(Q^(1/2), Q]`.
    pub perron_in_plateau: u64,
}

impl PerronTotals {
    fn merge(&mut self, o: &PerronTotals) {
        self.perron_count += o.perron_count;
        self.certified_count += o.certified_count;
        self.indeterminate_perron += o.indeterminate_perron;
        self.contradictions += o.contradictions;
        self.above_threshold += o.above_threshold;
        self.above_threshold_uncertified += o.above_threshold_uncertified;
        self.perron_in_plateau += o.perron_in_plateau;
    }
}

/// Wall-clock data; not serialized, so reports stay byte-identical across runs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RuntimeStats {
    pub elapsed: Duration,
    pub polynomials_per_second: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub q: u64,
    pub range: RatInterval,
    pub bins: Vec<CensusBin>,
    /// Omega over the binned range, the sum of the bin counts.
    pub total: u64,
    /// Omega over the whole real line.
    pub omega_real: u64,
    pub polynomials: u64,
    pub reducible_discarded: u64,
    pub irreducible_count: u64,
    /// Real roots with `|x| >= Q + 1`; always zero.
    pub roots_outside_bound: u64,
    /// Present when Perron classification ran.
    pub perron: Option<PerronTotals>,
    #[serde(skip)]
    pub stats: RuntimeStats,
}

/// `Q^(n-1) (ln Q)^l(n)` with `l(n) = 1` for `n <= 2` and `0` otherwise.
pub fn error_normalizer(n: usize, q: u64) -> f64 {
    let qf = q as f64;
    let base = qf.powi(n as i32 - 1);
    if n <= 2 {
        base * qf.ln()
    } else {
        base
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    counts: Vec<u64>,
    omega_real: u64,
    reducible: u64,
    irreducible: u64,
    outside: u64,
    perron: PerronTotals,
}

impl Tally {
    fn new(bins: usize) -> Self {
        Tally {
            counts: vec![0; bins],
            ..Default::default()
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(&o.counts) {
            *a += b;
        }
        self.omega_real += o.omega_real;
        self.reducible += o.reducible;
        self.irreducible += o.irreducible;
        self.outside += o.outside;
        self.perron.merge(&o.perron);
        self
    }
}

/// Per-probe `(variations, is_root)`, then the variations at `-inf` and `+inf`.
type ProbeSigns = (Vec<(usize, bool)>, usize, usize);

/// Probe points shared by every polynomial: the bin edges, `0`, and `±(Q+1)`.
struct Probes {
    /// Bin edges, then `0`, `-(Q+1)`, `Q+1`.
    points: Vec<Rat>,
    small: Option<Vec<(i128, i128)>>,
    bins: usize,
}

impl Probes {
    fn new(edges: Vec<Rat>, q: u64) -> Self {
        let bins = edges.len() - 1;
        let b = Rat::integer(BigInt::from(q) + 1);
        let mut points = edges;
        points.push(Rat::zero());
        points.push(b.neg());
        points.push(b);
        let small = points
            .iter()
            .map(|x| Some((x.num().to_i128()?, x.den().to_i128()?)))
            .collect();
        Probes { points, small, bins }
    }

    fn evaluate(&self, full: &[i128]) -> ProbeSigns {
        if let Some(r) = self.evaluate_small(full) {
            return r;
        }
        let big: Vec<BigInt> = full.iter().map(|&c| BigInt::from(c)).collect();
        let chain = Chain::build(&big).expect("bigint");
        let probes = self
            .points
            .iter()
            .map(|x| chain.probe(x.num(), x.den()).expect("bigint"))
            .collect();
        (probes, chain.variations_at_infinity(false), chain.variations_at_infinity(true))
    }

    fn evaluate_small(&self, full: &[i128]) -> Option<ProbeSigns> {
        let pts = self.small.as_ref()?;
        let chain = Chain::build(full)?;
        let mut probes = Vec::with_capacity(pts.len());
        for (num, den) in pts {
            probes.push(chain.probe(num, den)?);
        }
        Some((probes, chain.variations_at_infinity(false), chain.variations_at_infinity(true)))
    }
}

struct Job<'a> {
    n: usize,
    q: u64,
    probes: &'a Probes,
    perron: bool,
    eps: Rat,
}

impl Job<'_> {
    fn visit(&self, a: &[i64], irreducible: bool, t: &mut Tally) {
        if !irreducible {
            t.reducible += 1;
            return;
        }
        t.irreducible += 1;
        let full: Vec<i128> = a.iter().map(|&c| c as i128).chain(std::iter::once(1)).collect();
        let (pr, v_neg, v_pos) = self.probes.evaluate(&full);
        let bins = self.probes.bins;
        let real = v_neg - v_pos;
        t.omega_real += real as u64;
        let mut in_range = 0;
        for k in 0..bins {
            let c = half_open_count(pr[k], pr[k + 1]);
            t.counts[k] += c as u64;
            in_range += c;
        }
        let (zero, lo_b, hi_b) = (pr[bins + 1], pr[bins + 2], pr[bins + 3]);
        t.outside += (real - half_open_count(lo_b, hi_b)) as u64;

        if !self.perron || in_range == 0 {
            return;
        }
        // the largest root lies in the range and is positive
        let above_range = pr[bins].0 + usize::from(pr[bins].1) - v_pos;
        let positive = zero.0 - v_pos;
        if above_range == 0 && positive >= 1 {
            self.classify(a, t);
        }
    }

    fn classify(&self, a: &[i64], t: &mut Tally) {
        let p = MonicIntPoly::from_i64(a).expect("degree >= 1");
        let rb = roots::largest_root_box(&p, &self.eps).expect("has a positive root");
        let (v, alpha_lo) = roots::classify_perron_with_bound(&p, &rb);
        let tot = &mut t.perron;
        tot.perron_count += u64::from(v.is_perron);
        tot.certified_count += u64::from(v.certified_by_bound);
        tot.indeterminate_perron += u64::from(v.indeterminate);
        tot.contradictions += u64::from(v.contradiction());
        let l = alpha_lo.as_ratio();
        let rhs = BigInt::from(self.n as u64 + 1) * BigInt::from(self.q).pow(2);
        if l.is_positive() && (l * l * l * l) > num_rational::BigRational::from_integer(rhs) {
            tot.above_threshold += 1;
            tot.above_threshold_uncertified += u64::from(!v.certified_by_bound);
        }
        if v.is_perron && in_plateau(&p, rb, self.q) {
            tot.perron_in_plateau += 1;
        }
    }
}

/// Whether the positive root isolated by `rb` lies in `(Q^(1/2), Q]`.
fn in_plateau(p: &MonicIntPoly, mut rb: RootBox, q: u64) -> bool {
    if rb.cmp_root(&Rat::integer(q)) == Ordering::Greater {
        return false;
    }
    let qb = BigInt::from(q);
    let s = qb.sqrt();
    if &s * &s == qb {
        return rb.cmp_root(&Rat::integer(s)) == Ordering::Greater;
    }
    // alpha = sqrt(Q) exactly only for p = x^2 - Q
    if p.degree() == 2 && p.coeffs()[1].is_zero() && p.coeffs()[0] == -qb.clone() {
        return false;
    }
    for _ in 0..256 {
        let (l, h) = (rb.lo().as_ratio().clone(), rb.hi().as_ratio().clone());
        let qr = num_rational::BigRational::from_integer(qb.clone());
        if l.is_positive() && &l * &l > qr {
            return true;
        }
        if h.is_positive() && &h * &h <= qr {
            return false;
        }
        if !h.is_positive() {
            return false;
        }
        let w = rb.interval.width().mul(&Rat::new(1, 2).expect("nonzero"));
        rb.refine(&w);
    }
    false
}

/// Exact census over `range` split into `bins` equal half-open bins.
pub fn census(
    n: usize,
    q: u64,
    range: &RatInterval,
    bins: usize,
    opts: &CensusOptions,
    exec: &Exec,
) -> Result<CensusReport> {
    if n < 2 {
        return Err(Error::invalid(format!("census needs degree >= 2, got {n}")));
    }
    if bins == 0 {
        return Err(Error::invalid("bins must be at least 1"));
    }
    let qi = poly::validate_box(n, q)?;
    let size = poly::box_size(n, q);
    exec.check_budget(size)?;
    if opts.predict {
        opts.density.validate()?;
    }
    let start = Instant::now();
    let pieces = range.split(bins);
    let mut edges: Vec<Rat> = pieces.iter().map(|b| b.lo().clone()).collect();
    edges.push(range.hi().clone());
    let probes = Probes::new(edges, q);
    let job = Job {
        n,
        q,
        probes: &probes,
        perron: opts.perron,
        eps: Rat::new(1, 1u64 << 20).expect("nonzero"),
    };
    let divs = DivisorTable::new(q);
    let tally = exec.install(|| {
        (-qi..=qi)
            .into_par_iter()
            .map(|top| {
                let mut t = Tally::new(bins);
                irreducible::classify_slice(n, qi, top, &divs, |a, irr| job.visit(a, irr, &mut t));
                t
            })
            .reduce(|| Tally::new(bins), Tally::merge)
    });

    let predict = opts.predict && q >= 2;
    let norm = error_normalizer(n, q);
    let mut out_bins = Vec::with_capacity(bins);
    for (iv, &count) in pieces.iter().zip(&tally.counts) {
        let predicted = if predict {
            Some(density::predicted_count(n, q, iv, &opts.density)?)
        } else {
            None
        };
        let normalized_error = predicted.map(|p| (count as f64 - p) / norm);
        out_bins.push(CensusBin {
            lo: iv.lo().clone(),
            hi: iv.hi().clone(),
            count,
            predicted,
            normalized_error,
        });
    }
    let elapsed = start.elapsed();
    let total = tally.counts.iter().sum();
    Ok(CensusReport {
        n,
        q,
        range: range.clone(),
        bins: out_bins,
        total,
        omega_real: tally.omega_real,
        polynomials: size as u64,
        reducible_discarded: tally.reducible,
        irreducible_count: tally.irreducible,
        roots_outside_bound: tally.outside,
        perron: opts.perron.then_some(tally.perron),
        stats: RuntimeStats {
            elapsed,
            polynomials_per_second: size as f64 / elapsed.as_secs_f64().max(1e-9),
        },
    })
}

/// Exact count of degree-`n` algebraic integers of height at most `Q` in `iv`.
pub fn omega(n: usize, q: u64, iv: &RatInterval, exec: &Exec) -> Result<u64> {
    Ok(census(n, q, iv, 1, &CensusOptions::counts_only(), exec)?.total)
}

/// Census on a plateau interval against the model `2^(n-1) Q^(n-1) |I|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub n: usize,
    pub q: u64,
    pub interval: RatInterval,
    pub exact: u64,
    pub model: f64,
    pub ratio: f64,
}

/// Whether `I` lies inside `(Q^(1/2), Q]` or inside `[-Q, -Q^(1/2))`.
pub fn in_plateau_zone(q: u64, iv: &RatInterval) -> bool {
    let qr = Rat::integer(q);
    let sq_lt = |x: &Rat| x.mul(x) > qr;
    let right = iv.lo().as_ratio().is_positive() && sq_lt(iv.lo()) && iv.hi() <= &qr;
    let left = iv.lo() >= &qr.neg() && iv.hi().as_ratio().is_negative() && {
        let h = iv.hi();
        h.mul(h) >= qr
    };
    right || left
}

pub fn plateau_report(n: usize, q: u64, iv: &RatInterval, exec: &Exec) -> Result<PlateauReport> {
    if !in_plateau_zone(q, iv) {
        return Err(Error::invalid(format!(
            "interval {iv} is not inside the plateau zone (Q^(1/2), Q] or its mirror for Q = {q}"
        )));
    }
    let exact = omega(n, q, iv, exec)?;
    let model = 2f64.powi(n as i32 - 1) * (q as f64).powi(n as i32 - 1) * iv.width().to_f64();
    Ok(PlateauReport {
        n,
        q,
        interval: iv.clone(),
        exact,
        model,
        ratio: exact as f64 / model,
    })
}

/// Perron statistics of a census.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerronTally {
    pub perron_count: u64,
    pub certified_count: u64,
    /// Share of Perron roots lying in `(Q^(1/2), Q]`; zero for an empty census.
    pub fraction_in_plateau: f64,
    pub indeterminate: u64,
    pub contradictions: u64,
    pub above_threshold: u64,
    pub above_threshold_uncertified: u64,
}

impl PerronTally {
    /// Every root above the threshold is certified and no certificate is contradicted.
    pub fn consistent(&self) -> bool {
        self.contradictions == 0 && self.above_threshold_uncertified == 0
    }
}

pub fn perron_tally(report: &CensusReport) -> Result<PerronTally> {
    let p = report
        .perron
        .as_ref()
        .ok_or_else(|| Error::invalid("census ran without Perron classification"))?;
    let fraction = if p.perron_count == 0 {
        0.0
    } else {
        p.perron_in_plateau as f64 / p.perron_count as f64
    };
    Ok(PerronTally {
        perron_count: p.perron_count,
        certified_count: p.certified_count,
        fraction_in_plateau: fraction,
        indeterminate: p.indeterminate_perron,
        contradictions: p.contradictions,
        above_threshold: p.above_threshold,
        above_threshold_uncertified: p.above_threshold_uncertified,
    })
}

/// One rational centre `a/b` of the gap check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEntry {
    pub x0: Rat,
    pub radius: Rat,
    /// Distance to the nearest counted root, `None` if there is none nearby.
    pub nearest_root_distance: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    pub q: u64,
    pub b_max: u64,
    pub x_range: RatInterval,
    pub entries: Vec<GapEntry>,
    pub violations: u64,
}

impl GapReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// `kappa(n) = 2 / (n (n+1))`.
pub fn kappa(n: usize) -> Rat {
    Rat::new(2, (n * (n + 1)) as u64).expect("n >= 1")
}

/// `kappa(n) / (max(|a|, b)^n Q)`.
pub fn gap_radius(n: usize, q: u64, x0: &Rat) -> Rat {
    let m = std::cmp::max(x0.num().abs(), x0.den().clone());
    let den = num_traits::pow(m, n) * BigInt::from(q);
    kappa(n).mul(&Rat::new(1, den).expect("positive"))
}

/// Reduced fractions `a/b` with `1 <= b <= b_max` in `[lo, hi)`, increasing.
pub fn rationals_in(range: &RatInterval, b_max: u64) -> Vec<Rat> {
    let mut out = Vec::new();
    for b in 1..=b_max {
        let bb = BigInt::from(b);
        let lo = range.lo().as_ratio() * &bb;
        let mut a = lo.ceil().to_integer();
        loop {
            let x = Rat::new(a.clone(), bb.clone()).expect("b >= 1");
            if !range.contains(&x) {
                break;
            }
            if a.gcd(&bb).is_one() {
                out.push(x);
            }
            a += 1;
        }
    }
    out.sort();
    out
}

/// Checks that no algebraic integer of degree `n` and height at most `Q`
/// lies within `kappa(n) / (max(|a|, b)^n Q)` of any `a/b` in `x_range`
/// with `b <= b_max`.
pub fn verify_gap(n: usize, q: u64, b_max: u64, x_range: &RatInterval, exec: &Exec) -> Result<GapReport> {
    if n < 2 {
        return Err(Error::invalid(format!("gap check needs degree >= 2, got {n}")));
    }
    let qi = poly::validate_box(n, q)?;
    exec.check_budget(poly::box_size(n, q))?;
    let centres = rationals_in(x_range, b_max);
    let radii: Vec<Rat> = centres.iter().map(|x| gap_radius(n, q, x)).collect();
    if centres.is_empty() {
        return Ok(GapReport {
            n,
            q,
            b_max,
            x_range: x_range.clone(),
            entries: Vec::new(),
            violations: 0,
        });
    }
    let min_r = radii.iter().min().expect("nonempty").clone();
    let eps = min_r.mul(&Rat::new(1, 4).expect("nonzero"));
    let one = Rat::integer(1);
    let window = RatInterval::new(x_range.lo().sub(&one), x_range.hi().add(&one)).expect("nonempty");

    #[derive(Clone)]
    struct Near {
        dist: Option<f64>,
        hit: bool,
    }
    let merge = |mut a: Vec<Near>, b: Vec<Near>| {
        for (x, y) in a.iter_mut().zip(b) {
            x.hit |= y.hit;
            x.dist = match (x.dist, y.dist) {
                (Some(u), Some(v)) => Some(u.min(v)),
                (u, v) => u.or(v),
            };
        }
        a
    };
    let empty = vec![Near { dist: None, hit: false }; centres.len()];
    let divs = DivisorTable::new(q);
    let near = exec.install(|| {
        (-qi..=qi)
            .into_par_iter()
            .map(|top| {
                let mut acc = empty.clone();
                irreducible::classify_slice(n, qi, top, &divs, |a, irr| {
                    if !irr {
                        return;
                    }
                    let p = MonicIntPoly::from_i64(a).expect("degree >= 1");
                    if roots::count_roots_in(&p, &window) == 0 {
                        return;
                    }
                    for rb in roots::isolate_roots(&p, &eps) {
                        if !window.contains(rb.lo()) {
                            continue;
                        }
                        for (k, (x0, r0)) in centres.iter().zip(&radii).enumerate() {
                            let (d, hit) = root_distance(rb.clone(), x0, r0);
                            let e = &mut acc[k];
                            e.hit |= hit;
                            e.dist = Some(e.dist.map_or(d, |u| u.min(d)));
                        }
                    }
                });
                acc
            })
            .reduce(|| empty.clone(), merge)
    });
    let entries: Vec<GapEntry> = centres
        .into_iter()
        .zip(radii)
        .zip(near)
        .map(|((x0, radius), nr)| GapEntry {
            x0,
            radius,
            nearest_root_distance: nr.dist,
            pass: !nr.hit,
        })
        .collect();
    let violations = entries.iter().filter(|e| !e.pass).count() as u64;
    Ok(GapReport {
        n,
        q,
        b_max,
        x_range: x_range.clone(),
        entries,
        violations,
    })
}

/// Distance from `x0` to the root in `rb`, and whether it is within `r0`.
/// The box is refined until the comparison with `r0` is decided exactly.
fn root_distance(mut rb: RootBox, x0: &Rat, r0: &Rat) -> (f64, bool) {
    let (inner_lo, inner_hi) = (x0.sub(r0), x0.add(r0));
    for _ in 0..200 {
        if rb.hi() <= &inner_lo || rb.lo() > &inner_hi {
            break;
        }
        if rb.lo() >= &inner_lo && rb.hi() <= &inner_hi {
            break;
        }
        let w = rb.interval.width().mul(&Rat::new(1, 2).expect("nonzero"));
        rb.refine(&w);
    }
    let below = rb.cmp_root(&inner_lo) == Ordering::Less;
    let above = rb.cmp_root(&inner_hi) == Ordering::Greater;
    let d = (rb.midpoint() - x0.to_f64()).abs();
    (d, !(below || above))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(lo: i64, hi: i64) -> RatInterval {
        RatInterval::from_ints(lo, hi).unwrap()
    }

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    /// Independent oracle: roots of x^2 + b x + c by the quadratic formula,
    /// located against rational endpoints with exact integer comparisons.
    fn quadratic_oracle(q: i64, lo: &Rat, hi: &Rat) -> u64 {
        let mut total = 0;
        for b in -q..=q {
            for c in -q..=q {
                let disc = b * b - 4 * c;
                if disc < 0 {
                    continue;
                }
                let s = (disc as f64).sqrt().round() as i64;
                if s * s == disc {
                    // rational roots: reducible, or a double root
                    continue;
                }
                for sign in [-1i64, 1] {
                    // root = (-b + sign sqrt(disc)) / 2 compared with x = num/den
                    let cmp = |x: &Rat| -> Ordering {
                        let (num, den) = (x.num().to_i64().unwrap(), x.den().to_i64().unwrap());
                        // sign * sqrt(disc) vs (2 num + b den) / den
                        let rhs = 2 * num + b * den;
                        let lhs_sq = disc * den * den;
                        match (sign > 0, rhs >= 0) {
                            (true, false) => Ordering::Greater,
                            (false, true) => Ordering::Less,
                            (true, true) => lhs_sq.cmp(&(rhs * rhs)),
                            (false, false) => (rhs * rhs).cmp(&lhs_sq),
                        }
                    };
                    if cmp(lo) != Ordering::Less && cmp(hi) == Ordering::Less {
                        total += 1;
                    }
                }
            }
        }
        total
    }

    #[test]
    fn tiny_census() {
        let r = census(2, 1, &RatInterval::covering_height(1), 1, &CensusOptions::default(), &Exec::default()).unwrap();
        assert_eq!(r.total, 4);
        assert_eq!(r.omega_real, 4);
        assert_eq!(r.reducible_discarded, 4);
        assert_eq!(r.irreducible_count, 5);
        assert_eq!(r.roots_outside_bound, 0);
        let b = RatInterval::covering_height(1);
        assert_eq!(quadratic_oracle(1, b.lo(), b.hi()), 4);
        assert!(r.bins[0].predicted.is_none());
    }

    #[test]
    fn outside_the_bound_is_empty() {
        let e = Exec::default();
        assert_eq!(omega(2, 10, &ri(11, 20), &e).unwrap(), 0);
        assert_eq!(omega(3, 4, &ri(-12, -5), &e).unwrap(), 0);
    }

    #[test]
    fn matches_quadratic_oracle() {
        let e = Exec::default();
        let ivs = [ri(0, 1), ri(-2, -1), RatInterval::new(rat("1/2"), rat("3/2")).unwrap(), ri(-11, 11)];
        for q in [1u64, 2, 5, 10] {
            for iv in &ivs {
                let got = omega(2, q, iv, &e).unwrap();
                assert_eq!(got, quadratic_oracle(q as i64, iv.lo(), iv.hi()), "Q={q} I={iv}");
            }
        }
    }

    #[test]
    fn bins_partition_the_range() {
        let e = Exec::default();
        let iv = RatInterval::new(rat("-7/2"), rat("9/2")).unwrap();
        let coarse = census(3, 3, &iv, 4, &CensusOptions::counts_only(), &e).unwrap();
        let fine = census(3, 3, &iv, 8, &CensusOptions::counts_only(), &e).unwrap();
        assert_eq!(coarse.total, fine.total);
        for (k, b) in coarse.bins.iter().enumerate() {
            assert_eq!(b.count, fine.bins[2 * k].count + fine.bins[2 * k + 1].count);
            assert_eq!(b.count, omega(3, 3, &b.interval(), &e).unwrap());
        }
    }

    #[test]
    fn mirror_symmetry() {
        let e = Exec::default();
        for (lo, hi) in [("0/1", "1/1"), ("1/3", "5/2"), ("-2/1", "3/4")] {
            let iv = RatInterval::new(rat(lo), rat(hi)).unwrap();
            // [a, b) mirrors to (-b, -a]; no irreducible quadratic or cubic has a rational root
            for n in [2, 3] {
                let a = omega(n, 4, &iv, &e).unwrap();
                let b = omega(n, 4, &iv.mirrored(), &e).unwrap();
                assert_eq!(a, b, "n={n} {iv}");
            }
        }
    }

    #[test]
    fn deterministic_across_workers() {
        let iv = RatInterval::new(rat("-5/1"), rat("5/1")).unwrap();
        let opts = CensusOptions::default();
        let a = census(3, 4, &iv, 5, &opts, &Exec::default().with_workers(1)).unwrap();
        let b = census(3, 4, &iv, 5, &opts, &Exec::default().with_workers(3)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn report_round_trip() {
        let r = census(2, 3, &ri(-4, 4), 4, &CensusOptions::default(), &Exec::default()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"lo\":\"-4/1\""));
        let back: CensusReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.bins, r.bins);
        assert_eq!(back.total, r.total);
        assert_eq!(back.perron, r.perron);
    }

    #[test]
    fn budget_is_enforced() {
        let e = Exec::default().with_budget(100);
        assert!(matches!(
            census(2, 10, &ri(0, 1), 1, &CensusOptions::counts_only(), &e),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(census(1, 10, &ri(0, 1), 1, &CensusOptions::counts_only(), &Exec::default()).is_err());
        assert!(census(2, 10, &ri(0, 1), 0, &CensusOptions::counts_only(), &Exec::default()).is_err());
    }

    #[test]
    fn perron_tally_tiny() {
        let r = census(2, 1, &RatInterval::covering_height(1), 1, &CensusOptions::default(), &Exec::default()).unwrap();
        let t = perron_tally(&r).unwrap();
        assert_eq!(t.perron_count, 1);
        assert_eq!(t.certified_count, 1);
        assert!(t.consistent());
        // 1.618 lies in (1, 1]? no: the plateau zone for Q = 1 is empty
        assert_eq!(t.fraction_in_plateau, 0.0);
        let none = census(2, 1, &ri(5, 6), 1, &CensusOptions::default(), &Exec::default()).unwrap();
        assert_eq!(perron_tally(&none).unwrap(), PerronTally::default());
        let off = census(2, 1, &ri(5, 6), 1, &CensusOptions::counts_only(), &Exec::default()).unwrap();
        assert!(perron_tally(&off).is_err());
    }

    #[test]
    fn perron_bound_holds_in_quadratic_census() {
        let r = census(2, 9, &RatInterval::covering_height(9), 4, &CensusOptions::default(), &Exec::default()).unwrap();
        let t = perron_tally(&r).unwrap();
        assert!(t.above_threshold > 0);
        assert!(t.consistent());
        assert_eq!(t.indeterminate, 0);
        // quadratic oracle: x^2 + bx + c with real irrational roots is Perron iff b < 0
        let mut expect = 0;
        for b in -9i64..=9 {
            for c in -9i64..=9 {
                let d = b * b - 4 * c;
                let s = (d as f64).sqrt().round() as i64;
                if d > 0 && s * s != d && b < 0 {
                    expect += 1;
                }
            }
        }
        assert_eq!(t.perron_count, expect);
    }

    #[test]
    fn plateau_zone_checks() {
        assert!(in_plateau_zone(100, &ri(20, 80)));
        assert!(in_plateau_zone(100, &ri(-80, -20)));
        assert!(in_plateau_zone(100, &ri(11, 100)));
        assert!(!in_plateau_zone(100, &ri(10, 80)));
        assert!(!in_plateau_zone(100, &ri(20, 101)));
        assert!(!in_plateau_zone(100, &ri(-101, -20)));
        assert!(plateau_report(2, 100, &ri(5, 80), &Exec::default()).is_err());
    }

    #[test]
    fn plateau_small() {
        let e = Exec::default();
        let a = plateau_report(2, 40, &ri(10, 30), &e).unwrap();
        assert_eq!(a.model, 1600.0);
        assert!((a.ratio - 1.0).abs() < 0.2, "{a:?}");
        let b = plateau_report(2, 40, &ri(-30, -10), &e).unwrap();
        assert_eq!(a.model, b.model);
    }

    #[test]
    fn gap_radii() {
        assert_eq!(kappa(2), rat("1/3"));
        assert_eq!(gap_radius(2, 50, &rat("0/1")), rat("1/150"));
        assert_eq!(gap_radius(2, 50, &rat("3/2")), rat("1/1350"));
        let xs = rationals_in(&ri(0, 2), 4);
        assert_eq!(xs.len(), 12);
        assert_eq!(xs[0], Rat::zero());
        assert!(xs.contains(&rat("7/4")) && !xs.contains(&rat("2/1")));
    }

    #[test]
    fn gap_check_small() {
        let e = Exec::default();
        let r = verify_gap(2, 12, 3, &ri(0, 2), &e).unwrap();
        assert!(r.pass());
        for en in &r.entries {
            let d = en.nearest_root_distance.unwrap();
            assert!(d > en.radius.to_f64());
        }
        let empty = verify_gap(2, 12, 0, &ri(0, 2), &e).unwrap();
        assert!(empty.entries.is_empty() && empty.pass());
    }

    #[test]
    fn gap_detects_roots_inside_a_larger_radius() {
        // sqrt 2 is 0.0858 from 3/2; a radius of 1/10 must register a hit
        let p = MonicIntPoly::from_i64(&[-2, 0]).unwrap();
        let rb = roots::isolate_roots(&p, &rat("1/64")).pop().unwrap();
        let (d, hit) = root_distance(rb.clone(), &rat("3/2"), &rat("1/10"));
        assert!(hit && (d - (1.5 - 2f64.sqrt())).abs() < 0.02);
        let (_, hit) = root_distance(rb, &rat("3/2"), &rat("1/12"));
        assert!(!hit);
    }

    #[test]
    fn normalizer() {
        assert!((error_normalizer(2, 100) - 100.0 * 100f64.ln()).abs() < 1e-9);
        assert_eq!(error_normalizer(3, 10), 100.0);
    }
}
