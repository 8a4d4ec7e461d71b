//! Verification suites: each check reports what it measured, the tolerance
//! it was held to, and whether it passed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DMatrix;
use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::census::{self, CensusOptions};
use crate::density::{self, DensityParams, DensityValue};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::irreducible;
use crate::poly::{jacobian_reference, root_pair_coeff_map, RootPairMapInput};
use crate::rational::{Rat, RatInterval};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            tolerance,
            pass,
            detail: detail.into(),
        }
    }

    /// Passes when `measured <= tolerance`.
    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult::new(name, measured, tolerance, measured <= tolerance, detail)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {}: measured {:.6e}, tolerance {:.6e} ({})",
            self.name, self.measured, self.tolerance, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
    pub elapsed_seconds: f64,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Exact census against the quadratic-formula oracle.
    Oracle,
    /// Evenness and inversion of `phi_n`.
    Functional,
    /// Closed form of `∫ delta_tilde` against quadrature.
    DeltaIntegral,
    /// `omega_2` quadrature against its closed form.
    Omega2,
    Plateau,
    Gap,
    Jacobian,
    /// Cubic scaling of the close-roots measure in `|I|`.
    CloseRoots,
    Perron,
    Reducible,
    /// Boundedness of the normalized census error.
    MainLaw,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Oracle,
        Suite::Functional,
        Suite::DeltaIntegral,
        Suite::Omega2,
        Suite::Plateau,
        Suite::Gap,
        Suite::Jacobian,
        Suite::CloseRoots,
        Suite::Perron,
        Suite::Reducible,
        Suite::MainLaw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Functional => "functional",
            Suite::DeltaIntegral => "delta-integral",
            Suite::Omega2 => "omega2",
            Suite::Plateau => "plateau",
            Suite::Gap => "gap",
            Suite::Jacobian => "jacobian",
            Suite::CloseRoots => "close-roots",
            Suite::Perron => "perron",
            Suite::Reducible => "reducible",
            Suite::MainLaw => "main-law",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(s, "unknown suite"))
    }
}

/// Parameters of a suite run. `None` fields take the suite's own defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyConfig {
    pub degree: Option<usize>,
    pub height: Option<u64>,
    pub interval: Option<RatInterval>,
    pub xi: Option<f64>,
    pub b_max: Option<u64>,
    pub samples: Option<u64>,
    pub density: DensityParams,
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig, exec: &Exec) -> Result<SuiteReport> {
    let start = Instant::now();
    let p = &cfg.density;
    let n_or = |d: &[usize]| cfg.degree.map_or_else(|| d.to_vec(), |n| vec![n]);
    let xi_or = |d: &[f64]| cfg.xi.map_or_else(|| d.to_vec(), |x| vec![x]);
    let checks = match suite {
        Suite::Oracle => {
            let q = cfg.height.unwrap_or(20);
            let ivs = match &cfg.interval {
                Some(iv) => vec![iv.clone()],
                None => default_oracle_intervals(),
            };
            oracle_checks(q, &ivs, exec)?
        }
        Suite::Functional => functional_checks(&n_or(&[2, 3]), p),
        Suite::DeltaIntegral => delta_integral_checks(&n_or(&[2, 3, 4]), &xi_or(&[0.1, 0.01])),
        Suite::Omega2 => omega2_checks(&xi_or(&[0.1, 0.01]), p)?,
        Suite::Plateau => {
            let cases = match (cfg.degree, cfg.height, &cfg.interval) {
                (Some(n), Some(q), Some(iv)) => vec![(n, q, iv.clone())],
                (None, None, None) => default_plateau_cases(),
                _ => return Err(Error::invalid("plateau needs degree, height and interval together")),
            };
            let mut out = Vec::new();
            for (n, q, iv) in cases {
                out.push(plateau_check(n, q, &iv, exec)?);
            }
            out
        }
        Suite::Gap => {
            let range = cfg.interval.clone().unwrap_or_else(|| RatInterval::from_ints(0, 2).expect("nonempty"));
            vec![gap_check(cfg.degree.unwrap_or(2), cfg.height.unwrap_or(50), cfg.b_max.unwrap_or(4), &range, exec)?]
        }
        Suite::Jacobian => vec![jacobian_check(cfg.samples.unwrap_or(100) as usize, p.seed)],
        Suite::CloseRoots => {
            vec![close_roots_check(cfg.degree.unwrap_or(3), cfg.xi.unwrap_or(0.05), cfg.samples.unwrap_or(1_000_000), p.seed)]
        }
        Suite::Perron => perron_checks(cfg.degree.unwrap_or(2), cfg.height.unwrap_or(25), exec)?,
        Suite::Reducible => {
            let (small, large) = match cfg.height {
                Some(q) => ((q / 10).max(2), q),
                None => (200, 2000),
            };
            reducible_checks(small, large, exec)?
        }
        Suite::MainLaw => {
            let iv = cfg.interval.clone().unwrap_or_else(|| RatInterval::from_ints(0, 1).expect("nonempty"));
            let cases = match cfg.degree {
                Some(2) => vec![(2, vec![25, 50, 100, 200])],
                Some(3) => vec![(3, vec![10, 20, 40])],
                Some(n) => return Err(Error::invalid(format!("main-law suite covers degrees 2 and 3, got {n}"))),
                None => vec![(2, vec![25, 50, 100, 200]), (3, vec![10, 20, 40])],
            };
            let mut out = Vec::new();
            for (n, qs) in cases {
                out.push(main_law_check(n, &qs, &iv, p, exec)?);
            }
            out
        }
    };
    Ok(SuiteReport {
        suite,
        checks,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// `|a - b| / (3 sigma + floor)`: at most 1 when the two values agree.
pub fn sigma_ratio(a: &DensityValue, b: &DensityValue) -> f64 {
    let sigma = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    let floor = 1e-9 * a.value.abs().max(b.value.abs()).max(1.0);
    (a.value - b.value).abs() / (3.0 * sigma + floor)
}

/// Independent count of roots of irreducible `x^2 + bx + c` (`|b|, |c| <= Q`)
/// in `[lo, hi)`, from the quadratic formula with exact integer comparisons.
pub fn quadratic_formula_count(q: i64, iv: &RatInterval) -> u64 {
    let frac = |x: &Rat| -> (i128, i128) {
        (
            num_traits::ToPrimitive::to_i128(x.num()).expect("small endpoint"),
            num_traits::ToPrimitive::to_i128(x.den()).expect("small endpoint"),
        )
    };
    let (lo, hi) = (frac(iv.lo()), frac(iv.hi()));
    let mut total = 0;
    for b in -q as i128..=q as i128 {
        for c in -q as i128..=q as i128 {
            let disc = b * b - 4 * c;
            // negative: no real roots; a perfect square: rational roots, so reducible or a double root
            if disc < 0 || disc.sqrt().pow(2) == disc {
                continue;
            }
            for sign in [-1i128, 1] {
                // (-b + sign sqrt(disc)) / 2 >= num/den  <=>  sign sqrt(disc) >= (2 num + b den) / den
                let at_least = |(num, den): (i128, i128)| {
                    let r = 2 * num + b * den;
                    let lhs = disc * den * den;
                    if sign > 0 {
                        r < 0 || lhs >= r * r
                    } else {
                        r <= 0 && lhs <= r * r
                    }
                };
                if at_least(lo) && !at_least(hi) {
                    total += 1;
                }
            }
        }
    }
    total
}

pub fn default_oracle_intervals() -> Vec<RatInterval> {
    let r = |a: i64, b: i64, c: i64, d: i64| RatInterval::new(Rat::new(a, b).unwrap(), Rat::new(c, d).unwrap()).unwrap();
    vec![r(0, 1, 1, 1), r(-2, 1, -1, 1), r(1, 2, 3, 2)]
}

/// Degree-2 census against the oracle for every height `1..=q_max` and every interval.
pub fn oracle_checks(q_max: u64, ivs: &[RatInterval], exec: &Exec) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for iv in ivs {
        let mut mismatches = 0u64;
        let mut first = String::new();
        for q in 1..=q_max {
            let got = census::omega(2, q, iv, exec)?;
            let want = quadratic_formula_count(q as i64, iv);
            if got != want {
                mismatches += 1;
                if first.is_empty() {
                    first = format!("; first mismatch Q={q}: census {got}, oracle {want}");
                }
            }
        }
        out.push(CheckResult::at_most(
            format!("census = quadratic oracle on {iv}, Q <= {q_max}"),
            mismatches as f64,
            0.0,
            format!("{mismatches} mismatching heights{first}"),
        ));
    }
    Ok(out)
}

/// Evenness at 20 points of `[0.1, 5]` and inversion at 20 points of `[0.1, 0.9]`.
pub fn functional_checks(ns: &[usize], p: &DensityParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &n in ns {
        let mut worst_even = (0.0, 0.0);
        let mut worst_inv = (0.0, 0.0);
        for i in 0..20 {
            let s = i as f64 / 19.0;
            let t = 0.1 + 4.9 * s;
            let r = sigma_ratio(&density::phi(n, t, p), &density::phi(n, -t, p));
            if r >= worst_even.0 {
                worst_even = (r, t);
            }
            let t = 0.1 + 0.8 * s;
            let a = density::phi_quadrature(n, t, p);
            let lhs = DensityValue {
                value: t * t * a.value,
                std_error: t * t * a.std_error,
                method: a.method,
            };
            let r = sigma_ratio(&lhs, &density::phi_quadrature(n, 1.0 / t, p));
            if r >= worst_inv.0 {
                worst_inv = (r, t);
            }
        }
        out.push(CheckResult::at_most(
            format!("phi_{n}(-t) = phi_{n}(t)"),
            worst_even.0,
            1.0,
            format!("worst |difference| / (3 sigma + floor) at t = {:.4}", worst_even.1),
        ));
        out.push(CheckResult::at_most(
            format!("phi_{n}(1/t) = t^2 phi_{n}(t)"),
            worst_inv.0,
            1.0,
            format!("worst |difference| / (3 sigma + floor) at t = {:.4}", worst_inv.1),
        ));
    }
    out
}

/// Numerical `∫ delta_tilde_n(xi, t) dt`: adaptive quadrature over
/// `[-2/xi, 2/xi]` and the tails `-2^(n-2) t^-2` integrated analytically.
pub fn delta_integral_numeric(n: usize, xi: f64) -> f64 {
    let c = 2f64.powi(n as i32 - 2);
    let big = 1.0 / xi;
    let s = 1.0 / xi.sqrt();
    let body = density::integrate_numeric(&|t| density::delta_tilde(n, xi, t), -2.0 * big, 2.0 * big, &[-big, -s, s, big], 1e-12);
    body - c * xi
}

pub fn delta_integral_checks(ns: &[usize], xis: &[f64]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &n in ns {
        for &xi in xis {
            let closed = density::integral_delta_tilde(n, xi);
            let numeric = delta_integral_numeric(n, xi);
            out.push(CheckResult::at_most(
                format!("integral of delta_tilde_{n}, xi = {xi}"),
                (closed - numeric).abs(),
                1e-6,
                format!("closed {closed:.12}, quadrature {numeric:.12}"),
            ));
        }
        let limit = 2f64.powi(n as i32);
        let v = density::integral_delta_tilde(n, 1e-6);
        out.push(CheckResult::at_most(
            format!("integral of delta_tilde_{n} -> 2^{n} as xi -> 0"),
            (v / limit - 1.0).abs(),
            2e-3,
            format!("relative deviation at xi = 1e-6, value {v:.9}"),
        ));
    }
    out
}

/// The nine comparison points for `omega_2(xi, .)`.
pub fn omega2_grid(xi: f64) -> [f64; 9] {
    let s = xi.sqrt();
    [0.0, 0.5, 1.0, 2.0, 5.0, 0.5 / s, 2.0 / s, 0.9 / xi, 1.5 / xi]
}

pub fn omega2_checks(xis: &[f64], p: &DensityParams) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for &xi in xis {
        let mut worst = (0.0, 0.0);
        for t in omega2_grid(xi) {
            let closed = density::omega2_closed(xi, t)?;
            let r = sigma_ratio(&density::omega(2, xi, t, p), &closed);
            if r >= worst.0 {
                worst = (r, t);
            }
        }
        out.push(CheckResult::at_most(
            format!("omega_2({xi}, t) = closed form on 9 points"),
            worst.0,
            1.0,
            format!("worst |difference| / (3 sigma + floor) at t = {:.4}", worst.1),
        ));
    }
    Ok(out)
}

pub fn default_plateau_cases() -> Vec<(usize, u64, RatInterval)> {
    vec![
        (2, 100, RatInterval::from_ints(20, 80).unwrap()),
        (3, 30, RatInterval::from_ints(7, 28).unwrap()),
    ]
}

pub const PLATEAU_TOLERANCE: f64 = 0.15;

pub fn plateau_check(n: usize, q: u64, iv: &RatInterval, exec: &Exec) -> Result<CheckResult> {
    let r = census::plateau_report(n, q, iv, exec)?;
    Ok(CheckResult::at_most(
        format!("plateau n={n} Q={q} I={iv}"),
        (r.ratio - 1.0).abs(),
        PLATEAU_TOLERANCE,
        format!("exact {}, model {}, ratio {:.6}", r.exact, r.model, r.ratio),
    ))
}

pub fn gap_check(n: usize, q: u64, b_max: u64, range: &RatInterval, exec: &Exec) -> Result<CheckResult> {
    let r = census::verify_gap(n, q, b_max, range, exec)?;
    let tight = r
        .entries
        .iter()
        .filter_map(|e| Some(e.nearest_root_distance? / e.radius.to_f64()))
        .fold(f64::INFINITY, f64::min);
    Ok(CheckResult::at_most(
        format!("gap n={n} Q={q} b<={b_max} on {range}"),
        r.violations as f64,
        0.0,
        format!("{} rationals, smallest distance / radius {tight:.4}", r.entries.len()),
    ))
}

/// Determinant of the central finite-difference Jacobian of the root-pair
/// map, rows `a_{n-1}..a_0`, columns `b_{n-3}..b_0, alpha, beta`.
pub fn jacobian_finite_difference(input: &RootPairMapInput, h: f64) -> f64 {
    let n = input.degree();
    let m = input.b.len();
    let shifted = |col: usize, d: f64| {
        let mut x = input.clone();
        if col < m {
            x.b[m - 1 - col] += d;
        } else if col == m {
            x.alpha += d;
        } else {
            x.beta += d;
        }
        root_pair_coeff_map(&x)
    };
    let mut jac = DMatrix::zeros(n, n);
    for col in 0..n {
        let (up, down) = (shifted(col, h), shifted(col, -h));
        for row in 0..n {
            let k = n - 1 - row;
            jac[(row, col)] = (up[k] - down[k]) / (2.0 * h);
        }
    }
    jac.determinant()
}

/// Random input with `n ∈ {2, 3, 4}`, entries in `[-2, 2]`, `|beta - alpha| >= 0.1`
/// and `|g(alpha)|, |g(beta)| >= 0.1`.
pub fn random_root_pair_input(rng: &mut impl Rng) -> RootPairMapInput {
    loop {
        let n = rng.gen_range(2..=4);
        let mut x = RootPairMapInput {
            xi: rng.gen_range(-2.0..=2.0),
            b: (0..n - 2).map(|_| rng.gen_range(-2.0..=2.0)).collect(),
            alpha: rng.gen_range(-2.0..=2.0),
            beta: rng.gen_range(-2.0..=2.0),
        };
        if x.xi.abs() < 0.1 {
            x.xi = 0.1f64.copysign(x.xi);
        }
        if (x.beta - x.alpha).abs() >= 0.1 && x.cofactor_at(x.alpha).abs() >= 0.1 && x.cofactor_at(x.beta).abs() >= 0.1 {
            return x;
        }
    }
}

pub fn jacobian_check(count: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..count {
        let x = random_root_pair_input(&mut rng);
        let want = jacobian_reference(&x);
        let got = jacobian_finite_difference(&x, 1e-6);
        let rel = (got - want).abs() / want.abs();
        worst = worst.max(rel);
        failures += usize::from(rel.is_nan() || rel > 1e-5);
    }
    CheckResult::new(
        format!("Jacobian of the root-pair map, {count} random inputs"),
        worst,
        1e-5,
        failures == 0,
        format!("worst relative error, {failures} failures"),
    )
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Regression exponent of the close-roots measure against `|I| ∈ {1/8, 1/4, 1/2}`
/// for intervals centred at 0.
pub fn close_roots_exponent(n: usize, xi: f64, samples: u64, seed: u64) -> (f64, Vec<density::Estimate>) {
    let widths = [8u64, 4, 2];
    let estimates: Vec<_> = widths
        .iter()
        .map(|&w| {
            let iv = RatInterval::new(Rat::new(-1, 2 * w).unwrap(), Rat::new(1, 2 * w).unwrap()).unwrap();
            density::close_roots_measure(n, xi, &iv, samples, seed)
        })
        .collect();
    let xs: Vec<f64> = widths.iter().map(|&w| 1.0 / w as f64).collect();
    let ys: Vec<f64> = estimates.iter().map(|e| e.value).collect();
    (log_log_slope(&xs, &ys), estimates)
}

pub fn close_roots_check(n: usize, xi: f64, samples: u64, seed: u64) -> CheckResult {
    let (k, est) = close_roots_exponent(n, xi, samples, seed);
    let values: Vec<String> = est.iter().map(|e| format!("{:.3e}±{:.1e}", e.value, e.std_error)).collect();
    CheckResult::new(
        format!("close-roots measure ~ |I|^3, n={n} xi={xi}"),
        k,
        0.4,
        (k - 3.0).abs() <= 0.4,
        format!("fitted exponent; measures {}", values.join(", ")),
    )
}

pub fn perron_checks(n: usize, q: u64, exec: &Exec) -> Result<Vec<CheckResult>> {
    let opts = CensusOptions {
        predict: false,
        perron: true,
        ..Default::default()
    };
    let report = census::census(n, q, &RatInterval::covering_height(q), 1, &opts, exec)?;
    let t = census::perron_tally(&report)?;
    let threshold = ((n + 1) as f64).powf(0.25) * (q as f64).sqrt();
    Ok(vec![
        CheckResult::new(
            format!("roots above {threshold:.4} are certified Perron, n={n} Q={q}"),
            t.above_threshold_uncertified as f64,
            0.0,
            t.above_threshold_uncertified == 0 && t.above_threshold > 0,
            format!("{} roots above the threshold, {} uncertified", t.above_threshold, t.above_threshold_uncertified),
        ),
        CheckResult::at_most(
            "no contradiction from the conjugate moduli",
            t.contradictions as f64,
            0.0,
            format!(
                "{} Perron, {} certified, {} indeterminate",
                t.perron_count, t.certified_count, t.indeterminate
            ),
        ),
    ])
}

pub fn reducible_checks(q_small: u64, q_large: u64, exec: &Exec) -> Result<Vec<CheckResult>> {
    let one = irreducible::count_reducible(2, 1, exec)?;
    let small = irreducible::count_reducible(2, q_small, exec)?;
    let large = irreducible::count_reducible(2, q_large, exec)?;
    let (rs, rl) = (small.ratio.unwrap_or(f64::NAN), large.ratio.unwrap_or(f64::NAN));
    Ok(vec![
        CheckResult::at_most(
            "R_2(1) = 4",
            (one.count as f64 - 4.0).abs(),
            0.0,
            format!("R_2(1) = {}", one.count),
        ),
        CheckResult::at_most(
            format!("R_2({q_large}) / (2 Q ln Q) in [0.6, 1.4]"),
            (rl - 1.0).abs(),
            0.4,
            format!("R_2 = {}, ratio {rl:.6}", large.count),
        ),
        CheckResult::new(
            format!("ratio closer to 1 at Q = {q_large} than at Q = {q_small}"),
            (rl - 1.0).abs(),
            (rs - 1.0).abs(),
            (rl - 1.0).abs() < (rs - 1.0).abs(),
            format!("R_2({q_small}) = {}, ratio {rs:.6}", small.count),
        ),
    ])
}

/// Normalized errors of the census against the prediction, one per height.
pub fn main_law_errors(n: usize, qs: &[u64], iv: &RatInterval, p: &DensityParams, exec: &Exec) -> Result<Vec<f64>> {
    let opts = CensusOptions {
        density: p.clone(),
        predict: true,
        perron: false,
    };
    qs.iter()
        .map(|&q| {
            let r = census::census(n, q, iv, 1, &opts, exec)?;
            r.bins[0]
                .normalized_error
                .ok_or_else(|| Error::invalid("prediction needs height >= 2"))
        })
        .collect()
}

pub fn main_law_check(n: usize, qs: &[u64], iv: &RatInterval, p: &DensityParams, exec: &Exec) -> Result<CheckResult> {
    let errs = main_law_errors(n, qs, iv, p, exec)?;
    let abs: Vec<f64> = errs.iter().map(|e| e.abs()).collect();
    let max = abs.iter().cloned().fold(0.0, f64::max);
    let min = abs.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max / min;
    let list: Vec<String> = qs.iter().zip(&errs).map(|(q, e)| format!("Q={q}: {e:.4}")).collect();
    Ok(CheckResult::at_most(
        format!("normalized census error bounded, n={n} I={iv}"),
        spread,
        10.0,
        format!("max/min of |error|; {}", list.join(", ")),
    ))
}
