//! Density functions of real algebraic numbers and integers.
//!
//! * `phi_n(t)`: the integral of `|p'(t)|` over polynomials `p` with
//!   coefficients `p_1..p_n` in `[-1, 1]` and `|p(t) - p_0| <= 1`.
//! * `omega_n(xi, t)`: the same with `n - 1` free coefficients and a fixed
//!   leading coefficient `xi`.
//! * `delta_tilde_n(xi, t)`: the piecewise correction with
//!   `omega_n ≈ phi_{n-1} + delta_tilde_n`.
//!
//! Both integrals are evaluated by the semi-analytic scheme in [`slab`]; a
//! plain Monte Carlo estimate is available as an independent check.

mod mc;
mod quad;
mod slab;

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RatInterval;
use slab::Slab;

/// Numerical settings for density evaluation.
///
/// `n` and `xi` are the defaults a caller (such as the command line) works
/// with; the evaluation functions take degree and `xi` explicitly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityParams {
    pub n: usize,
    pub xi: f64,
    /// Midpoint nodes per axis for the outer quadrature dimensions.
    pub grid: usize,
    pub mc_samples: u64,
    pub seed: u64,
}

impl Default for DensityParams {
    fn default() -> Self {
        DensityParams {
            n: 2,
            xi: 0.0,
            grid: 64,
            mc_samples: 200_000,
            seed: 0,
        }
    }
}

impl DensityParams {
    pub fn new(n: usize, xi: f64) -> Self {
        DensityParams { n, xi, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.xi) {
            return Err(Error::invalid(format!("xi must lie in [0, 1], got {}", self.xi)));
        }
        if self.grid < 8 {
            return Err(Error::invalid(format!("grid must be at least 8, got {}", self.grid)));
        }
        if self.mc_samples < 10_000 {
            return Err(Error::invalid(format!(
                "mc_samples must be at least 10000, got {}",
                self.mc_samples
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    NestedQuadrature,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::NestedQuadrature => "nested_quadrature",
            Method::MonteCarlo => "monte_carlo",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub value: f64,
    pub std_error: f64,
    pub method: Method,
}

impl DensityValue {
    pub fn closed(value: f64) -> Self {
        DensityValue { value, std_error: 0.0, method: Method::ClosedForm }
    }
}

/// Upper end of the small-`t` series zone, `1 - 1/sqrt 2`.
pub const SERIES_LIMIT: f64 = 1.0 - 1.0 / SQRT_2;
/// Lower end of the large-`t` series zone, `2 + sqrt 2`.
pub const RECIPROCAL_LIMIT: f64 = 2.0 + SQRT_2;

/// `2^(n-1) (1 + (1/3) sum_{k=1}^{n-1} (k+1)^2 t^(2k))`, valid for `|t| <= 1 - 1/sqrt 2`.
fn phi_series(n: usize, t: f64) -> f64 {
    let t2 = t * t;
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 1..n {
        pow *= t2;
        let k1 = (k + 1) as f64;
        sum += k1 * k1 * pow;
    }
    2f64.powi(n as i32 - 1) * (1.0 + sum / 3.0)
}

fn phi_slab(n: usize, t: f64) -> Slab {
    let w = (1..=n).map(|k| t.powi(k as i32)).collect();
    let v = (1..=n).map(|k| k as f64 * t.powi(k as i32 - 1)).collect();
    Slab { c0: 0.0, b0: 0.0, w, v }
}

fn omega_slab(n: usize, xi: f64, t: f64) -> Slab {
    let w = (1..n).map(|k| t.powi(k as i32)).collect();
    let v = (1..n).map(|k| k as f64 * t.powi(k as i32 - 1)).collect();
    Slab {
        c0: xi * t.powi(n as i32),
        b0: n as f64 * xi * t.powi(n as i32 - 1),
        w,
        v,
    }
}

fn indicator_integrand(s: &Slab) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
    move |p: &[f64]| {
        let mut c = s.c0;
        let mut b = s.b0;
        for ((x, w), v) in p.iter().zip(&s.w).zip(&s.v) {
            c += w * x;
            b += v * x;
        }
        if c.abs() <= 1.0 {
            b.abs()
        } else {
            0.0
        }
    }
}

/// `phi_n(t)`. Closed form for `n = 1` and in the two series zones, the
/// semi-analytic quadrature otherwise.
pub fn phi(n: usize, t: f64, params: &DensityParams) -> DensityValue {
    assert!(n >= 1, "phi needs n >= 1");
    let a = t.abs();
    if n == 1 {
        return DensityValue::closed(1.0 / a.max(1.0).powi(2));
    }
    if a <= SERIES_LIMIT {
        return DensityValue::closed(phi_series(n, t));
    }
    if a >= RECIPROCAL_LIMIT {
        return DensityValue::closed(phi_series(n, 1.0 / t) / (t * t));
    }
    phi_quadrature(n, t, params)
}

/// `phi_n(t)` by the semi-analytic quadrature, bypassing the closed forms.
pub fn phi_quadrature(n: usize, t: f64, params: &DensityParams) -> DensityValue {
    assert!(n >= 1, "phi needs n >= 1");
    let (value, err) = phi_slab(n, t).integrate(params.grid);
    DensityValue { value, std_error: err, method: Method::NestedQuadrature }
}

/// Plain Monte Carlo estimate of `phi_n(t)`.
pub fn phi_mc(n: usize, t: f64, params: &DensityParams) -> DensityValue {
    assert!(n >= 1, "phi needs n >= 1");
    let s = phi_slab(n, t);
    let (value, err) = mc::cube_mean(n, params.mc_samples, params.seed, indicator_integrand(&s));
    DensityValue { value, std_error: err, method: Method::MonteCarlo }
}

/// `omega_n(xi, t)`; `xi = 0` is answered by `phi_{n-1}(t)`.
pub fn omega(n: usize, xi: f64, t: f64, params: &DensityParams) -> DensityValue {
    assert!(n >= 2, "omega needs n >= 2");
    assert!((0.0..=1.0).contains(&xi), "omega needs 0 <= xi <= 1");
    if xi == 0.0 {
        return phi(n - 1, t, params);
    }
    let (value, err) = omega_slab(n, xi, t).integrate(params.grid);
    DensityValue { value, std_error: err, method: Method::NestedQuadrature }
}

/// Plain Monte Carlo estimate of `omega_n(xi, t)`.
pub fn omega_mc(n: usize, xi: f64, t: f64, params: &DensityParams) -> DensityValue {
    assert!(n >= 2, "omega needs n >= 2");
    let s = omega_slab(n, xi, t);
    let (value, err) = mc::cube_mean(n - 1, params.mc_samples, params.seed, indicator_integrand(&s));
    DensityValue { value, std_error: err, method: Method::MonteCarlo }
}

/// Breakpoints of the closed form of `omega_2(xi, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Omega2Breakpoints {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub t5: f64,
}

impl Omega2Breakpoints {
    pub fn new(xi: f64) -> Result<Self> {
        check_omega2_xi(xi)?;
        let (p, m) = ((1.0 + 4.0 * xi).sqrt(), (1.0 - 4.0 * xi).sqrt());
        Ok(Omega2Breakpoints {
            t1: (p - 1.0) / (2.0 * xi),
            t2: (1.0 - m) / (2.0 * xi),
            t3: 1.0 / xi.sqrt(),
            t4: (1.0 + m) / (2.0 * xi),
            t5: (1.0 + p) / (2.0 * xi),
        })
    }
}

fn check_omega2_xi(xi: f64) -> Result<()> {
    if xi > 0.0 && xi <= 0.25 {
        Ok(())
    } else {
        Err(Error::invalid(format!("omega2 closed form needs 0 < xi <= 1/4, got {xi}")))
    }
}

/// Six-branch closed form of `omega_2(xi, t)` for `0 < xi <= 1/4`.
pub fn omega2_closed(xi: f64, t: f64) -> Result<DensityValue> {
    let bp = Omega2Breakpoints::new(xi)?;
    let a = t.abs();
    let (x2, t2) = (xi * xi, t * t);
    let v = if a <= bp.t1 {
        1.0 + 4.0 * x2 * t2
    } else if a <= bp.t2 {
        0.5 / t2 + 0.5 + xi * (1.0 - 2.0 * a) + 2.5 * x2 * t2
    } else if a <= bp.t3 {
        1.0 / t2 + x2 * t2
    } else if a <= bp.t4 {
        2.0 * xi
    } else if a <= bp.t5 {
        0.5 / t2 - 0.5 + xi * (1.0 + 2.0 * a) - 1.5 * x2 * t2
    } else {
        0.0
    };
    Ok(DensityValue::closed(v))
}

/// `delta_tilde_n(xi, t)`.
pub fn delta_tilde(n: usize, xi: f64, t: f64) -> f64 {
    assert!(n >= 2, "delta_tilde needs n >= 2");
    let c = 2f64.powi(n as i32 - 2);
    let a = t.abs();
    if a * a * xi <= 1.0 {
        c * xi * xi * t * t
    } else if a * xi <= 1.0 {
        c * (2.0 * xi - 1.0 / (t * t))
    } else {
        -c / (t * t)
    }
}

/// `∫_0^t delta_tilde_n(xi, u) du`, an odd function of `t`.
fn delta_tilde_primitive(n: usize, xi: f64, t: f64) -> f64 {
    let c = 2f64.powi(n as i32 - 2);
    let a = t.abs();
    let s = 1.0 / xi.sqrt();
    let big = 1.0 / xi;
    let v = if a <= s {
        xi * xi * a.powi(3) / 3.0
    } else {
        let at_s = xi * xi * s.powi(3) / 3.0;
        let u = a.min(big);
        let mid = at_s + 2.0 * xi * (u - s) + (1.0 / u - 1.0 / s);
        if a <= big {
            mid
        } else {
            mid + (1.0 / a - 1.0 / big)
        }
    };
    (c * v).copysign(t)
}

/// `∫_R delta_tilde_n(xi, t) dt = 2^n (1 - (4/3) xi^(1/2))`, exact.
pub fn integral_delta_tilde(n: usize, xi: f64) -> f64 {
    assert!(n >= 2, "delta_tilde needs n >= 2");
    2f64.powi(n as i32) * (1.0 - 4.0 / 3.0 * xi.sqrt())
}

/// `∫_0^t phi_1(u) du`.
fn phi1_primitive(t: f64) -> f64 {
    let a = t.abs();
    let v = if a <= 1.0 { a } else { 2.0 - 1.0 / a };
    v.copysign(t)
}

/// `∫_a^b phi_m(t) dt`.
pub fn phi_integral(m: usize, a: f64, b: f64, params: &DensityParams) -> f64 {
    if m == 1 {
        return phi1_primitive(b) - phi1_primitive(a);
    }
    let breaks = [
        -RECIPROCAL_LIMIT,
        -1.0,
        -SERIES_LIMIT,
        0.0,
        SERIES_LIMIT,
        1.0,
        RECIPROCAL_LIMIT,
    ];
    let scale = 2f64.powi(m as i32 - 1);
    let tol = if m == 2 { 1e-11 } else { 1e-8 } * scale * (b - a).abs().max(1.0);
    quad::integrate(&|t| phi(m, t, params).value, a, b, &breaks, tol)
}

/// Adaptive Gauss-Kronrod integral of `f` over `[a, b]`, splitting at `breaks`.
pub fn integrate_numeric<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    quad::integrate(f, a, b, breaks, tol)
}

/// Main-term prediction `Q^n ∫_I (phi_{n-1}(t) + delta_tilde_n(1/Q, t)) dt`.
pub fn predicted_count(n: usize, q: u64, iv: &RatInterval, params: &DensityParams) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("prediction needs degree >= 2"));
    }
    if q < 2 {
        return Err(Error::invalid("prediction needs height >= 2"));
    }
    let (a, b) = iv.to_f64_pair();
    let xi = 1.0 / q as f64;
    let d = delta_tilde_primitive(n, xi, b) - delta_tilde_primitive(n, xi, a);
    let p = phi_integral(n - 1, a, b, params);
    Ok((q as f64).powi(n as i32) * (p + d))
}

/// Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Measure of the set of polynomials `xi x^n + a_{n-1} x^{n-1} + ... + a_0`
/// with `a_i ∈ [-1, 1]` having at least two roots in `I`, by Monte Carlo.
pub fn close_roots_measure(n: usize, xi: f64, iv: &RatInterval, samples: u64, seed: u64) -> Estimate {
    assert!(n >= 2, "need degree >= 2");
    assert!(xi > 0.0 && xi <= 1.0, "need 0 < xi <= 1");
    let (a, b) = iv.to_f64_pair();
    let f = |p: &[f64]| {
        let mut c = p.to_vec();
        c.push(xi);
        if count_real_roots(&c, a, b) >= 2 {
            1.0
        } else {
            0.0
        }
    };
    let (value, std_error) = mc::cube_mean(n, samples, seed, f);
    Estimate { value, std_error }
}

/// Floating-point count of distinct real roots in `[a, b)` of the polynomial
/// with coefficients `c` (lowest first, nonzero leading coefficient).
pub(crate) fn count_real_roots(c: &[f64], a: f64, b: f64) -> usize {
    roots_in(c, a, b).into_iter().filter(|&r| r >= a && r < b).count()
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// Roots in `[a, b]`, increasing, found by bisection between consecutive
/// critical points.
fn roots_in(c: &[f64], a: f64, b: f64) -> Vec<f64> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = -c[0] / c[1];
        return if r >= a && r <= b { vec![r] } else { Vec::new() };
    }
    let dc: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, x)| k as f64 * x).collect();
    let mut pts = vec![a];
    pts.extend(roots_in(&dc, a, b).into_iter().filter(|&x| x > a && x < b));
    pts.push(b);
    let mut out: Vec<f64> = Vec::new();
    for w in pts.windows(2) {
        let (mut l, mut r) = (w[0], w[1]);
        let (fl, fr) = (horner(c, l), horner(c, r));
        if fl == 0.0 {
            if out.last() != Some(&l) {
                out.push(l);
            }
            continue;
        }
        if fl * fr < 0.0 {
            for _ in 0..200 {
                let m = 0.5 * (l + r);
                if m <= l || m >= r {
                    break;
                }
                let fm = horner(c, m);
                if fm == 0.0 {
                    l = m;
                    r = m;
                    break;
                }
                if (fm < 0.0) == (fl < 0.0) {
                    l = m;
                } else {
                    r = m;
                }
            }
            out.push(0.5 * (l + r));
        }
    }
    if horner(c, b) == 0.0 && out.last() != Some(&b) {
        out.push(b);
    }
    out
}
