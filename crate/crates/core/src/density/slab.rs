//! Integrals of the form
//!
//! ```text
//! I = ∫_{[-1,1]^d ∩ {|c0 + w·p| <= 1}} |b0 + v·p| dp
//! ```
//!
//! which cover both `phi_n` and `omega_n`. The last coordinate is integrated
//! in closed form, the second-to-last exactly by Simpson's rule on the pieces
//! where the result is quadratic, and any remaining coordinates by a tensor
//! midpoint grid.

#[derive(Clone, Debug)]
pub(crate) struct Slab {
    pub c0: f64,
    pub b0: f64,
    pub w: Vec<f64>,
    pub v: Vec<f64>,
}

/// `∫ |u| du` over `[a, b]` for `a <= b`.
fn abs_integral(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        0.5 * (b * b - a * a)
    } else if b <= 0.0 {
        0.5 * (a * a - b * b)
    } else {
        0.5 * (a * a + b * b)
    }
}

/// Range of `s` in `[-1, 1]` with `|c + ws s| <= 1`, if nonempty.
fn s_range(c: f64, ws: f64) -> Option<(f64, f64)> {
    if ws == 0.0 {
        return (c.abs() <= 1.0).then_some((-1.0, 1.0));
    }
    let (r1, r2) = ((-1.0 - c) / ws, (1.0 - c) / ws);
    let (lo, hi) = (r1.min(r2).max(-1.0), r1.max(r2).min(1.0));
    (lo < hi).then_some((lo, hi))
}

/// Innermost integral over the last coordinate.
fn inner(c: f64, b: f64, ws: f64, vs: f64) -> f64 {
    let Some((lo, hi)) = s_range(c, ws) else {
        return 0.0;
    };
    if vs == 0.0 {
        return b.abs() * (hi - lo);
    }
    let (a1, a2) = (b + vs * lo, b + vs * hi);
    abs_integral(a1.min(a2), a1.max(a2)) / vs.abs()
}

/// Integral over the last two coordinates `(x, s)` with everything else fixed
/// into the constants `c` and `b`.
fn inner2(c: f64, b: f64, wx: f64, vx: f64, ws: f64, vs: f64) -> f64 {
    let mut cuts: Vec<f64> = Vec::with_capacity(16);
    let mut push = |x: f64| {
        if x.is_finite() && x > -1.0 && x < 1.0 {
            cuts.push(x);
        }
    };
    if wx != 0.0 {
        for e in [1.0, -1.0] {
            for f in [ws, -ws] {
                push((e + f - c) / wx);
            }
        }
    }
    if vx != 0.0 {
        push(-b / vx);
        for f in [vs, -vs] {
            push((-b + f) / vx);
        }
    }
    if ws != 0.0 {
        let den = vx * ws - vs * wx;
        if den != 0.0 {
            for e in [1.0, -1.0] {
                push(-(b * ws + vs * (e - c)) / den);
            }
        }
    }
    cuts.push(-1.0);
    cuts.push(1.0);
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let g = |x: f64| inner(c + wx * x, b + vx * x, ws, vs);
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        let (l, r) = (pair[0], pair[1]);
        if r > l {
            let m = 0.5 * (l + r);
            total += (r - l) / 6.0 * (g(l) + 4.0 * g(m) + g(r));
        }
    }
    total
}

impl Slab {
    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// Whether the whole region is empty: `|c0 + w·p| > 1` on the cube.
    pub fn is_empty(&self) -> bool {
        let reach: f64 = self.w.iter().map(|x| x.abs()).sum();
        self.c0.abs() - reach > 1.0
    }

    /// Integral with `m` midpoint nodes per outer axis.
    fn midpoint(&self, m: usize) -> f64 {
        let d = self.dim();
        match d {
            0 => {
                if self.c0.abs() <= 1.0 {
                    self.b0.abs()
                } else {
                    0.0
                }
            }
            1 => inner(self.c0, self.b0, self.w[0], self.v[0]),
            _ => {
                let outer = d - 2;
                let (wx, vx, ws, vs) = (self.w[d - 2], self.v[d - 2], self.w[d - 1], self.v[d - 1]);
                if outer == 0 {
                    return inner2(self.c0, self.b0, wx, vx, ws, vs);
                }
                let h = 2.0 / m as f64;
                let nodes: Vec<f64> = (0..m).map(|i| -1.0 + (i as f64 + 0.5) * h).collect();
                let mut idx = vec![0usize; outer];
                let mut total = 0.0;
                loop {
                    let mut c = self.c0;
                    let mut b = self.b0;
                    for (k, &i) in idx.iter().enumerate() {
                        c += self.w[k] * nodes[i];
                        b += self.v[k] * nodes[i];
                    }
                    total += inner2(c, b, wx, vx, ws, vs);
                    let mut k = 0;
                    loop {
                        if k == outer {
                            return total * h.powi(outer as i32);
                        }
                        idx[k] += 1;
                        if idx[k] < m {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
        }
    }

    /// Value and error estimate. Exact up to rounding for `d <= 2`; otherwise
    /// the error is the gap to the half-resolution grid.
    pub fn integrate(&self, grid: usize) -> (f64, f64) {
        if self.is_empty() {
            return (0.0, 0.0);
        }
        let fine = self.midpoint(grid);
        let scale = self.v.iter().map(|x| x.abs()).sum::<f64>() + self.b0.abs();
        let rounding = 1e-13 * (fine.abs() + scale * 2f64.powi(self.dim() as i32));
        if self.dim() <= 2 {
            return (fine, rounding);
        }
        let coarse = self.midpoint((grid / 2).max(1));
        (fine, (fine - coarse).abs() + rounding)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_square() {
        // ∫∫ |x + s| over [-1,1]^2 = 8/3
        let s = Slab { c0: 0.0, b0: 0.0, w: vec![0.0, 0.0], v: vec![1.0, 1.0] };
        assert!((s.integrate(8).0 - 8.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn half_plane_cut() {
        // area of the strip |x + s| <= 1 inside the square
        let s = Slab { c0: 0.0, b0: 1.0, w: vec![1.0, 1.0], v: vec![0.0, 0.0] };
        assert!((s.integrate(8).0 - 3.0).abs() < 1e-14);
    }

    #[test]
    fn cube_grid_converges() {
        // ∫ |x + y + s| over [-1,1]^3 against a much finer grid
        let s = Slab { c0: 0.0, b0: 0.0, w: vec![0.0; 3], v: vec![1.0, 1.0, 1.0] };
        let (a, e) = s.integrate(64);
        let (b, _) = s.integrate(512);
        assert!((a - b).abs() <= e);
    }
}
