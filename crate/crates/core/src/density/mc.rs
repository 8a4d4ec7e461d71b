//! Reproducible Monte Carlo over the cube `[-1, 1]^d`.
//!
//! Samples are split into fixed-size chunks; chunk `k` draws from the ChaCha
//! stream `k` of the seed, so the estimate does not depend on how chunks are
//! scheduled across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CHUNK: u64 = 1 << 14;

/// Mean and standard error of `f` over `samples` uniform points of `[-1,1]^d`,
/// scaled by the cube volume `2^d`.
pub(crate) fn cube_mean<F>(d: usize, samples: u64, seed: u64, f: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    assert!(samples > 1, "need at least two samples");
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let len = CHUNK.min(samples - k * CHUNK);
            let mut p = vec![0.0; d];
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..len {
                for x in p.iter_mut() {
                    *x = rng.gen_range(-1.0..=1.0);
                }
                let y = f(&p);
                s1 += y;
                s2 += y * y;
            }
            (s1, s2)
        })
        .collect();
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = s1 / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    let vol = 2f64.powi(d as i32);
    (vol * mean, vol * (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_roughly_right() {
        let f = |p: &[f64]| p[0].abs();
        let a = cube_mean(2, 50_000, 7, f);
        let b = cube_mean(2, 50_000, 7, f);
        assert_eq!(a, b);
        // ∫∫ |x| over [-1,1]^2 = 2
        assert!((a.0 - 2.0).abs() < 4.0 * a.1);
    }

    #[test]
    fn independent_of_pool_size() {
        let f = |p: &[f64]| p[0] * p[1] + 1.0;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = pool.install(|| cube_mean(2, 100_000, 11, f));
        let b = cube_mean(2, 100_000, 11, f);
        assert_eq!(a, b);
    }
}
