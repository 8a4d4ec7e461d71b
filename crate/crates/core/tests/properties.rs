use std::collections::HashSet;

use algint_core::census::{self, CensusOptions};
use algint_core::density;
use algint_core::irreducible::{self, check_irreducible, is_irreducible};
use algint_core::poly::{self, jacobian_reference, MonicIntPoly};
use algint_core::roots::{self, SturmChain};
use algint_core::verify;
use algint_core::{Exec, Rat, RatInterval};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn monic(max_deg: usize, q: i64) -> impl Strategy<Value = MonicIntPoly> {
    (1..=max_deg)
        .prop_flat_map(move |n| prop::collection::vec(-q..=q, n))
        .prop_map(|c| MonicIntPoly::from_i64(&c).unwrap())
}

fn rat(range: i64, den: i64) -> impl Strategy<Value = Rat> {
    (-range * den..=range * den, 1..=den).prop_map(|(a, b)| Rat::new(a, b).unwrap())
}

/// Three increasing rationals.
fn three_points() -> impl Strategy<Value = (Rat, Rat, Rat)> {
    (rat(6, 8), rat(6, 8), rat(6, 8)).prop_filter_map("distinct", |(a, b, c)| {
        let mut v = [a, b, c];
        v.sort();
        (v[0] < v[1] && v[1] < v[2]).then(|| (v[0].clone(), v[1].clone(), v[2].clone()))
    })
}

/// Roots in `[lo, hi)` located by exact signs on a grid of step `1/4096`.
/// Sound for polynomials whose distinct roots are farther apart than the step.
fn sign_scan(p: &MonicIntPoly, lo: i64, hi: i64) -> usize {
    let steps = (hi - lo) * 4096;
    let sign = |k: i64| {
        let s = p.eval_scaled(&Rat::new(lo * 4096 + k, 4096).unwrap());
        if s.is_zero() {
            0
        } else if s.is_positive() {
            1
        } else {
            -1
        }
    };
    let mut count = 0;
    let mut prev = sign(0);
    count += usize::from(prev == 0);
    for k in 1..=steps {
        let s = sign(k);
        if k < steps && s == 0 {
            count += 1;
        }
        if s * prev < 0 {
            count += 1;
        }
        prev = s;
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_counts_are_additive(p in monic(6, 6), (a, b, c) in three_points()) {
        let ab = RatInterval::new(a.clone(), b.clone()).unwrap();
        let bc = RatInterval::new(b, c.clone()).unwrap();
        let ac = RatInterval::new(a, c).unwrap();
        let n = roots::count_roots_in(&p, &ab) + roots::count_roots_in(&p, &bc);
        prop_assert_eq!(n, roots::count_roots_in(&p, &ac));
        let chain = SturmChain::new(&p);
        prop_assert_eq!(chain.count_half_open(&ac), roots::count_roots_in(&p, &ac));
        prop_assert!(chain.count_real() <= p.degree());
    }

    #[test]
    fn sturm_matches_sign_scan(p in monic(3, 5), lo in -6i64..6, len in 1i64..5) {
        prop_assume!(p.degree() >= 2 && is_irreducible(&p));
        let iv = RatInterval::from_ints(lo, lo + len).unwrap();
        prop_assert_eq!(roots::count_roots_in(&p, &iv), sign_scan(&p, lo, lo + len));
    }

    #[test]
    fn isolating_boxes_hold_one_root_each(p in monic(5, 4)) {
        let eps = Rat::new(1, 1 << 12).unwrap();
        let boxes = roots::isolate_roots(&p, &eps);
        prop_assert_eq!(boxes.len(), SturmChain::new(&p).count_real());
        for w in boxes.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
        }
        for b in &boxes {
            prop_assert!(b.interval.width() <= eps);
            prop_assert_eq!(roots::count_roots_in(&p, &b.interval), 1);
        }
    }

    #[test]
    fn witnesses_are_sound(p in monic(4, 3)) {
        match check_irreducible(&p).witness() {
            Some(w) => {
                prop_assert!(w.reproduces(&p));
                prop_assert!(w.left.degree() >= 1 && w.right.degree() >= 1);
            }
            None => prop_assert!(!has_small_factor(&p)),
        }
    }

    #[test]
    fn jacobian_identity_holds(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = verify::random_root_pair_input(&mut rng);
        let fd = verify::jacobian_finite_difference(&x, 1e-6);
        let exact = jacobian_reference(&x);
        prop_assert!((fd - exact).abs() <= 1e-5 * exact.abs(), "{fd} vs {exact} at {x:?}");
    }

    #[test]
    fn census_bins_refine_and_mirror(n in 2usize..=3, q in 1u64..=4, (a, _, c) in three_points(), bins in 1usize..4) {
        let iv = RatInterval::new(a, c).unwrap();
        let e = Exec::default();
        let opts = CensusOptions::counts_only();
        let coarse = census::census(n, q, &iv, bins, &opts, &e).unwrap();
        let fine = census::census(n, q, &iv, 2 * bins, &opts, &e).unwrap();
        prop_assert_eq!(coarse.total, fine.total);
        prop_assert_eq!(coarse.roots_outside_bound, 0);
        // no rational roots, so [a, c) and (-c, -a] hold the same count
        prop_assert_eq!(coarse.total, census::omega(n, q, &iv.mirrored(), &e).unwrap());
    }

    #[test]
    fn delta_tilde_is_even(n in 2usize..6, xi in 1e-4f64..=1.0, t in -500.0f64..500.0) {
        prop_assert_eq!(density::delta_tilde(n, xi, t), density::delta_tilde(n, xi, -t));
    }

    #[test]
    fn omega2_closed_is_even_and_nonnegative(xi in 1e-3f64..=0.25, t in -1000.0f64..1000.0) {
        let a = density::omega2_closed(xi, t).unwrap().value;
        prop_assert_eq!(a, density::omega2_closed(xi, -t).unwrap().value);
        prop_assert!(a >= -1e-12);
    }
}

/// Brute force: an integer root, or a monic quadratic factor with small coefficients.
fn has_small_factor(p: &MonicIntPoly) -> bool {
    if p.degree() == 1 {
        return false;
    }
    let full = p.full_coeffs();
    let b0 = full[0].clone();
    if b0.is_zero() {
        return true;
    }
    let lim: i64 = 40;
    for r in -lim..=lim {
        if p.eval_scaled(&Rat::integer(r)).is_zero() {
            return true;
        }
    }
    if p.degree() < 4 {
        return false;
    }
    for b in -14i64..=14 {
        for c in -14i64..=14 {
            if c == 0 {
                continue;
            }
            // long division of p by x^2 + bx + c
            let mut r: Vec<BigInt> = full.clone();
            for k in (2..r.len()).rev() {
                let lead = r[k].clone();
                r[k - 1] -= &lead * b;
                r[k - 2] -= &lead * c;
                r[k] = BigInt::zero();
            }
            if r[0].is_zero() && r[1].is_zero() {
                return true;
            }
        }
    }
    false
}

#[test]
fn enumeration_is_complete_and_distinct() {
    for (n, q) in [(1, 4), (2, 3), (3, 2), (4, 1)] {
        let all: Vec<MonicIntPoly> = poly::enumerate_monic(n, q).unwrap().collect();
        assert_eq!(all.len() as u128, poly::box_size(n, q));
        let distinct: HashSet<_> = all.iter().map(|p| p.coeffs().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|p| p.degree() == n && p.height() <= BigInt::from(q.max(1))));
    }
}

#[test]
fn counts_grow_with_height() {
    let e = Exec::default();
    let iv = RatInterval::from_ints(-3, 3).unwrap();
    let mut last = (0, 0);
    for q in 1..=12 {
        let r = irreducible::count_reducible(2, q, &e).unwrap().count;
        let w = census::omega(2, q, &iv, &e).unwrap();
        assert!(r >= last.0 && w >= last.1, "Q={q}");
        last = (r, w);
    }
    let mut prev = 0;
    for q in 1..=5 {
        let r = irreducible::count_reducible(3, q, &e).unwrap().count;
        assert!(r >= prev);
        prev = r;
    }
}

#[test]
fn gap_radius_example() {
    let e = Exec::default();
    let r = census::verify_gap(2, 50, 1, &RatInterval::from_ints(0, 1).unwrap(), &e).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.entries[0].radius, Rat::new(1, 150).unwrap());
    assert!(r.pass());
}
