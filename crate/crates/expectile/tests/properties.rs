//! Property suites for the loss, solvers, and risk bounds.
//!
//! The randomized suites are seeded, so failures reproduce exactly.  The
//! solver checks compare against independent oracles (golden-section search
//! over the empirical risk, finite differences for the derivative) rather
//! than against the implementation's own fixed-point machinery.

use enn_expectile::{
    als_loss, als_loss_dt, dist_expectile, empirical_expectile, excess_risk_bounds,
    l2_distance_bounds, DiscreteDist, ExpectileLevel, FinitePXY,
};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn level(tau: f64) -> ExpectileLevel {
    ExpectileLevel::new(tau).unwrap()
}

const TAU_GRID: [f64; 7] = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99];

fn random_dist(rng: &mut ChaCha8Rng) -> DiscreteDist {
    let n = rng.random_range(1..=10usize);
    let support: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let probs: Vec<f64> = raw.iter().map(|u| u / total).collect();
    DiscreteDist::new(support, probs).expect("random distribution is valid")
}

fn random_joint(rng: &mut ChaCha8Rng) -> FinitePXY {
    let m = rng.random_range(1..=5usize);
    let x_points: Vec<Vec<f64>> = (0..m).map(|k| vec![k as f64]).collect();
    let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let x_probs: Vec<f64> = raw.iter().map(|u| u / total).collect();
    let cond: Vec<DiscreteDist> = (0..m).map(|_| random_dist(rng)).collect();
    FinitePXY::new(x_points, x_probs, cond).expect("random joint is valid")
}

/// Empirical inner risk difference `R(a) - R(b)` evaluated term-by-term so
/// the result keeps full precision even when `a` and `b` are very close.
/// Naively comparing `R(a)` with `R(b)` loses the signal to rounding once
/// the golden-section bracket shrinks below ~1e-7.
fn risk_diff(samples: &[f64], tau: f64, a: f64, b: f64) -> f64 {
    let mut acc = 0.0;
    for &y in samples {
        let wa = if y < a { 1.0 - tau } else { tau };
        let wb = if y < b { 1.0 - tau } else { tau };
        if wa == wb {
            // w[(y-a)^2 - (y-b)^2] = w (b-a)((y-a) + (y-b))
            acc += wa * (b - a) * ((y - a) + (y - b));
        } else {
            acc += wa * (y - a) * (y - a) - wb * (y - b) * (y - b);
        }
    }
    acc
}

/// Golden-section search for the minimizer of the empirical inner risk.
fn golden_section_argmin(samples: &[f64], tau: f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    while (b - a).abs() > tol {
        if risk_diff(samples, tau, c, d) < 0.0 {
            b = d;
            d = c;
            c = b - inv_phi * (b - a);
        } else {
            a = c;
            c = d;
            d = a + inv_phi * (b - a);
        }
    }
    (a + b) / 2.0
}

#[test]
fn pointwise_sandwich_holds_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for case in 0..1000 {
        let dist = random_dist(&mut rng);
        let t = rng.random_range(-10.0..10.0);
        let tau = TAU_GRID[case % TAU_GRID.len()];
        let b = excess_risk_bounds(&dist, t, level(tau));
        assert!(
            b.holds,
            "sandwich violated: case {case}, tau {tau}, t {t}, bounds {b:?}, dist {dist:?}"
        );
        assert!(b.excess >= -1e-9, "negative excess at the minimizer: {b:?}");
    }
}

#[test]
fn integrated_sandwich_holds_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for case in 0..500 {
        let joint = random_joint(&mut rng);
        let f: Vec<f64> = (0..joint.len())
            .map(|_| rng.random_range(-6.0..6.0))
            .collect();
        let tau = TAU_GRID[case % TAU_GRID.len()];
        let b = l2_distance_bounds(&joint, &f, level(tau)).unwrap();
        assert!(
            b.holds,
            "integrated sandwich violated: case {case}, tau {tau}, bounds {b:?}"
        );
    }
}

#[test]
fn integrated_sandwich_is_tight_at_half() {
    // At tau = 0.5 the two constants coincide, so lhs = l2 = rhs.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..100 {
        let joint = random_joint(&mut rng);
        let f: Vec<f64> = (0..joint.len())
            .map(|_| rng.random_range(-6.0..6.0))
            .collect();
        let b = l2_distance_bounds(&joint, &f, level(0.5)).unwrap();
        assert!((b.lhs - b.l2_dist).abs() <= 1e-8, "lhs != l2: {b:?}");
        assert!((b.rhs - b.l2_dist).abs() <= 1e-8, "rhs != l2: {b:?}");
    }
}

#[test]
fn loss_derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let h = 1e-5;
    let mut checked = 0usize;
    while checked < 1000 {
        let y: f64 = rng.random_range(-5.0..5.0);
        let t: f64 = rng.random_range(-5.0..5.0);
        // The loss is C^1 but not C^2 at t = y; keep the stencil away from
        // the kink.
        if (t - y).abs() < 1e-4 {
            continue;
        }
        let tau = TAU_GRID[checked % TAU_GRID.len()];
        let lv = level(tau);
        let fd = (als_loss(y, t + h, lv) - als_loss(y, t - h, lv)) / (2.0 * h);
        let analytic = als_loss_dt(y, t, lv);
        let rel = (fd - analytic).abs() / analytic.abs().max(1.0);
        assert!(
            rel < 1e-6,
            "derivative mismatch: y {y}, t {t}, tau {tau}, fd {fd}, analytic {analytic}"
        );
        checked += 1;
    }
}

#[test]
fn empirical_expectile_matches_golden_section_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for case in 0..200 {
        let n = rng.random_range(1..=40usize);
        let samples: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let tau = TAU_GRID[case % TAU_GRID.len()];
        let lv = level(tau);
        let t_fp = empirical_expectile(&samples, lv).unwrap();
        let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0;
        let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0;
        let t_gs = golden_section_argmin(&samples, tau, lo, hi, 1e-10);
        assert!(
            (t_fp - t_gs).abs() < 1e-8,
            "solver vs golden section: case {case}, tau {tau}, fp {t_fp}, gs {t_gs}"
        );
    }
}

#[test]
fn expectile_is_monotone_in_tau_with_min_max_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..50 {
        let n = rng.random_range(2..=50usize);
        let samples: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let mut prev = f64::NEG_INFINITY;
        for tau in [0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999] {
            let e = empirical_expectile(&samples, level(tau)).unwrap();
            assert!(
                e >= prev - 1e-9,
                "expectile not monotone in tau: tau {tau}, prev {prev}, e {e}"
            );
            prev = e;
        }
        let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let near_min = empirical_expectile(&samples, level(1e-6)).unwrap();
        let near_max = empirical_expectile(&samples, level(1.0 - 1e-6)).unwrap();
        assert!(
            (near_min - lo).abs() < 1e-3,
            "tau -> 0 limit: expectile {near_min}, min {lo}"
        );
        assert!(
            (near_max - hi).abs() < 1e-3,
            "tau -> 1 limit: expectile {near_max}, max {hi}"
        );
    }
}

#[test]
fn expectile_is_translation_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for _ in 0..100 {
        let dist = random_dist(&mut rng);
        let c = rng.random_range(-10.0..10.0);
        let shifted = dist.shifted(c).unwrap();
        for tau in [0.1, 0.5, 0.9] {
            let e = dist_expectile(&dist, level(tau));
            let e_shift = dist_expectile(&shifted, level(tau));
            assert!(
                (e_shift - (e + c)).abs() < 1e-10,
                "translation: tau {tau}, c {c}, e {e}, shifted {e_shift}"
            );
        }
    }
}

#[test]
fn dist_expectile_zeros_the_risk_derivative() {
    // First-order condition: E[d/dt L_tau(Y, t)] = 0 at the expectile.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for case in 0..200 {
        let dist = random_dist(&mut rng);
        let tau = TAU_GRID[case % TAU_GRID.len()];
        let lv = level(tau);
        let t = dist_expectile(&dist, lv);
        let grad: f64 = dist
            .support()
            .iter()
            .zip(dist.probs())
            .map(|(&y, &p)| p * als_loss_dt(y, t, lv))
            .sum();
        assert!(
            grad.abs() < 1e-8,
            "nonzero risk derivative at the expectile: case {case}, tau {tau}, grad {grad}"
        );
    }
}

proptest! {
    #[test]
    fn loss_is_nonnegative_and_zero_only_on_the_diagonal(
        y in -1e6..1e6f64,
        t in -1e6..1e6f64,
        tau in 0.01..0.99f64,
    ) {
        let lv = level(tau);
        let l = als_loss(y, t, lv);
        prop_assert!(l >= 0.0);
        prop_assert_eq!(als_loss(y, y, lv), 0.0);
        if (y - t).abs() > 1e-6 {
            prop_assert!(l > 0.0);
        }
    }

    #[test]
    fn half_loss_is_half_the_square(y in -1e3..1e3f64, t in -1e3..1e3f64) {
        let r = y - t;
        prop_assert_eq!(als_loss(y, t, level(0.5)), 0.5 * r * r);
    }

    #[test]
    fn loss_has_reflection_symmetry(
        y in -1e3..1e3f64,
        t in -1e3..1e3f64,
        tau in 0.01..0.99f64,
    ) {
        let a = als_loss(y, t, level(tau));
        let b = als_loss(-y, -t, level(1.0 - tau));
        let scale = a.abs().max(1.0);
        prop_assert!((a - b).abs() <= 1e-12 * scale, "a {} b {}", a, b);
    }
}
