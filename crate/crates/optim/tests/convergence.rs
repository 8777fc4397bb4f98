use enn_optim::{
    bfgs_minimize, multi_start, multi_start_masked, FnObjective, Objective, OptimError,
    OptimOptions,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every accepted step strictly decreases the objective, so the trace must
/// be nonincreasing with no tolerance.
fn assert_nonincreasing(trace: &[f64]) {
    for w in trace.windows(2) {
        assert!(w[1] <= w[0], "trace increased: {} -> {}", w[0], w[1]);
    }
}

/// f(x) = 0.5 x'Ax - b'x with A symmetric positive definite, so the unique
/// minimizer solves Ax = b.
struct Quadratic {
    a: Vec<f64>,
    b: Vec<f64>,
    d: usize,
}

impl Quadratic {
    /// A = I + M'M/d with M uniform in [-1, 1]; eigenvalues sit in roughly
    /// [1, 2.5], so the problem is well conditioned at every dimension.
    fn random(d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut a = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0.0;
                for k in 0..d {
                    acc += m[k * d + i] * m[k * d + j];
                }
                a[i * d + j] = acc / d as f64 + if i == j { 1.0 } else { 0.0 };
            }
        }
        let b = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        Self { a, b, d }
    }

    /// Solves A m = b by Gaussian elimination with partial pivoting; this is
    /// the reference minimizer, independent of the optimizer under test.
    fn direct_minimizer(&self) -> Vec<f64> {
        let d = self.d;
        let mut aug = vec![0.0; d * (d + 1)];
        for i in 0..d {
            for j in 0..d {
                aug[i * (d + 1) + j] = self.a[i * d + j];
            }
            aug[i * (d + 1) + d] = self.b[i];
        }
        for col in 0..d {
            let pivot = (col..d)
                .max_by(|&r, &s| {
                    aug[r * (d + 1) + col]
                        .abs()
                        .total_cmp(&aug[s * (d + 1) + col].abs())
                })
                .unwrap();
            if pivot != col {
                for j in 0..=d {
                    aug.swap(col * (d + 1) + j, pivot * (d + 1) + j);
                }
            }
            let diag = aug[col * (d + 1) + col];
            assert!(diag.abs() > 1e-12, "singular system in test oracle");
            for row in col + 1..d {
                let factor = aug[row * (d + 1) + col] / diag;
                for j in col..=d {
                    aug[row * (d + 1) + j] -= factor * aug[col * (d + 1) + j];
                }
            }
        }
        let mut x = vec![0.0; d];
        for row in (0..d).rev() {
            let mut acc = aug[row * (d + 1) + d];
            for j in row + 1..d {
                acc -= aug[row * (d + 1) + j] * x[j];
            }
            x[row] = acc / aug[row * (d + 1) + row];
        }
        x
    }
}

impl Objective for Quadratic {
    fn dim(&self) -> usize {
        self.d
    }

    fn value_grad(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let d = self.d;
        let mut f = 0.0;
        for i in 0..d {
            let mut ax = 0.0;
            for j in 0..d {
                ax += self.a[i * d + j] * x[j];
            }
            grad[i] = ax - self.b[i];
            f += 0.5 * x[i] * ax - self.b[i] * x[i];
        }
        f
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[test]
fn one_dimensional_quadratic() {
    let obj = FnObjective::new(1, |x: &[f64], g: &mut [f64]| {
        g[0] = 2.0 * (x[0] - 3.0);
        (x[0] - 3.0) * (x[0] - 3.0)
    });
    let opts = OptimOptions {
        grad_tol: 1e-9,
        rel_obj_tol: 0.0,
        ..OptimOptions::default()
    };
    let res = bfgs_minimize(&obj, &[0.0], &opts).unwrap();
    assert!(res.converged);
    assert!((res.x_final[0] - 3.0).abs() <= 1e-8, "x = {}", res.x_final[0]);
    assert!(res.grad_norm_final < 1e-9);
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn five_dimensional_quadratic_matches_direct_solve() {
    let obj = Quadratic::random(5, 42);
    let truth = obj.direct_minimizer();
    let opts = OptimOptions {
        grad_tol: 1e-8,
        rel_obj_tol: 0.0,
        ..OptimOptions::default()
    };
    let res = bfgs_minimize(&obj, &[0.0; 5], &opts).unwrap();
    assert!(res.converged);
    assert!(res.iterations <= 20, "took {} iterations", res.iterations);
    assert!(
        dist(&res.x_final, &truth) <= 1e-6,
        "distance to direct solve = {:e}",
        dist(&res.x_final, &truth)
    );
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn starting_at_the_optimum_stops_immediately() {
    let obj = Quadratic::random(4, 7);
    let truth = obj.direct_minimizer();
    let res = bfgs_minimize(&obj, &truth, &OptimOptions::default()).unwrap();
    assert!(res.converged);
    assert_eq!(res.iterations, 0);
    assert_eq!(res.f_trace.len(), 1);
}

#[test]
fn random_quadratics_converge_fast_at_every_dimension() {
    for d in 1..=50 {
        let obj = Quadratic::random(d, 1000 + d as u64);
        let opts = OptimOptions {
            max_iters: d + 10,
            grad_tol: 1e-6,
            rel_obj_tol: 0.0,
            ..OptimOptions::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + d as u64);
        let x0: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let res = bfgs_minimize(&obj, &x0, &opts).unwrap();
        assert!(
            res.converged && res.grad_norm_final < 1e-6,
            "dim {d}: grad norm {} after {} iterations",
            res.grad_norm_final,
            res.iterations
        );
        assert!(res.iterations <= d + 10);
        assert_nonincreasing(&res.f_trace);
    }
}

/// f(x) = (x^2 - 1/4)^2 + x/10 has two basins; the linear tilt makes the
/// left one global.  A dense grid scan is the reference minimizer.
fn two_basin(x: &[f64], g: &mut [f64]) -> f64 {
    let v = x[0] * x[0] - 0.25;
    g[0] = 4.0 * x[0] * v + 0.1;
    v * v + 0.1 * x[0]
}

fn two_basin_grid_minimum() -> f64 {
    let mut best_x = -2.0;
    let mut best_f = f64::INFINITY;
    let n = 400_000;
    for i in 0..=n {
        let x = -2.0 + 4.0 * i as f64 / n as f64;
        let v = x * x - 0.25;
        let f = v * v + 0.1 * x;
        if f < best_f {
            best_f = f;
            best_x = x;
        }
    }
    best_x
}

#[test]
fn multi_start_finds_the_global_basin() {
    let obj = FnObjective::new(1, two_basin);
    let truth = two_basin_grid_minimum();
    let mut hits = 0;
    for seed in 0..100 {
        let opts = OptimOptions {
            n_starts: 20,
            grad_tol: 1e-8,
            rel_obj_tol: 0.0,
            seed,
            ..OptimOptions::default()
        };
        let res = multi_start(&obj, 1, &opts).unwrap();
        assert_nonincreasing(&res.f_trace);
        if (res.x_final[0] - truth).abs() < 1e-3 {
            hits += 1;
        }
    }
    assert!(hits >= 95, "only {hits}/100 runs reached the global minimum");
}

#[test]
fn repeated_runs_are_bit_identical() {
    let obj = Quadratic::random(8, 99);
    let opts = OptimOptions {
        n_starts: 6,
        seed: 31,
        ..OptimOptions::default()
    };
    let r1 = multi_start(&obj, 8, &opts).unwrap();
    let r2 = multi_start(&obj, 8, &opts).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(r1.f_final.to_bits(), r2.f_final.to_bits());
    for (a, b) in r1.x_final.iter().zip(&r2.x_final) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    for (a, b) in r1.f_trace.iter().zip(&r2.f_trace) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn single_start_equals_plain_bfgs_from_the_drawn_point() {
    let obj = Quadratic::random(6, 5);
    let opts = OptimOptions {
        n_starts: 1,
        seed: 123,
        ..OptimOptions::default()
    };
    let via_multi = multi_start(&obj, 6, &opts).unwrap();
    // Reproduce the single draw with the same generator protocol.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draw: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let direct = bfgs_minimize(&obj, &draw, &opts).unwrap();
    assert_eq!(via_multi, direct);
}

/// A coupled quadratic whose gradient is forced to zero on a fixed set of
/// coordinates: those coordinates must stay exactly 0.0 through the whole
/// optimization, bit for bit.
#[test]
fn masked_coordinates_stay_exactly_zero() {
    let base = Quadratic::random(6, 11);
    let masked = [1usize, 4usize];
    let obj = FnObjective::new(6, |x: &[f64], g: &mut [f64]| {
        let f = base.value_grad(x, g);
        for &i in &masked {
            g[i] = 0.0;
        }
        f
    });

    let opts = OptimOptions {
        n_starts: 4,
        grad_tol: 1e-9,
        rel_obj_tol: 0.0,
        seed: 9,
        ..OptimOptions::default()
    };
    let res = multi_start_masked(&obj, 6, &masked, &opts).unwrap();
    assert!(res.converged);
    for &i in &masked {
        assert_eq!(res.x_final[i].to_bits(), 0.0f64.to_bits());
    }

    let mut x0 = vec![0.3, 0.0, -0.7, 0.2, 0.0, 0.9];
    x0[1] = 0.0;
    let res = bfgs_minimize(&obj, &x0, &opts).unwrap();
    for &i in &masked {
        assert_eq!(res.x_final[i].to_bits(), 0.0f64.to_bits());
    }
}

#[test]
fn unbounded_descent_reports_line_search_failure() {
    let obj = FnObjective::new(2, |x: &[f64], g: &mut [f64]| {
        g[0] = -1.0;
        g[1] = -1.0;
        -x[0] - x[1]
    });
    let res = bfgs_minimize(&obj, &[0.0, 0.0], &OptimOptions::default()).unwrap();
    assert!(!res.converged);
    assert!(res.f_final < 0.0);
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn nan_objective_is_an_error() {
    let obj = FnObjective::new(1, |_x: &[f64], g: &mut [f64]| {
        g[0] = 0.0;
        f64::NAN
    });
    let err = bfgs_minimize(&obj, &[0.0], &OptimOptions::default()).unwrap_err();
    assert!(matches!(err, OptimError::NonFinite { .. }));

    // NaN appearing mid-run (not at the start) is also fatal.
    let obj = FnObjective::new(1, |x: &[f64], g: &mut [f64]| {
        if x[0] > 10.0 {
            g[0] = f64::NAN;
            f64::NAN
        } else {
            g[0] = -1.0;
            -x[0]
        }
    });
    let err = bfgs_minimize(&obj, &[0.0], &OptimOptions::default()).unwrap_err();
    assert!(matches!(err, OptimError::NonFinite { iteration: 1, .. }));
}

/// An infinite value is not fatal: the line search treats the region as
/// unacceptable and shrinks back into the finite basin.
#[test]
fn infinite_wall_shrinks_the_step() {
    let obj = FnObjective::new(1, |x: &[f64], g: &mut [f64]| {
        if x[0].abs() > 2.0 {
            g[0] = 0.0;
            f64::INFINITY
        } else {
            g[0] = 2.0 * (x[0] - 1.5);
            (x[0] - 1.5) * (x[0] - 1.5)
        }
    });
    let opts = OptimOptions {
        grad_tol: 1e-8,
        rel_obj_tol: 0.0,
        ..OptimOptions::default()
    };
    let res = bfgs_minimize(&obj, &[0.0], &opts).unwrap();
    assert!(res.converged);
    assert!((res.x_final[0] - 1.5).abs() <= 1e-6);
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn relative_objective_stop_counts_as_convergence() {
    let obj = Quadratic::random(3, 17);
    // grad_tol = 0 can never fire, so any convergence report must come from
    // the relative-decrease rule.
    let opts = OptimOptions {
        grad_tol: 0.0,
        rel_obj_tol: 1e-6,
        ..OptimOptions::default()
    };
    let res = bfgs_minimize(&obj, &[0.0; 3], &opts).unwrap();
    assert!(res.converged);
    assert!(res.iterations < opts.max_iters);
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn hitting_the_iteration_cap_is_not_convergence() {
    let obj = Quadratic::random(10, 23);
    let opts = OptimOptions {
        max_iters: 2,
        grad_tol: 0.0,
        rel_obj_tol: 0.0,
        ..OptimOptions::default()
    };
    let res = bfgs_minimize(&obj, &vec![0.5; 10], &opts).unwrap();
    assert!(!res.converged);
    assert_eq!(res.iterations, 2);
    assert_nonincreasing(&res.f_trace);
}

#[test]
fn input_validation() {
    let obj = Quadratic::random(3, 1);
    assert!(matches!(
        bfgs_minimize(&obj, &[0.0; 2], &OptimOptions::default()),
        Err(OptimError::InvalidStart(_))
    ));
    assert!(matches!(
        bfgs_minimize(&obj, &[0.0, f64::NAN, 0.0], &OptimOptions::default()),
        Err(OptimError::InvalidStart(_))
    ));
    assert!(matches!(
        multi_start(&obj, 4, &OptimOptions::default()),
        Err(OptimError::InvalidStart(_))
    ));
    assert!(matches!(
        multi_start_masked(&obj, 3, &[3], &OptimOptions::default()),
        Err(OptimError::InvalidStart(_))
    ));
    let bad = OptimOptions {
        wolfe_c1: 0.99,
        ..OptimOptions::default()
    };
    assert!(matches!(
        bfgs_minimize(&obj, &[0.0; 3], &bad),
        Err(OptimError::InvalidOptions(_))
    ));
}

#[test]
fn warmup_ranking_skips_failing_starts() {
    // The objective is NaN on half the space, so some draws fail their
    // warmup; the run must still succeed from a clean draw.
    let obj = FnObjective::new(1, |x: &[f64], g: &mut [f64]| {
        if x[0] < 0.0 {
            g[0] = f64::NAN;
            f64::NAN
        } else {
            g[0] = 2.0 * (x[0] - 0.5);
            (x[0] - 0.5) * (x[0] - 0.5)
        }
    });
    let opts = OptimOptions {
        n_starts: 12,
        grad_tol: 1e-9,
        rel_obj_tol: 0.0,
        seed: 2,
        ..OptimOptions::default()
    };
    let res = multi_start(&obj, 1, &opts).unwrap();
    assert!(res.converged);
    assert!((res.x_final[0] - 0.5).abs() <= 1e-6);

    // An objective that is NaN everywhere fails every start.
    let all_bad = FnObjective::new(1, |_x: &[f64], g: &mut [f64]| {
        g[0] = f64::NAN;
        f64::NAN
    });
    assert!(multi_start(&all_bad, 1, &opts).is_err());
}
