//! Seeded multi-start wrapper around the BFGS driver.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bfgs::bfgs_minimize;
use crate::error::OptimError;
use crate::objective::Objective;
use crate::options::{OptimOptions, OptimResult};

/// Runs `opts.n_starts` seeded starts drawn uniformly from [-1, 1]^dim,
/// warms each up for `opts.warmup_iters` iterations, then runs the full
/// optimization from the draw whose warmup reached the lowest value.
///
/// `warmup_iters = 0` ranks the raw draws by objective value.  Starts whose
/// warmup fails are skipped; if every start fails the first error is
/// returned.  Errors in the final run propagate.
pub fn multi_start<O: Objective + ?Sized>(
    obj: &O,
    dim: usize,
    opts: &OptimOptions,
) -> Result<OptimResult, OptimError> {
    multi_start_masked(obj, dim, &[], opts)
}

/// Same as [`multi_start`] but with the listed coordinates pinned to 0.0 in
/// every starting draw.  Combined with an objective whose gradient is zero
/// at those coordinates, they stay exactly 0.0 through the optimization.
pub fn multi_start_masked<O: Objective + ?Sized>(
    obj: &O,
    dim: usize,
    zero_indices: &[usize],
    opts: &OptimOptions,
) -> Result<OptimResult, OptimError> {
    opts.validate()?;
    if dim == 0 {
        return Err(OptimError::InvalidStart(
            "objective has dimension 0".to_string(),
        ));
    }
    if dim != obj.dim() {
        return Err(OptimError::InvalidStart(format!(
            "requested dimension {dim} does not match objective dimension {}",
            obj.dim()
        )));
    }
    if let Some(&bad) = zero_indices.iter().find(|&&i| i >= dim) {
        return Err(OptimError::InvalidStart(format!(
            "zeroed index {bad} out of range for dimension {dim}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut draws = Vec::with_capacity(opts.n_starts);
    for _ in 0..opts.n_starts {
        let mut draw: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        for &i in zero_indices {
            draw[i] = 0.0;
        }
        draws.push(draw);
    }

    let best_ix = if draws.len() == 1 {
        0
    } else {
        let warm = OptimOptions {
            max_iters: opts.warmup_iters.max(1),
            ..*opts
        };
        let mut best: Option<(f64, usize)> = None;
        let mut first_err: Option<OptimError> = None;
        for (k, draw) in draws.iter().enumerate() {
            let warmed = if opts.warmup_iters == 0 {
                let mut g = vec![0.0; dim];
                let f = obj.value_grad(draw, &mut g);
                if f.is_nan() {
                    if first_err.is_none() {
                        first_err = Some(OptimError::NonFinite {
                            what: "objective at a starting draw".to_string(),
                            iteration: 0,
                        });
                    }
                    continue;
                }
                f
            } else {
                match bfgs_minimize(obj, draw, &warm) {
                    Ok(res) => res.f_final,
                    Err(err) => {
                        if first_err.is_none() {
                            first_err = Some(err);
                        }
                        continue;
                    }
                }
            };
            if best.map_or(true, |(bf, _)| warmed < bf) {
                best = Some((warmed, k));
            }
        }
        match best {
            Some((_, k)) => k,
            None => {
                return Err(first_err.unwrap_or_else(|| {
                    OptimError::AllStartsFailed("no start produced a usable value".to_string())
                }))
            }
        }
    };

    bfgs_minimize(obj, &draws[best_ix], opts)
}
