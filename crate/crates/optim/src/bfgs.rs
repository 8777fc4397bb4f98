//! Dense inverse-Hessian BFGS with a strong Wolfe line search.

use crate::error::OptimError;
use crate::objective::Objective;
use crate::options::{OptimOptions, OptimResult};

/// The inverse-Hessian update is skipped when s'y <= this threshold times
/// |s||y|, keeping the approximation positive definite.
pub const CURVATURE_SKIP: f64 = 1e-10;

/// Trial-step budget for one line search.
const LINE_SEARCH_BUDGET: usize = 50;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Clone)]
struct Trial {
    alpha: f64,
    f: f64,
    dphi: f64,
    x: Vec<f64>,
    g: Vec<f64>,
}

enum SearchOutcome {
    Accepted(Trial),
    /// Budget exhausted; carries the best finite trial seen, if any.
    Exhausted(Option<Trial>),
}

struct SearchState<'a, O: Objective + ?Sized> {
    obj: &'a O,
    x: &'a [f64],
    p: &'a [f64],
    phi0: f64,
    dphi0: f64,
    c1: f64,
    c2: f64,
    iteration: usize,
    evals: usize,
    best: Option<Trial>,
}

impl<'a, O: Objective + ?Sized> SearchState<'a, O> {
    /// Evaluates the objective at x + alpha p.  NaN anywhere is fatal;
    /// +inf values are allowed and treated as unacceptable by the callers.
    fn eval(&mut self, alpha: f64) -> Result<Trial, OptimError> {
        let d = self.x.len();
        let mut xt = vec![0.0; d];
        for i in 0..d {
            xt[i] = self.x[i] + alpha * self.p[i];
        }
        let mut g = vec![0.0; d];
        let f = self.obj.value_grad(&xt, &mut g);
        self.evals += 1;
        if f.is_nan() || g.iter().any(|v| v.is_nan()) {
            return Err(OptimError::NonFinite {
                what: "objective or gradient in line search".to_string(),
                iteration: self.iteration,
            });
        }
        let dphi = dot(&g, self.p);
        let trial = Trial {
            alpha,
            f,
            dphi,
            x: xt,
            g,
        };
        if f.is_finite() && self.best.as_ref().map_or(true, |b| f < b.f) {
            self.best = Some(trial.clone());
        }
        Ok(trial)
    }

    fn armijo_holds(&self, t: &Trial) -> bool {
        t.f.is_finite() && t.f <= self.phi0 + self.c1 * t.alpha * self.dphi0
    }

    fn curvature_holds(&self, t: &Trial) -> bool {
        t.dphi.is_finite() && t.dphi.abs() <= -self.c2 * self.dphi0
    }

    /// Narrows [lo, hi] (unordered) to a point satisfying both strong Wolfe
    /// conditions.  `lo` always satisfies Armijo with the lower value.
    fn zoom(
        &mut self,
        mut lo: f64,
        mut phi_lo: f64,
        mut dphi_lo: f64,
        mut hi: f64,
        mut phi_hi: f64,
    ) -> Result<SearchOutcome, OptimError> {
        while self.evals < LINE_SEARCH_BUDGET {
            let w = hi - lo;
            if w.abs() <= 1e-14 * lo.abs().max(1.0) {
                break;
            }
            // Quadratic-interpolation step through (lo, phi_lo, dphi_lo) and
            // (hi, phi_hi), safeguarded toward bisection.
            let mut t = 0.5;
            if phi_hi.is_finite() {
                let denom = 2.0 * (phi_hi - phi_lo - dphi_lo * w);
                if denom != 0.0 {
                    let cand = -dphi_lo * w / denom;
                    if cand.is_finite() && cand > 0.1 && cand < 0.9 {
                        t = cand;
                    }
                }
            }
            let a = lo + t * w;
            let tr = self.eval(a)?;
            if !self.armijo_holds(&tr) || tr.f >= phi_lo {
                hi = a;
                phi_hi = tr.f;
            } else {
                if self.curvature_holds(&tr) {
                    return Ok(SearchOutcome::Accepted(tr));
                }
                if tr.dphi * (hi - lo) >= 0.0 {
                    hi = lo;
                    phi_hi = phi_lo;
                }
                lo = a;
                phi_lo = tr.f;
                dphi_lo = tr.dphi;
            }
        }
        Ok(SearchOutcome::Exhausted(self.best.take()))
    }

    /// Bracketing phase: grow the step until the minimizer is bracketed or
    /// the conditions hold outright.
    fn run(&mut self) -> Result<SearchOutcome, OptimError> {
        let mut alpha_prev = 0.0;
        let mut phi_prev = self.phi0;
        let mut dphi_prev = self.dphi0;
        let mut alpha = 1.0;
        let mut first = true;
        while self.evals < LINE_SEARCH_BUDGET {
            let tr = self.eval(alpha)?;
            if !self.armijo_holds(&tr) || (!first && tr.f >= phi_prev) {
                return self.zoom(alpha_prev, phi_prev, dphi_prev, alpha, tr.f);
            }
            if self.curvature_holds(&tr) {
                return Ok(SearchOutcome::Accepted(tr));
            }
            if tr.dphi >= 0.0 {
                return self.zoom(alpha, tr.f, tr.dphi, alpha_prev, phi_prev);
            }
            alpha_prev = alpha;
            phi_prev = tr.f;
            dphi_prev = tr.dphi;
            alpha *= 2.0;
            if alpha > 1e18 {
                break;
            }
            first = false;
        }
        Ok(SearchOutcome::Exhausted(self.best.take()))
    }
}

fn identity(d: usize) -> Vec<f64> {
    let mut h = vec![0.0; d * d];
    for i in 0..d {
        h[i * d + i] = 1.0;
    }
    h
}

/// Applies the inverse-Hessian BFGS update
/// H <- (I - rho s y')H(I - rho y s') + rho s s' with rho = 1/s'y.
/// Written so exact symmetry of H is preserved.
fn bfgs_update(h: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let d = s.len();
    let rho = 1.0 / sy;
    let mut hy = vec![0.0; d];
    for i in 0..d {
        hy[i] = dot(&h[i * d..(i + 1) * d], y);
    }
    let yhy = dot(y, &hy);
    let c = rho * rho * yhy + rho;
    for i in 0..d {
        for j in 0..d {
            h[i * d + j] += c * s[i] * s[j] - rho * (s[i] * hy[j] + hy[i] * s[j]);
        }
    }
}

/// Minimizes `obj` from `x0`.
///
/// Stops when the gradient norm falls below `grad_tol`, when one accepted
/// step decreases the objective by less than `rel_obj_tol` relative, or at
/// `max_iters`.  A line search that exhausts its trial budget returns the
/// best point seen with `converged = false`.  NaN from the objective is an
/// error; the accepted-objective trace is always nonincreasing.
pub fn bfgs_minimize<O: Objective + ?Sized>(
    obj: &O,
    x0: &[f64],
    opts: &OptimOptions,
) -> Result<OptimResult, OptimError> {
    opts.validate()?;
    let d = obj.dim();
    if d == 0 {
        return Err(OptimError::InvalidStart(
            "objective has dimension 0".to_string(),
        ));
    }
    if x0.len() != d {
        return Err(OptimError::InvalidStart(format!(
            "starting point has length {}, objective has dimension {d}",
            x0.len()
        )));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(OptimError::InvalidStart(
            "starting point has non-finite components".to_string(),
        ));
    }

    let mut x = x0.to_vec();
    let mut g = vec![0.0; d];
    let mut f = obj.value_grad(&x, &mut g);
    if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return Err(OptimError::NonFinite {
            what: "objective or gradient at the starting point".to_string(),
            iteration: 0,
        });
    }
    let mut grad_norm = norm(&g);
    let mut f_trace = vec![f];
    let mut h = identity(d);
    let mut h_scaled = false;
    let mut iterations = 0usize;
    let mut converged = false;
    let mut line_failed = false;

    for iter in 1..=opts.max_iters {
        if grad_norm < opts.grad_tol {
            converged = true;
            break;
        }

        let mut p = vec![0.0; d];
        for i in 0..d {
            p[i] = -dot(&h[i * d..(i + 1) * d], &g);
        }
        let mut dphi0 = dot(&p, &g);
        if !(dphi0 < 0.0) {
            // Not a descent direction (numerical breakdown): restart from
            // steepest descent.
            h = identity(d);
            h_scaled = false;
            for i in 0..d {
                p[i] = -g[i];
            }
            dphi0 = -dot(&g, &g);
            if !(dphi0 < 0.0) {
                // Gradient is exactly zero: stationary point.
                converged = true;
                break;
            }
        }

        let mut search = SearchState {
            obj,
            x: &x,
            p: &p,
            phi0: f,
            dphi0,
            c1: opts.wolfe_c1,
            c2: opts.wolfe_c2,
            iteration: iter,
            evals: 0,
            best: None,
        };
        match search.run()? {
            SearchOutcome::Accepted(tr) => {
                let mut s = vec![0.0; d];
                let mut y = vec![0.0; d];
                for i in 0..d {
                    s[i] = tr.x[i] - x[i];
                    y[i] = tr.g[i] - g[i];
                }
                let sy = dot(&s, &y);
                if sy > CURVATURE_SKIP * norm(&s) * norm(&y) {
                    if !h_scaled {
                        let yy = dot(&y, &y);
                        if yy > 0.0 {
                            h = identity(d);
                            let gamma = sy / yy;
                            for i in 0..d {
                                h[i * d + i] = gamma;
                            }
                        }
                        h_scaled = true;
                    }
                    bfgs_update(&mut h, &s, &y, sy);
                }
                let f_new = tr.f;
                let rel_dec = (f - f_new) / f.abs().max(f_new.abs()).max(1.0);
                x = tr.x;
                g = tr.g;
                f = f_new;
                grad_norm = norm(&g);
                f_trace.push(f);
                iterations = iter;
                if rel_dec < opts.rel_obj_tol {
                    converged = true;
                    break;
                }
            }
            SearchOutcome::Exhausted(best) => {
                if let Some(b) = best {
                    if b.f < f {
                        x = b.x;
                        g = b.g;
                        f = b.f;
                        grad_norm = norm(&g);
                        f_trace.push(f);
                        iterations = iter;
                    }
                }
                line_failed = true;
                break;
            }
        }
    }

    if !converged && !line_failed && grad_norm < opts.grad_tol {
        converged = true;
    }

    Ok(OptimResult {
        x_final: x,
        f_final: f,
        grad_norm_final: grad_norm,
        iterations,
        converged,
        f_trace,
    })
}
