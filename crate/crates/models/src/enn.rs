//! ENN forward evaluation, penalized empirical risk, and exact gradients.
//!
//! The `_flat` variants operate on the flattened parameter vector (see
//! [`FlatLayout`]) and are the functions the optimizer drives; they assume
//! validated, conforming inputs and panic on dimension mismatches.  The
//! wrappers taking [`EnnParams`] and [`Dataset`] validate and return errors.

use enn_expectile::{als_loss, als_loss_dt, ExpectileLevel};
use ndarray::{Array1, Array2};

use crate::arch::EnnArchitecture;
use crate::data::Dataset;
use crate::error::ModelError;
use crate::params::{EnnParams, FlatLayout};

/// Forward pass for one input row: prediction plus hidden activations.
pub fn enn_forward(
    arch: &EnnArchitecture,
    params: &EnnParams,
    x_row: &[f64],
) -> Result<(f64, Vec<f64>), ModelError> {
    if x_row.len() != arch.p_in() {
        return Err(ModelError::DimensionMismatch(format!(
            "input row has {} values, architecture expects {}",
            x_row.len(),
            arch.p_in()
        )));
    }
    if !params.conforms_to(arch) {
        return Err(ModelError::DimensionMismatch(
            "parameters do not conform to the architecture".to_string(),
        ));
    }
    let mut hidden = vec![0.0; arch.q_hidden()];
    let mut z2 = params.b2;
    for q in 0..arch.q_hidden() {
        let mut z1 = params.b1[q];
        for p in 0..arch.p_in() {
            if arch.is_active(p, q) {
                z1 += x_row[p] * params.w1[[p, q]];
            }
        }
        let h = arch.hidden_act().apply(z1);
        hidden[q] = h;
        z2 += h * params.w2[q];
    }
    Ok((arch.output_act().apply(z2), hidden))
}

fn data_slices<'a>(
    arch: &EnnArchitecture,
    flat: &[f64],
    x: &'a Array2<f64>,
    y: &Array1<f64>,
) -> (&'a [f64], usize, usize) {
    let lay = FlatLayout::for_arch(arch);
    assert_eq!(flat.len(), lay.dim(), "parameter vector length");
    assert_eq!(x.ncols(), arch.p_in(), "design matrix width");
    assert_eq!(x.nrows(), y.len(), "design matrix / response row counts");
    assert!(x.nrows() > 0, "empty design matrix");
    let xs = x.as_slice().expect("design matrix in standard layout");
    (xs, x.nrows(), x.ncols())
}

/// Penalized empirical risk at a flattened parameter vector.
pub fn enn_risk_flat(
    arch: &EnnArchitecture,
    flat: &[f64],
    x: &Array2<f64>,
    y: &Array1<f64>,
    level: ExpectileLevel,
) -> f64 {
    let (xs, n, p_in) = data_slices(arch, flat, x, y);
    let lay = FlatLayout::for_arch(arch);
    let active = arch.active_inputs();
    let f1 = arch.hidden_act();
    let f2 = arch.output_act();

    let mut loss_sum = 0.0;
    for i in 0..n {
        let xi = &xs[i * p_in..(i + 1) * p_in];
        let mut z2 = flat[lay.b2()];
        for (q, act) in active.iter().enumerate() {
            let mut s = flat[lay.b1(q)];
            for &p in act {
                s += xi[p] * flat[lay.w1(p, q)];
            }
            z2 += f1.apply(s) * flat[lay.w2(q)];
        }
        loss_sum += als_loss(y[i], f2.apply(z2), level);
    }

    let mut penalty = 0.0;
    for (q, act) in active.iter().enumerate() {
        for &p in act {
            let w = flat[lay.w1(p, q)];
            penalty += w * w;
        }
        let w = flat[lay.w2(q)];
        penalty += w * w;
    }
    loss_sum / n as f64 + arch.lambda() * penalty
}

/// Risk value and gradient in one pass.  Gradient components of masked-out
/// w1 entries are exactly 0; biases carry no penalty term.
pub fn enn_value_grad_flat(
    arch: &EnnArchitecture,
    flat: &[f64],
    x: &Array2<f64>,
    y: &Array1<f64>,
    level: ExpectileLevel,
    grad: &mut [f64],
) -> f64 {
    let (xs, n, p_in) = data_slices(arch, flat, x, y);
    let lay = FlatLayout::for_arch(arch);
    assert_eq!(grad.len(), lay.dim(), "gradient vector length");
    let active = arch.active_inputs();
    let f1 = arch.hidden_act();
    let f2 = arch.output_act();

    grad.fill(0.0);
    let q_hidden = arch.q_hidden();
    let mut z1 = vec![0.0; q_hidden];
    let mut h = vec![0.0; q_hidden];
    let mut loss_sum = 0.0;

    for i in 0..n {
        let xi = &xs[i * p_in..(i + 1) * p_in];
        let mut z2 = flat[lay.b2()];
        for (q, act) in active.iter().enumerate() {
            let mut s = flat[lay.b1(q)];
            for &p in act {
                s += xi[p] * flat[lay.w1(p, q)];
            }
            z1[q] = s;
            let hq = f1.apply(s);
            h[q] = hq;
            z2 += hq * flat[lay.w2(q)];
        }
        let yhat = f2.apply(z2);
        let yi = y[i];
        loss_sum += als_loss(yi, yhat, level);

        let dz2 = als_loss_dt(yi, yhat, level) * f2.deriv(z2);
        grad[lay.b2()] += dz2;
        for (q, act) in active.iter().enumerate() {
            grad[lay.w2(q)] += dz2 * h[q];
            let dz1 = dz2 * flat[lay.w2(q)] * f1.deriv(z1[q]);
            grad[lay.b1(q)] += dz1;
            for &p in act {
                grad[lay.w1(p, q)] += dz1 * xi[p];
            }
        }
    }

    let inv_n = 1.0 / n as f64;
    for g in grad.iter_mut() {
        *g *= inv_n;
    }

    let lambda = arch.lambda();
    let mut penalty = 0.0;
    for (q, act) in active.iter().enumerate() {
        for &p in act {
            let w = flat[lay.w1(p, q)];
            penalty += w * w;
            grad[lay.w1(p, q)] += 2.0 * lambda * w;
        }
        let w = flat[lay.w2(q)];
        penalty += w * w;
        grad[lay.w2(q)] += 2.0 * lambda * w;
    }
    loss_sum / n as f64 + lambda * penalty
}

pub fn enn_risk(
    arch: &EnnArchitecture,
    params: &EnnParams,
    data: &Dataset,
    level: ExpectileLevel,
) -> Result<f64, ModelError> {
    check_conformance(arch, params, data)?;
    Ok(enn_risk_flat(
        arch,
        &params.flatten(),
        data.x(),
        data.y(),
        level,
    ))
}

pub fn enn_grad(
    arch: &EnnArchitecture,
    params: &EnnParams,
    data: &Dataset,
    level: ExpectileLevel,
) -> Result<Vec<f64>, ModelError> {
    check_conformance(arch, params, data)?;
    let flat = params.flatten();
    let mut grad = vec![0.0; flat.len()];
    enn_value_grad_flat(arch, &flat, data.x(), data.y(), level, &mut grad);
    Ok(grad)
}

fn check_conformance(
    arch: &EnnArchitecture,
    params: &EnnParams,
    data: &Dataset,
) -> Result<(), ModelError> {
    if data.p() != arch.p_in() {
        return Err(ModelError::DimensionMismatch(format!(
            "dataset has {} columns, architecture expects {}",
            data.p(),
            arch.p_in()
        )));
    }
    if !params.conforms_to(arch) {
        return Err(ModelError::DimensionMismatch(
            "parameters do not conform to the architecture".to_string(),
        ));
    }
    Ok(())
}
