//! Linear expectile regression: prediction, penalized risk, and gradient.
//!
//! The coefficient vector is β = (β_0, β_1, …, β_p) with the intercept first;
//! only β_1…β_p carry the ridge penalty.

use enn_expectile::{als_loss, als_loss_dt, ExpectileLevel};
use ndarray::{Array1, Array2};

use crate::data::Dataset;
use crate::error::ModelError;

pub fn er_predict(beta: &[f64], x_row: &[f64]) -> Result<f64, ModelError> {
    if beta.len() != x_row.len() + 1 {
        return Err(ModelError::DimensionMismatch(format!(
            "beta has {} coefficients, needs {} (intercept + features)",
            beta.len(),
            x_row.len() + 1
        )));
    }
    let mut t = beta[0];
    for (b, x) in beta[1..].iter().zip(x_row) {
        t += b * x;
    }
    Ok(t)
}

fn check_er_inputs(beta: &[f64], x: &Array2<f64>, y: &Array1<f64>, lambda: f64) -> (usize, usize) {
    assert_eq!(
        beta.len(),
        x.ncols() + 1,
        "beta length vs design matrix width"
    );
    assert_eq!(x.nrows(), y.len(), "design matrix / response row counts");
    assert!(x.nrows() > 0, "empty design matrix");
    assert!(
        lambda.is_finite() && lambda >= 0.0,
        "lambda must be a nonnegative real"
    );
    (x.nrows(), x.ncols())
}

pub fn er_risk_flat(
    beta: &[f64],
    x: &Array2<f64>,
    y: &Array1<f64>,
    level: ExpectileLevel,
    lambda: f64,
) -> f64 {
    let (n, p) = check_er_inputs(beta, x, y, lambda);
    let xs = x.as_slice().expect("design matrix in standard layout");
    let mut loss_sum = 0.0;
    for i in 0..n {
        let xi = &xs[i * p..(i + 1) * p];
        let mut t = beta[0];
        for (b, v) in beta[1..].iter().zip(xi) {
            t += b * v;
        }
        loss_sum += als_loss(y[i], t, level);
    }
    let penalty: f64 = beta[1..].iter().map(|b| b * b).sum();
    loss_sum / n as f64 + lambda * penalty
}

pub fn er_value_grad_flat(
    beta: &[f64],
    x: &Array2<f64>,
    y: &Array1<f64>,
    level: ExpectileLevel,
    lambda: f64,
    grad: &mut [f64],
) -> f64 {
    let (n, p) = check_er_inputs(beta, x, y, lambda);
    assert_eq!(grad.len(), beta.len(), "gradient vector length");
    let xs = x.as_slice().expect("design matrix in standard layout");
    grad.fill(0.0);
    let mut loss_sum = 0.0;
    for i in 0..n {
        let xi = &xs[i * p..(i + 1) * p];
        let mut t = beta[0];
        for (b, v) in beta[1..].iter().zip(xi) {
            t += b * v;
        }
        loss_sum += als_loss(y[i], t, level);
        let d = als_loss_dt(y[i], t, level);
        grad[0] += d;
        for (g, v) in grad[1..].iter_mut().zip(xi) {
            *g += d * v;
        }
    }
    let inv_n = 1.0 / n as f64;
    grad[0] *= inv_n;
    for (g, b) in grad[1..].iter_mut().zip(&beta[1..]) {
        *g = *g * inv_n + 2.0 * lambda * b;
    }
    let penalty: f64 = beta[1..].iter().map(|b| b * b).sum();
    loss_sum / n as f64 + lambda * penalty
}

pub fn er_risk(
    beta: &[f64],
    data: &Dataset,
    level: ExpectileLevel,
    lambda: f64,
) -> Result<f64, ModelError> {
    check_er_data(beta, data, lambda)?;
    Ok(er_risk_flat(beta, data.x(), data.y(), level, lambda))
}

pub fn er_grad(
    beta: &[f64],
    data: &Dataset,
    level: ExpectileLevel,
    lambda: f64,
) -> Result<Vec<f64>, ModelError> {
    check_er_data(beta, data, lambda)?;
    let mut grad = vec![0.0; beta.len()];
    er_value_grad_flat(beta, data.x(), data.y(), level, lambda, &mut grad);
    Ok(grad)
}

fn check_er_data(beta: &[f64], data: &Dataset, lambda: f64) -> Result<(), ModelError> {
    if beta.len() != data.p() + 1 {
        return Err(ModelError::DimensionMismatch(format!(
            "beta has {} coefficients, dataset needs {}",
            beta.len(),
            data.p() + 1
        )));
    }
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(ModelError::InvalidArchitecture(format!(
            "lambda must be a nonnegative real (got {lambda})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::ColumnKind;
    use approx::assert_abs_diff_eq;
    use ndarray::{arr1, arr2};

    fn level(tau: f64) -> ExpectileLevel {
        ExpectileLevel::new(tau).unwrap()
    }

    #[test]
    fn predicts_affine_combinations() {
        assert_eq!(er_predict(&[0.0, 0.0, 0.0], &[5.0, -3.0]).unwrap(), 0.0);
        assert_eq!(er_predict(&[1.0, 2.0], &[3.0]).unwrap(), 7.0);
        assert_eq!(er_predict(&[0.0, 1.0, 1.0], &[2.0, 2.0]).unwrap(), 4.0);
        assert!(er_predict(&[1.0, 2.0], &[3.0, 4.0]).is_err());
    }

    #[test]
    fn zero_beta_on_zero_targets_has_zero_risk() {
        let data = Dataset::new(
            arr2(&[[1.0, 0.5], [2.0, -0.5]]),
            arr1(&[0.0, 0.0]),
            vec![ColumnKind::Genotype, ColumnKind::Covariate],
        )
        .unwrap();
        for lambda in [0.0, 1.0, 100.0] {
            assert_eq!(
                er_risk(&[0.0, 0.0, 0.0], &data, level(0.5), lambda).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn half_level_risk_is_half_the_ls_objective() {
        let data = Dataset::new(
            arr2(&[[0.0], [1.0], [2.0]]),
            arr1(&[0.5, 1.0, 2.5]),
            vec![ColumnKind::Genotype],
        )
        .unwrap();
        let beta = [0.25, 1.1];
        let risk = er_risk(&beta, &data, level(0.5), 0.0).unwrap();
        let mut ls = 0.0;
        for i in 0..3 {
            let r = data.y()[i] - (beta[0] + beta[1] * data.x()[[i, 0]]);
            ls += r * r;
        }
        assert_abs_diff_eq!(risk, 0.5 * ls / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn intercept_is_not_penalized() {
        let data = Dataset::new(
            arr2(&[[1.0], [0.0]]),
            arr1(&[3.0, 3.0]),
            vec![ColumnKind::Genotype],
        )
        .unwrap();
        // beta = (3, 0) fits perfectly; only the slope would be penalized.
        let r0 = er_risk(&[3.0, 0.0], &data, level(0.7), 100.0).unwrap();
        assert_eq!(r0, 0.0);
        let grad = er_grad(&[3.0, 0.0], &data, level(0.7), 100.0).unwrap();
        assert_eq!(grad, vec![0.0, 0.0]);
    }

    #[test]
    fn risk_is_midpoint_convex_in_beta() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let data = Dataset::new(
            arr2(&[
                [0.0, 1.0, 0.3],
                [2.0, 1.0, -0.5],
                [1.0, 0.0, 1.2],
                [2.0, 2.0, 0.0],
                [0.0, 0.0, -1.0],
            ]),
            arr1(&[0.4, -0.7, 1.3, 2.0, -0.2]),
            vec![
                ColumnKind::Genotype,
                ColumnKind::Genotype,
                ColumnKind::Covariate,
            ],
        )
        .unwrap();
        for case in 0..100 {
            let tau = [0.1, 0.5, 0.9][case % 3];
            let lambda = [0.0, 0.1, 1.0][case % 3];
            let a: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let b: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let mid: Vec<f64> = a.iter().zip(&b).map(|(u, v)| 0.5 * (u + v)).collect();
            let fa = er_risk(&a, &data, level(tau), lambda).unwrap();
            let fb = er_risk(&b, &data, level(tau), lambda).unwrap();
            let fm = er_risk(&mid, &data, level(tau), lambda).unwrap();
            assert!(
                fm <= 0.5 * (fa + fb) + 1e-12,
                "midpoint convexity violated: case {case}, fm {fm}, avg {}",
                0.5 * (fa + fb)
            );
        }
    }
}
