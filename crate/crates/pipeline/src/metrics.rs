use enn_models::{Dataset, Model};

use crate::error::PipelineError;

/// Plain mean squared error (1/n) sum (y_i - yhat_i)^2.  Symmetric in the
/// residual sign regardless of the expectile level the model was fitted at;
/// this is the reported comparison metric.
pub fn evaluate_mse(model: &dyn Model, data: &Dataset) -> Result<f64, PipelineError> {
    let yhat = model.predict_all(data.x())?;
    let n = data.n() as f64;
    let sum: f64 = data
        .y()
        .iter()
        .zip(yhat.iter())
        .map(|(y, f)| (y - f) * (y - f))
        .sum();
    Ok(sum / n)
}

/// Fitted values sorted ascending and paired with 1-based ranks; the data
/// behind rank-vs-expectile plots.
pub fn ranked_expectile_curve(
    model: &dyn Model,
    data: &Dataset,
) -> Result<Vec<(usize, f64)>, PipelineError> {
    let mut fitted: Vec<f64> = model.predict_all(data.x())?.to_vec();
    fitted.sort_by(|a, b| a.total_cmp(b));
    Ok(fitted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i + 1, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use enn_models::{ColumnKind, Dataset, ErModel};
    use ndarray::{array, Array1};

    fn one_column_data(x: Vec<f64>, y: Vec<f64>) -> Dataset {
        let n = x.len();
        let x = ndarray::Array2::from_shape_vec((n, 1), x).unwrap();
        Dataset::new(x, Array1::from_vec(y), vec![ColumnKind::Genotype]).unwrap()
    }

    fn constant_model(c: f64) -> ErModel {
        ErModel::new(vec![c, 0.0], None).unwrap()
    }

    #[test]
    fn perfect_predictions_score_zero() {
        let data = one_column_data(vec![0.0, 1.0, 2.0], vec![3.0, 4.0, 5.0]);
        let model = ErModel::new(vec![3.0, 1.0], None).unwrap();
        assert_eq!(evaluate_mse(&model, &data).unwrap(), 0.0);
    }

    #[test]
    fn zero_predictor_on_unit_responses() {
        let data = one_column_data(vec![0.0, 0.0], vec![1.0, -1.0]);
        assert_eq!(evaluate_mse(&constant_model(0.0), &data).unwrap(), 1.0);
    }

    #[test]
    fn constant_shift_adds_its_square() {
        // Residuals of the zero predictor have mean 0, so shifting all
        // predictions by c adds exactly c^2.
        let data = one_column_data(vec![0.0, 1.0, 2.0, 1.0], vec![2.0, -2.0, 1.0, -1.0]);
        let base = evaluate_mse(&constant_model(0.0), &data).unwrap();
        for c in [0.5, 1.0, -2.0] {
            let shifted = evaluate_mse(&constant_model(c), &data).unwrap();
            assert!((shifted - base - c * c).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_sorts_fitted_values_with_one_based_ranks() {
        let data = one_column_data(vec![2.0, 0.0, 1.0], vec![0.0, 0.0, 0.0]);
        // Identity on the single column: fitted values (2, 0, 1).
        let model = ErModel::new(vec![0.0, 1.0], None).unwrap();
        let curve = ranked_expectile_curve(&model, &data).unwrap();
        assert_eq!(curve, vec![(1, 0.0), (2, 1.0), (3, 2.0)]);
    }

    #[test]
    fn constant_predictor_gives_flat_curve() {
        let data = one_column_data(vec![0.0, 1.0, 2.0], vec![1.0, 2.0, 3.0]);
        let curve = ranked_expectile_curve(&constant_model(1.5), &data).unwrap();
        assert!(curve.iter().all(|&(_, v)| v == 1.5));
        assert_eq!(curve.iter().map(|&(r, _)| r).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn curve_is_nondecreasing() {
        let x = array![[0.0], [2.0], [1.0], [2.0], [0.0]];
        let y = Array1::zeros(5);
        let data = Dataset::new(x, y, vec![ColumnKind::Genotype]).unwrap();
        let model = ErModel::new(vec![-0.3, 0.7], None).unwrap();
        let curve = ranked_expectile_curve(&model, &data).unwrap();
        for w in curve.windows(2) {
            assert!(w[1].1 >= w[0].1);
            assert_eq!(w[1].0, w[0].0 + 1);
        }
    }
}
