//! Optional per-column standardization.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Column-wise (value − mean) / sd transform fitted on training data and
/// replayed on any later matrix or row.  Constant columns keep sd = 1 so the
/// transform stays defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnScaler {
    means: Vec<f64>,
    sds: Vec<f64>,
}

impl ColumnScaler {
    pub fn fit(x: &Array2<f64>) -> Self {
        let n = x.nrows() as f64;
        let mut means = Vec::with_capacity(x.ncols());
        let mut sds = Vec::with_capacity(x.ncols());
        for col in x.columns() {
            let mean = col.sum() / n;
            let var = if x.nrows() > 1 {
                col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            let sd = var.sqrt();
            means.push(mean);
            sds.push(if sd > 0.0 { sd } else { 1.0 });
        }
        Self { means, sds }
    }

    pub fn width(&self) -> usize {
        self.means.len()
    }

    pub fn transform(&self, x: &Array2<f64>) -> Result<Array2<f64>, ModelError> {
        if x.ncols() != self.width() {
            return Err(ModelError::DimensionMismatch(format!(
                "scaler fitted on {} columns, matrix has {}",
                self.width(),
                x.ncols()
            )));
        }
        let mut out = x.clone();
        for (j, mut col) in out.columns_mut().into_iter().enumerate() {
            col.mapv_inplace(|v| (v - self.means[j]) / self.sds[j]);
        }
        Ok(out)
    }

    pub fn transform_row(&self, row: &mut [f64]) -> Result<(), ModelError> {
        if row.len() != self.width() {
            return Err(ModelError::DimensionMismatch(format!(
                "scaler fitted on {} columns, row has {}",
                self.width(),
                row.len()
            )));
        }
        for (j, v) in row.iter_mut().enumerate() {
            *v = (*v - self.means[j]) / self.sds[j];
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::arr2;

    #[test]
    fn standardizes_columns_and_replays_on_rows() {
        let x = arr2(&[[0.0, 10.0], [2.0, 10.0], [4.0, 10.0]]);
        let scaler = ColumnScaler::fit(&x);
        let t = scaler.transform(&x).unwrap();
        assert_abs_diff_eq!(t.column(0).sum(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t[[2, 0]], 1.0, epsilon = 1e-12);
        // Constant column: centered, sd fallback of 1 leaves it at zero.
        assert_eq!(t.column(1).iter().copied().collect::<Vec<_>>(), [0.0; 3]);

        let mut row = [4.0, 10.0];
        scaler.transform_row(&mut row).unwrap();
        assert_abs_diff_eq!(row[0], t[[2, 0]], epsilon = 1e-15);
        assert!(scaler.transform_row(&mut [1.0]).is_err());
    }
}
