//! Fitted models behind a common prediction trait, and their on-disk form.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::arch::EnnArchitecture;
use crate::enn::enn_forward;
use crate::er::er_predict;
use crate::error::ModelError;
use crate::params::EnnParams;
use crate::scale::ColumnScaler;

/// A fitted predictor.
pub trait Model: Send + Sync {
    fn input_dim(&self) -> usize;

    fn predict(&self, x_row: &[f64]) -> Result<f64, ModelError>;

    fn predict_all(&self, x: &Array2<f64>) -> Result<Array1<f64>, ModelError> {
        let mut out = Array1::zeros(x.nrows());
        let mut row = vec![0.0; x.ncols()];
        for i in 0..x.nrows() {
            for (v, s) in row.iter_mut().zip(x.row(i)) {
                *v = *s;
            }
            out[i] = self.predict(&row)?;
        }
        Ok(out)
    }

    /// Serializable description sufficient to rebuild the model.
    fn spec(&self) -> ModelSpec;
}

/// Linear expectile regression model: β = (intercept, coefficients…).
#[derive(Debug, Clone, PartialEq)]
pub struct ErModel {
    beta: Vec<f64>,
    scaler: Option<ColumnScaler>,
}

impl ErModel {
    pub fn new(beta: Vec<f64>, scaler: Option<ColumnScaler>) -> Result<Self, ModelError> {
        if beta.len() < 2 {
            return Err(ModelError::InvalidModelFile(
                "beta needs an intercept and at least one coefficient".to_string(),
            ));
        }
        if beta.iter().any(|b| !b.is_finite()) {
            return Err(ModelError::InvalidModelFile(
                "non-finite coefficient".to_string(),
            ));
        }
        if let Some(s) = &scaler {
            if s.width() + 1 != beta.len() {
                return Err(ModelError::DimensionMismatch(format!(
                    "scaler covers {} columns, beta expects {}",
                    s.width(),
                    beta.len() - 1
                )));
            }
        }
        Ok(Self { beta, scaler })
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }
}

impl Model for ErModel {
    fn input_dim(&self) -> usize {
        self.beta.len() - 1
    }

    fn predict(&self, x_row: &[f64]) -> Result<f64, ModelError> {
        match &self.scaler {
            None => er_predict(&self.beta, x_row),
            Some(s) => {
                let mut row = x_row.to_vec();
                s.transform_row(&mut row)?;
                er_predict(&self.beta, &row)
            }
        }
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec::Er {
            beta: self.beta.clone(),
            scaler: self.scaler.clone(),
        }
    }
}

/// Expectile neural network model.
#[derive(Debug, Clone, PartialEq)]
pub struct EnnModel {
    arch: EnnArchitecture,
    params: EnnParams,
    scaler: Option<ColumnScaler>,
}

impl EnnModel {
    pub fn new(
        arch: EnnArchitecture,
        params: EnnParams,
        scaler: Option<ColumnScaler>,
    ) -> Result<Self, ModelError> {
        if !params.conforms_to(&arch) {
            return Err(ModelError::DimensionMismatch(
                "parameters do not conform to the architecture".to_string(),
            ));
        }
        if !params.respects_mask(&arch) {
            return Err(ModelError::InvalidModelFile(
                "masked-out weights must be exactly 0".to_string(),
            ));
        }
        if params.flatten().iter().any(|v| !v.is_finite()) {
            return Err(ModelError::InvalidModelFile(
                "non-finite parameter".to_string(),
            ));
        }
        if let Some(s) = &scaler {
            if s.width() != arch.p_in() {
                return Err(ModelError::DimensionMismatch(format!(
                    "scaler covers {} columns, architecture expects {}",
                    s.width(),
                    arch.p_in()
                )));
            }
        }
        Ok(Self {
            arch,
            params,
            scaler,
        })
    }

    pub fn arch(&self) -> &EnnArchitecture {
        &self.arch
    }

    pub fn params(&self) -> &EnnParams {
        &self.params
    }
}

impl Model for EnnModel {
    fn input_dim(&self) -> usize {
        self.arch.p_in()
    }

    fn predict(&self, x_row: &[f64]) -> Result<f64, ModelError> {
        let (yhat, _) = match &self.scaler {
            None => enn_forward(&self.arch, &self.params, x_row)?,
            Some(s) => {
                let mut row = x_row.to_vec();
                s.transform_row(&mut row)?;
                enn_forward(&self.arch, &self.params, &row)?
            }
        };
        Ok(yhat)
    }

    fn spec(&self) -> ModelSpec {
        ModelSpec::Enn {
            arch: self.arch.clone(),
            params: self.params.flatten(),
            scaler: self.scaler.clone(),
        }
    }
}

/// Serializable model description; `params` for the ENN case is the flat
/// vector in the layout defined by [`crate::params::FlatLayout`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    Er {
        beta: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scaler: Option<ColumnScaler>,
    },
    Enn {
        arch: EnnArchitecture,
        params: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scaler: Option<ColumnScaler>,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<Box<dyn Model>, ModelError> {
        match self {
            ModelSpec::Er { beta, scaler } => {
                Ok(Box::new(ErModel::new(beta.clone(), scaler.clone())?))
            }
            ModelSpec::Enn {
                arch,
                params,
                scaler,
            } => {
                let p = EnnParams::unflatten(arch, params)?;
                Ok(Box::new(EnnModel::new(arch.clone(), p, scaler.clone())?))
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelSpec::Er { .. } => "er",
            ModelSpec::Enn { .. } => "enn",
        }
    }
}

/// On-disk model document.  `version` pins the parameter flattening order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub version: u32,
    pub tau: f64,
    pub lambda: f64,
    pub model: ModelSpec,
}

impl ModelFile {
    pub const CURRENT_VERSION: u32 = 1;

    pub fn new(tau: f64, lambda: f64, model: ModelSpec) -> Self {
        Self {
            version: Self::CURRENT_VERSION,
            tau,
            lambda,
            model,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text)
            .map_err(|e| ModelError::InvalidModelFile(e.to_string()))?;
        if file.version != Self::CURRENT_VERSION {
            return Err(ModelError::InvalidModelFile(format!(
                "unsupported model file version {} (expected {})",
                file.version,
                Self::CURRENT_VERSION
            )));
        }
        if !(file.tau > 0.0 && file.tau < 1.0) {
            return Err(ModelError::InvalidModelFile(format!(
                "tau must lie in (0,1), got {}",
                file.tau
            )));
        }
        file.model.build()?;
        Ok(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::Activation;

    #[test]
    fn er_model_file_round_trips_value_exactly() {
        let beta = vec![0.1 + 0.2, 1.0 / 3.0, -7.3e-21, 4.0e17];
        let model = ErModel::new(beta.clone(), None).unwrap();
        let file = ModelFile::new(0.9, 0.1, model.spec());
        let text = file.to_json();
        let back = ModelFile::from_json(&text).unwrap();
        assert_eq!(back, file);
        match back.model {
            ModelSpec::Er { beta: b, .. } => assert_eq!(b, beta),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn enn_model_file_round_trips_and_checks_mask() {
        let mask = vec![vec![true, false], vec![true, true]];
        let arch =
            EnnArchitecture::with_mask(2, 2, Activation::Relu, Activation::Identity, mask, 1.0)
                .unwrap();
        let mut params = EnnParams::zeros(&arch);
        params.w1[[0, 0]] = 0.123456789123456789;
        params.w1[[1, 1]] = -1.0 / 997.0;
        params.w2[0] = 2.0_f64.sqrt();
        let model = EnnModel::new(arch.clone(), params.clone(), None).unwrap();
        let file = ModelFile::new(0.5, 1.0, model.spec());
        let back = ModelFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);

        // A masked weight forced nonzero must be rejected on load.
        let mut bad_params = params.clone();
        bad_params.w1[[0, 1]] = 0.5;
        let bad = ModelFile::new(
            0.5,
            1.0,
            ModelSpec::Enn {
                arch,
                params: bad_params.flatten(),
                scaler: None,
            },
        );
        assert!(ModelFile::from_json(&bad.to_json()).is_err());
    }

    #[test]
    fn built_models_predict_like_their_sources() {
        let beta = vec![1.0, 2.0, -0.5];
        let model = ErModel::new(beta, None).unwrap();
        let rebuilt = model.spec().build().unwrap();
        let x = [1.5, 2.0];
        assert_eq!(
            rebuilt.predict(&x).unwrap(),
            model.predict(&x).unwrap()
        );
        assert_eq!(rebuilt.input_dim(), 2);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(ModelFile::from_json("{").is_err());
        assert!(ModelFile::from_json("{\"version\":99}").is_err());
        let model = ErModel::new(vec![0.0, 1.0], None).unwrap();
        let mut file = ModelFile::new(0.5, 0.0, model.spec());
        file.tau = 1.5;
        assert!(ModelFile::from_json(&file.to_json()).is_err());
    }
}
