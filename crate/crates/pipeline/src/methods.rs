use std::collections::BTreeMap;

use enn_expectile::ExpectileLevel;
use enn_models::{
    enn_value_grad_flat, er_value_grad_flat, ColumnScaler, Dataset, EnnArchitecture, EnnModel,
    EnnParams, ErModel, FlatLayout, Model,
};
use enn_optim::{multi_start_masked, FnObjective, OptimOptions, OptimResult};

use crate::error::PipelineError;
use enn_models::Activation;

/// Hidden width of the default fully connected network.
pub const DEFAULT_HIDDEN: usize = 5;
/// Hidden nodes per gene block in the default masked network.
pub const DEFAULT_PER_GENE_HIDDEN: usize = 2;

/// A fitted model together with the optimizer run that produced it.
pub struct FittedModel {
    pub model: Box<dyn Model>,
    pub optim: OptimResult,
}

impl std::fmt::Debug for FittedModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FittedModel")
            .field("model", &self.model.spec().kind_name())
            .field("optim", &self.optim)
            .finish()
    }
}

/// One trainable model family, fit at a fixed ridge strength.  Registered
/// by name in a [`MethodRegistry`] and resolved at runtime.
pub trait FitMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn fit(
        &self,
        train: &Dataset,
        tau: f64,
        lambda: f64,
        opts: &OptimOptions,
    ) -> Result<FittedModel, PipelineError>;
}

/// Linear expectile regression via multi-start BFGS on the penalized
/// asymmetric squared risk.  Inputs are used raw unless standardization is
/// switched on, in which case the scaler is stored on the model.
#[derive(Default)]
pub struct ErMethod {
    standardize: bool,
}

impl ErMethod {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_standardize(mut self, standardize: bool) -> Self {
        self.standardize = standardize;
        self
    }
}

impl FitMethod for ErMethod {
    fn name(&self) -> &'static str {
        "er"
    }

    fn fit(
        &self,
        train: &Dataset,
        tau: f64,
        lambda: f64,
        opts: &OptimOptions,
    ) -> Result<FittedModel, PipelineError> {
        let level = ExpectileLevel::new(tau)?;
        let (xs, scaler) = scaled_inputs(train, self.standardize)?;
        let y = train.y();
        let dim = train.p() + 1;
        let obj = FnObjective::new(dim, |beta: &[f64], grad: &mut [f64]| {
            er_value_grad_flat(beta, &xs, y, level, lambda, grad)
        });
        let optim = multi_start_masked(&obj, dim, &[], opts)?;
        let model = ErModel::new(optim.x_final.clone(), scaler)?;
        Ok(FittedModel {
            model: Box::new(model),
            optim,
        })
    }
}

fn scaled_inputs(
    train: &Dataset,
    standardize: bool,
) -> Result<(ndarray::Array2<f64>, Option<ColumnScaler>), PipelineError> {
    if standardize {
        let scaler = ColumnScaler::fit(train.x());
        let xs = scaler.transform(train.x())?;
        Ok((xs, Some(scaler)))
    } else {
        Ok((train.x().to_owned(), None))
    }
}

/// Single-hidden-layer expectile network, optionally with a per-gene
/// connectivity mask built from the dataset's gene grouping.  Masked
/// parameters are pinned to zero across all starts.
pub struct EnnMethod {
    name: &'static str,
    hidden: usize,
    per_gene_hidden: usize,
    hidden_act: Activation,
    output_act: Activation,
    masked: bool,
    standardize: bool,
}

impl EnnMethod {
    pub fn fully_connected(hidden: usize) -> Self {
        Self {
            name: "enn",
            hidden,
            per_gene_hidden: 0,
            hidden_act: Activation::Relu,
            output_act: Activation::Identity,
            masked: false,
            standardize: false,
        }
    }

    pub fn gene_masked(per_gene_hidden: usize) -> Self {
        Self {
            name: "enn_masked",
            hidden: 0,
            per_gene_hidden,
            hidden_act: Activation::Relu,
            output_act: Activation::Identity,
            masked: true,
            standardize: false,
        }
    }

    pub fn with_activations(mut self, hidden_act: Activation, output_act: Activation) -> Self {
        self.hidden_act = hidden_act;
        self.output_act = output_act;
        self
    }

    pub fn with_standardize(mut self, standardize: bool) -> Self {
        self.standardize = standardize;
        self
    }

    fn architecture(&self, train: &Dataset, lambda: f64) -> Result<EnnArchitecture, PipelineError> {
        let p = train.p();
        if self.masked {
            let groups = train.gene_groups().ok_or_else(|| {
                PipelineError::FitFailed(format!(
                    "method `{}` needs gene groupings on the dataset",
                    self.name
                ))
            })?;
            Ok(EnnArchitecture::gene_masked(
                groups,
                self.per_gene_hidden,
                p,
                self.hidden_act,
                self.output_act,
                lambda,
            )?)
        } else {
            Ok(EnnArchitecture::fully_connected(
                p,
                self.hidden,
                self.hidden_act,
                self.output_act,
                lambda,
            )?)
        }
    }
}

impl FitMethod for EnnMethod {
    fn name(&self) -> &'static str {
        self.name
    }

    fn fit(
        &self,
        train: &Dataset,
        tau: f64,
        lambda: f64,
        opts: &OptimOptions,
    ) -> Result<FittedModel, PipelineError> {
        let level = ExpectileLevel::new(tau)?;
        let arch = self.architecture(train, lambda)?;
        let (xs, scaler) = scaled_inputs(train, self.standardize)?;
        let y = train.y();

        let lay = FlatLayout::for_arch(&arch);
        let dim = lay.dim();
        let mut pinned = Vec::new();
        for p in 0..arch.p_in() {
            for q in 0..arch.q_hidden() {
                if !arch.is_active(p, q) {
                    pinned.push(lay.w1(p, q));
                }
            }
        }

        let obj = FnObjective::new(dim, |flat: &[f64], grad: &mut [f64]| {
            enn_value_grad_flat(&arch, flat, &xs, y, level, grad)
        });
        let optim = multi_start_masked(&obj, dim, &pinned, opts)?;
        let params = EnnParams::unflatten(&arch, &optim.x_final)?;
        let model = EnnModel::new(arch.clone(), params, scaler)?;
        Ok(FittedModel {
            model: Box::new(model),
            optim,
        })
    }
}

fn normalize(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

/// Runtime-resolvable table of fit methods, keyed by normalized name with
/// optional aliases.
pub struct MethodRegistry {
    methods: BTreeMap<String, Box<dyn FitMethod>>,
    aliases: BTreeMap<String, String>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        Self {
            methods: BTreeMap::new(),
            aliases: BTreeMap::new(),
        }
    }

    /// `er`, `enn` (fully connected), and `enn_masked` (per-gene blocks).
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(ErMethod::new()));
        reg.register(Box::new(EnnMethod::fully_connected(DEFAULT_HIDDEN)));
        reg.register(Box::new(EnnMethod::gene_masked(DEFAULT_PER_GENE_HIDDEN)));
        reg.alias("enn_full", "enn");
        reg.alias("masked", "enn_masked");
        reg
    }

    pub fn register(&mut self, method: Box<dyn FitMethod>) {
        self.methods.insert(normalize(method.name()), method);
    }

    pub fn alias(&mut self, alias: &str, canonical: &str) {
        self.aliases.insert(normalize(alias), normalize(canonical));
    }

    pub fn get(&self, name: &str) -> Option<&dyn FitMethod> {
        let key = normalize(name);
        let key = self.aliases.get(&key).unwrap_or(&key);
        self.methods.get(key).map(|b| b.as_ref())
    }

    pub fn resolve(&self, name: &str) -> Result<&dyn FitMethod, PipelineError> {
        self.get(name)
            .ok_or_else(|| PipelineError::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.methods.keys().map(|s| s.as_str()).collect()
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
