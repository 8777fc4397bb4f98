//! Parameter containers and the flat layout shared with the optimizer.

use ndarray::{Array1, Array2};

use crate::arch::EnnArchitecture;
use crate::error::ModelError;

/// Index arithmetic for the flattened parameter vector.  Order: w1 row-major
/// (input-major), then b1, then w2, then b2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatLayout {
    pub p_in: usize,
    pub q: usize,
}

impl FlatLayout {
    pub fn for_arch(arch: &EnnArchitecture) -> Self {
        Self {
            p_in: arch.p_in(),
            q: arch.q_hidden(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.p_in * self.q + 2 * self.q + 1
    }

    #[inline]
    pub fn w1(&self, p: usize, q: usize) -> usize {
        p * self.q + q
    }

    #[inline]
    pub fn b1(&self, q: usize) -> usize {
        self.p_in * self.q + q
    }

    #[inline]
    pub fn w2(&self, q: usize) -> usize {
        self.p_in * self.q + self.q + q
    }

    #[inline]
    pub fn b2(&self) -> usize {
        self.dim() - 1
    }
}

/// Structured view of the network parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct EnnParams {
    pub w1: Array2<f64>,
    pub b1: Array1<f64>,
    pub w2: Array1<f64>,
    pub b2: f64,
}

impl EnnParams {
    pub fn zeros(arch: &EnnArchitecture) -> Self {
        Self {
            w1: Array2::zeros((arch.p_in(), arch.q_hidden())),
            b1: Array1::zeros(arch.q_hidden()),
            w2: Array1::zeros(arch.q_hidden()),
            b2: 0.0,
        }
    }

    pub fn conforms_to(&self, arch: &EnnArchitecture) -> bool {
        self.w1.dim() == (arch.p_in(), arch.q_hidden())
            && self.b1.len() == arch.q_hidden()
            && self.w2.len() == arch.q_hidden()
    }

    /// All masked-out w1 entries are exactly 0.
    pub fn respects_mask(&self, arch: &EnnArchitecture) -> bool {
        for p in 0..arch.p_in() {
            for q in 0..arch.q_hidden() {
                if !arch.is_active(p, q) && self.w1[[p, q]] != 0.0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(self.w1.len() + 2 * self.b1.len() + 1);
        flat.extend(self.w1.iter());
        flat.extend(self.b1.iter());
        flat.extend(self.w2.iter());
        flat.push(self.b2);
        flat
    }

    pub fn unflatten(arch: &EnnArchitecture, flat: &[f64]) -> Result<Self, ModelError> {
        let lay = FlatLayout::for_arch(arch);
        if flat.len() != lay.dim() {
            return Err(ModelError::DimensionMismatch(format!(
                "flat parameter vector has length {}, architecture needs {}",
                flat.len(),
                lay.dim()
            )));
        }
        let (p_in, q) = (lay.p_in, lay.q);
        let w1 = Array2::from_shape_vec((p_in, q), flat[..p_in * q].to_vec())
            .expect("shape matches slice length");
        let b1 = Array1::from_vec(flat[p_in * q..p_in * q + q].to_vec());
        let w2 = Array1::from_vec(flat[p_in * q + q..p_in * q + 2 * q].to_vec());
        let b2 = flat[lay.b2()];
        Ok(Self { w1, b1, w2, b2 })
    }
}
