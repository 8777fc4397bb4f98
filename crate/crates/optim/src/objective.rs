/// A differentiable objective.  Implementations must be deterministic and
/// safe to evaluate concurrently (the multi-start warmups may share one
/// instance across runs).
pub trait Objective: Sync {
    fn dim(&self) -> usize;

    /// Writes the gradient at `x` into `grad` and returns the value.
    fn value_grad(&self, x: &[f64], grad: &mut [f64]) -> f64;
}

/// Adapter turning a closure into an [`Objective`].
pub struct FnObjective<F> {
    dim: usize,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64], &mut [f64]) -> f64 + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64], &mut [f64]) -> f64 + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn value_grad(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        (self.f)(x, grad)
    }
}
