//! Asymmetric least-squares (ALS) loss and its derivative in the fit.

use crate::level::ExpectileLevel;

/// ALS loss of a scalar fit `t` against an observation `y`:
/// `(1 - tau) * (y - t)^2` when `y < t`, `tau * (y - t)^2` otherwise.
///
/// Nonnegative, zero exactly when `y == t`, and convex in `t`.
/// Panics on non-finite inputs.
#[inline]
pub fn als_loss(y: f64, t: f64, level: ExpectileLevel) -> f64 {
    assert!(y.is_finite() && t.is_finite(), "als_loss requires finite inputs");
    let r = y - t;
    level.weight(y, t) * r * r
}

/// Derivative of [`als_loss`] with respect to the fit `t`.
///
/// `2 * (1 - tau) * (t - y)` when `y < t`, `2 * tau * (t - y)` otherwise;
/// both branches vanish at `y == t`, so the derivative is continuous.
/// Panics on non-finite inputs.
#[inline]
pub fn als_loss_dt(y: f64, t: f64, level: ExpectileLevel) -> f64 {
    assert!(y.is_finite() && t.is_finite(), "als_loss_dt requires finite inputs");
    2.0 * level.weight(y, t) * (t - y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(tau: f64) -> ExpectileLevel {
        ExpectileLevel::new(tau).unwrap()
    }

    #[test]
    fn loss_branches() {
        assert_eq!(als_loss(1.0, 0.0, level(0.9)), 0.9);
        assert!((als_loss(0.0, 1.0, level(0.9)) - 0.1).abs() < 1e-15);
        assert_eq!(als_loss(3.7, 3.7, level(0.25)), 0.0);
        assert_eq!(als_loss(2.0, 0.0, level(0.5)), 2.0);
    }

    #[test]
    fn derivative_branches() {
        assert!((als_loss_dt(0.0, 1.0, level(0.9)) - 0.2).abs() < 1e-15);
        assert!((als_loss_dt(1.0, 0.0, level(0.9)) - (-1.8)).abs() < 1e-15);
        assert_eq!(als_loss_dt(2.5, 2.5, level(0.1)), 0.0);
        assert_eq!(als_loss_dt(2.5, 2.5, level(0.9)), 0.0);
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn rejects_non_finite_observation() {
        als_loss(f64::NAN, 0.0, level(0.5));
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn rejects_non_finite_fit() {
        als_loss_dt(0.0, f64::INFINITY, level(0.5));
    }
}
