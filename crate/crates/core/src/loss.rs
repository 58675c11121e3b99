//! Risk bounds for continuous losses from scalar summaries of a model.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Scalar summaries feeding the bounds. Optional fields are only required by
/// the bound that uses them.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossBoundInputs<T = f64> {
    /// Optimal risk without an adversary, `R*_0`.
    pub r0: T,
    /// `inf_w E ||∇_x ℓ||_*`.
    pub grad_dual_norm_exp: Option<T>,
    /// Lipschitz constant of the loss in `x` at `w*_0`.
    pub lipschitz: Option<T>,
    /// Smallest eigenvalue of the risk Hessian at `w*_0`.
    pub hessian_min_eig: Option<T>,
    pub eps: T,
}

fn nonneg<T: Real>(name: &str, v: T) -> Result<T> {
    if !(v >= T::zero()) || !v.is_finite() {
        return invalid(format!("{name} must be finite and nonnegative, got {v}"));
    }
    Ok(v)
}

fn required<T: Real>(name: &str, v: Option<T>) -> Result<T> {
    nonneg(name, v.ok_or_else(|| Error::InvalidParameter(format!("missing {name}")))?)
}

impl<T: Real> LossBoundInputs<T> {
    fn base(&self) -> Result<(T, T)> {
        Ok((nonneg("r0", self.r0)?, nonneg("eps", self.eps)?))
    }
}

/// `r0 + ε · E||∇_x ℓ||_*`: a lower bound for convex-in-input losses.
pub fn convex_lower_bound<T: Real>(inputs: &LossBoundInputs<T>) -> Result<T> {
    let (r0, eps) = inputs.base()?;
    Ok(r0 + eps * required("grad_dual_norm_exp", inputs.grad_dual_norm_exp)?)
}

/// `r0 + ε · L`: an upper bound for either adversary.
pub fn lipschitz_upper_bound<T: Real>(inputs: &LossBoundInputs<T>) -> Result<T> {
    let (r0, eps) = inputs.base()?;
    Ok(r0 + eps * required("lipschitz", inputs.lipschitz)?)
}

/// `sqrt(ε L / λ_min)`: bound on `||w*_ε - w*_0||` for small `ε`.
pub fn deviation_bound<T: Real>(inputs: &LossBoundInputs<T>) -> Result<T> {
    let (_, eps) = inputs.base()?;
    let l = required("lipschitz", inputs.lipschitz)?;
    let lambda = inputs.hessian_min_eig.ok_or_else(|| Error::InvalidParameter("missing hessian_min_eig".into()))?;
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return invalid(format!("hessian_min_eig must be positive, got {lambda}"));
    }
    Ok((eps * l / lambda).sqrt())
}

/// All bounds that the supplied fields allow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBoundReport<T = f64> {
    pub eps: T,
    pub lower: Option<T>,
    pub upper: Option<T>,
    pub deviation: Option<T>,
    /// `ε L > λ_min`: outside the regime where the deviation bound is
    /// expected to hold. Heuristic.
    pub deviation_warning: bool,
}

pub fn loss_bounds<T: Real>(inputs: &LossBoundInputs<T>) -> Result<LossBoundReport<T>> {
    inputs.base()?;
    let lower = inputs.grad_dual_norm_exp.map(|_| convex_lower_bound(inputs)).transpose()?;
    let upper = inputs.lipschitz.map(|_| lipschitz_upper_bound(inputs)).transpose()?;
    let deviation = match (inputs.lipschitz, inputs.hessian_min_eig) {
        (Some(_), Some(_)) => Some(deviation_bound(inputs)?),
        _ => None,
    };
    let deviation_warning = match (inputs.lipschitz, inputs.hessian_min_eig) {
        (Some(l), Some(h)) => inputs.eps * l > h,
        _ => false,
    };
    Ok(LossBoundReport { eps: inputs.eps, lower, upper, deviation, deviation_warning })
}

/// Squared loss `½ (x - w)²` with `x = 0` w.p. 0.7 and `x = 1` w.p. 0.3,
/// against an adversary moving `x` by at most `ε <= 0.5`.
///
/// For `w ∈ [0, 1]` the adversarial risk is
/// `0.35 (w + ε)² + 0.15 (1 - w + ε)²`, minimized at `w*_ε = 0.3 - 0.4ε` with
/// `R*_ε = 0.105 + 0.42ε + 0.42ε²`. The summaries are `E|x - w|` minimized
/// at `w = 0` (0.3), the largest `|x - w*_0|` over `x ∈ [-0.5, 1.5]` (1.2)
/// and the risk curvature (1).
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadraticToy;

impl QuadraticToy {
    pub const MAX_EPS: f64 = 0.5;

    pub fn w_star(&self, eps: f64) -> f64 {
        0.3 - 0.4 * eps
    }

    pub fn adversarial_risk(&self, w: f64, eps: f64) -> f64 {
        0.35 * (w + eps).powi(2) + 0.15 * (1.0 - w + eps).powi(2)
    }

    pub fn optimal_risk(&self, eps: f64) -> f64 {
        0.105 + 0.42 * eps + 0.42 * eps * eps
    }

    pub fn inputs(&self, eps: f64) -> LossBoundInputs<f64> {
        LossBoundInputs {
            r0: self.optimal_risk(0.0),
            grad_dual_norm_exp: Some(0.3),
            lipschitz: Some(1.2),
            hessian_min_eig: Some(1.0),
            eps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(r0: f64, g: f64, l: f64, h: f64, eps: f64) -> LossBoundInputs<f64> {
        LossBoundInputs { r0, grad_dual_norm_exp: Some(g), lipschitz: Some(l), hessian_min_eig: Some(h), eps }
    }

    #[test]
    fn examples() {
        assert_eq!(convex_lower_bound(&inputs(0.1, 2.0, 1.0, 1.0, 0.0)).unwrap(), 0.1);
        assert!((convex_lower_bound(&inputs(0.1, 2.0, 1.0, 1.0, 0.05)).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(convex_lower_bound(&inputs(0.1, 0.0, 1.0, 1.0, 0.3)).unwrap(), 0.1);
        assert!((lipschitz_upper_bound(&inputs(0.1, 0.0, 3.0, 1.0, 0.1)).unwrap() - 0.4).abs() < 1e-15);
        assert!((deviation_bound(&inputs(0.0, 0.0, 1.0, 4.0, 0.04)).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(deviation_bound(&inputs(0.0, 0.0, 1.0, 4.0, 0.0)).unwrap(), 0.0);
        let a = deviation_bound(&inputs(0.0, 0.0, 1.0, 4.0, 0.02)).unwrap();
        let b = deviation_bound(&inputs(0.0, 0.0, 1.0, 4.0, 0.04)).unwrap();
        assert!((b / a - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn errors() {
        let mut i = inputs(0.1, 1.0, 1.0, 0.0, 0.1);
        assert!(deviation_bound(&i).is_err());
        i.lipschitz = None;
        assert!(lipschitz_upper_bound(&i).is_err());
        i.r0 = -1.0;
        assert!(convex_lower_bound(&i).is_err());
    }

    #[test]
    fn toy_closed_forms() {
        let toy = QuadraticToy;
        for k in 0..=10 {
            let eps = 0.05 * k as f64;
            let w = toy.w_star(eps);
            assert!((toy.adversarial_risk(w, eps) - toy.optimal_risk(eps)).abs() < 1e-15);
            for dw in [-1e-3, 1e-3] {
                assert!(toy.adversarial_risk(w + dw, eps) > toy.optimal_risk(eps));
            }
            let r = loss_bounds(&toy.inputs(eps)).unwrap();
            assert!(!r.deviation_warning);
        }
    }
}
