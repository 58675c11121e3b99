//! Two centered Gaussians classified by a symmetric band `[-w, w]`.

use crate::analytic::check_eps;
use crate::error::{invalid, Result};
use crate::measures::special::phi_cdf;
use crate::scalar::Real;

/// Optimal band half-width `w_ε` and risk for `N(0, sigma0²)` against
/// `N(0, sigma1²)`, `sigma0 > sigma1`:
///
/// `w_ε = w_0 sqrt(1 + ε²(k² - 1)/w_0²) + εk`, `k = (σ0² + σ1²)/(σ0² - σ1²)`,
/// `R = ½ [1 - 2 (Φ_1(w_ε - ε) - Φ_0(w_ε + ε))]`,
///
/// where `w_0` is the positive crossing of the two centered densities.
pub fn motivating_example<T: Real>(sigma0: T, sigma1: T, eps: T) -> Result<(T, T)> {
    check_eps(eps)?;
    if !(sigma0 > sigma1 && sigma1 > T::zero()) || !sigma0.is_finite() {
        return invalid(format!("need sigma0 > sigma1 > 0, got {sigma0}, {sigma1}"));
    }
    let (v0, v1) = (sigma0 * sigma0, sigma1 * sigma1);
    let two = T::lit(2.0);
    let w0 = (two * v0 * v1 * (sigma0 / sigma1).ln() / (v0 - v1)).sqrt();
    let k = (v0 + v1) / (v0 - v1);
    let w = w0 * (T::one() + eps * eps * (k * k - T::one()) / (w0 * w0)).sqrt() + eps * k;
    let risk = T::lit(0.5) * (T::one() - two * (phi_cdf((w - eps) / sigma1) - phi_cdf((w + eps) / sigma0)));
    Ok((w, risk))
}
