//! Standard-normal tail, cdf, density and quantile.

use crate::scalar::Real;

/// `Q(x) = 1 - Φ(x)`, evaluated through `erfc` so that upper tails keep
/// full relative precision.
pub fn q_tail<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x == T::infinity() {
        return T::zero();
    }
    if x == T::neg_infinity() {
        return T::one();
    }
    T::lit(0.5) * (x / T::SQRT_2()).erfc()
}

/// Standard-normal cdf `Φ(x) = Q(-x)`.
pub fn phi_cdf<T: Real>(x: T) -> T {
    q_tail(-x)
}

pub fn phi_pdf<T: Real>(x: T) -> T {
    let inv_sqrt_2pi = T::FRAC_1_SQRT_2() * T::FRAC_2_SQRT_PI() * T::lit(0.5);
    inv_sqrt_2pi * (-(x * x) * T::lit(0.5)).exp()
}

/// `Φ⁻¹(p)`; `±∞` at the endpoints and NaN outside `[0, 1]`.
pub fn phi_quantile<T: Real>(p: T) -> T {
    if p.is_nan() || p < T::zero() || p > T::one() {
        return T::nan();
    }
    if p == T::zero() {
        return T::neg_infinity();
    }
    if p == T::one() {
        return T::infinity();
    }
    -T::SQRT_2() * (p + p).erfc_inv()
}
