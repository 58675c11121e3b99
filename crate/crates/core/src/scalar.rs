//! Numeric abstractions shared by every solver.
//!
//! [`Scalar`] is the minimal ordered field needed by the combinatorial
//! solvers (flows, matchings, transportation); it is implemented for `f32`,
//! `f64` and [`Rational64`] so that rational inputs produce exact costs.
//! [`Real`] adds the transcendental functions used by the parametric
//! families and is implemented for `f32` and `f64` only.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Num + Signed + PartialOrd + Copy + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Amount of residual capacity treated as zero by flow solvers.
    /// Zero for exact types.
    fn feasibility_tol() -> Self;

    /// Converts a literal, panicking only if the type cannot represent it at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| panic!("literal {x} not representable"))
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(|| panic!("count {n} not representable"))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_finite_value(self) -> bool {
        true
    }

    /// Exact `numer / denom` representation with a small denominator, if one
    /// exists. Floats qualify only when they are the correctly rounded value
    /// of such a fraction.
    fn to_ratio(self) -> Option<(i64, i64)> {
        None
    }
}

impl Scalar for f64 {
    fn feasibility_tol() -> Self {
        1e-12
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn to_ratio(self) -> Option<(i64, i64)> {
        float_ratio(self, |p, q| p as f64 / q as f64 == self)
    }
}

impl Scalar for f32 {
    fn feasibility_tol() -> Self {
        1e-6
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
    fn to_ratio(self) -> Option<(i64, i64)> {
        float_ratio(self as f64, |p, q| p as f32 / q as f32 == self)
    }
}

impl Scalar for Rational64 {
    fn feasibility_tol() -> Self {
        Rational64::from_integer(0)
    }
    fn to_ratio(self) -> Option<(i64, i64)> {
        Some((*self.numer(), *self.denom()))
    }
}

/// Integer capacities for the flow solvers.
impl Scalar for i64 {
    fn feasibility_tol() -> Self {
        0
    }
    fn to_ratio(self) -> Option<(i64, i64)> {
        Some((self, 1))
    }
}

const MAX_RATIO_DENOM: i64 = 1 << 24;

/// Continued-fraction search for the smallest-denominator fraction whose
/// correctly rounded value is the float at hand (`matches`).
fn float_ratio(x: f64, matches: impl Fn(i64, i64) -> bool) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > (1u64 << 40) as f64 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > (1u64 << 40) as f64 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_RATIO_DENOM {
            return None;
        }
        if matches(h2, k2) {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Floating-point scalars with the special functions needed for Gaussian
/// tails and quantiles.
pub trait Real: Scalar + Float + FloatConst {
    /// Complementary error function.
    fn erfc(self) -> Self;
    /// Inverse of [`Real::erfc`] on `(0, 2)`, polished by Newton steps
    /// against [`Real::erfc`].
    fn erfc_inv(self) -> Self;
}

impl Real for f64 {
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
    fn erfc_inv(self) -> Self {
        polish_erfc_inv(self, statrs::function::erf::erfc_inv(self))
    }
}

impl Real for f32 {
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
    fn erfc_inv(self) -> Self {
        let y = self as f64;
        polish_erfc_inv(y, statrs::function::erf::erfc_inv(y)) as f32
    }
}

/// Newton iterations on `erfc(x) = y`; `erfc'(x) = -2/sqrt(pi) exp(-x^2)`.
fn polish_erfc_inv(y: f64, mut x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    for _ in 0..2 {
        let d = -std::f64::consts::FRAC_2_SQRT_PI * (-x * x).exp();
        if d == 0.0 {
            break;
        }
        let step = (libm::erfc(x) - y) / d;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

pub(crate) fn pmax<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

pub(crate) fn pmin<T: PartialOrd>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_are_exact() {
        assert_eq!(Rational64::lit(0.5), Rational64::new(1, 2));
        assert_eq!(Rational64::from_count(7), Rational64::from_integer(7));
        assert_eq!(Rational64::feasibility_tol(), Rational64::from_integer(0));
    }

    #[test]
    fn erfc_matches_known_values() {
        assert_eq!(Real::erfc(0.0f64), 1.0);
        assert!((Real::erfc(1.0f64) - 0.157_299_207_050_285_13).abs() < 1e-16);
        assert!((Real::erfc(0.5f32) - 0.479_500_12).abs() < 1e-6);
        let y = 0.3f64;
        assert!((Real::erfc(Real::erfc_inv(y)) - y).abs() < 1e-15);
    }

    #[test]
    fn float_ratios_recover_small_fractions() {
        assert_eq!((1.0f64 / 3.0).to_ratio(), Some((1, 3)));
        assert_eq!(0.7f64.to_ratio(), Some((7, 10)));
        assert_eq!(0.25f64.to_ratio(), Some((1, 4)));
        assert_eq!((1.0f64 / 4001.0).to_ratio(), Some((1, 4001)));
        assert_eq!(3.0f64.to_ratio(), Some((3, 1)));
        assert_eq!(std::f64::consts::PI.to_ratio(), None);
        assert_eq!(Rational64::new(2, 6).to_ratio(), Some((1, 3)));
        assert_eq!((0.1f32).to_ratio(), Some((1, 10)));
    }

    #[test]
    fn clamp_reports_excess() {}
}
