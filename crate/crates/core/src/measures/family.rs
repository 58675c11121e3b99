use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::measures::special::{phi_pdf, phi_quantile, q_tail};
use crate::scalar::Real;

/// A univariate law with an evaluable cdf and upper tail.
///
/// Interval masses are computed from whichever tail keeps relative
/// precision, so tiny masses far in either tail are not lost to
/// cancellation.
pub trait Distribution1d<T: Real> {
    fn cdf(&self, x: T) -> T;

    /// `1 - cdf(x)`.
    fn sf(&self, x: T) -> T;

    fn median(&self) -> T;

    /// Mass of the closed interval `[lo, hi]` (absolutely continuous laws:
    /// open or closed makes no difference).
    fn mass_of(&self, lo: T, hi: T) -> T {
        if !(lo <= hi) {
            return T::zero();
        }
        let med = self.median();
        let m = if hi <= med {
            self.cdf(hi) - self.cdf(lo)
        } else if lo >= med {
            self.sf(lo) - self.sf(hi)
        } else {
            T::one() - self.cdf(lo) - self.sf(hi)
        };
        if m < T::zero() {
            T::zero()
        } else {
            m
        }
    }
}

/// Parametric univariate families with closed-form transport solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum UnivariateFamily<T = f64> {
    Gaussian {
        mu: T,
        sigma: T,
    },
    Uniform {
        a: T,
        b: T,
    },
    /// Symmetric triangle on `[center - halfwidth, center + halfwidth]`.
    Triangular {
        center: T,
        halfwidth: T,
    },
}

impl<T: Real> UnivariateFamily<T> {
    pub fn gaussian(mu: T, sigma: T) -> Result<Self> {
        if !(sigma > T::zero()) || !sigma.is_finite() || !mu.is_finite() {
            return invalid(format!("gaussian needs finite mu and sigma > 0, got ({mu}, {sigma})"));
        }
        Ok(Self::Gaussian { mu, sigma })
    }

    pub fn uniform(a: T, b: T) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return invalid(format!("uniform needs finite a < b, got [{a}, {b}]"));
        }
        Ok(Self::Uniform { a, b })
    }

    pub fn triangular(center: T, halfwidth: T) -> Result<Self> {
        if !(halfwidth > T::zero()) || !halfwidth.is_finite() || !center.is_finite() {
            return invalid(format!("triangular needs finite center and halfwidth > 0, got ({center}, {halfwidth})"));
        }
        Ok(Self::Triangular { center, halfwidth })
    }

    pub fn pdf(&self, x: T) -> T {
        match *self {
            Self::Gaussian { mu, sigma } => phi_pdf((x - mu) / sigma) / sigma,
            Self::Uniform { a, b } => {
                if x >= a && x <= b {
                    T::one() / (b - a)
                } else {
                    T::zero()
                }
            }
            Self::Triangular { center, halfwidth } => {
                let u = (x - center).abs();
                if u >= halfwidth {
                    T::zero()
                } else {
                    (halfwidth - u) / (halfwidth * halfwidth)
                }
            }
        }
    }

    /// Closed support; infinite for Gaussians.
    pub fn support(&self) -> (T, T) {
        match *self {
            Self::Gaussian { .. } => (T::neg_infinity(), T::infinity()),
            Self::Uniform { a, b } => (a, b),
            Self::Triangular { center, halfwidth } => (center - halfwidth, center + halfwidth),
        }
    }

    pub fn max_pdf(&self) -> T {
        match *self {
            Self::Gaussian { sigma, .. } => phi_pdf(T::zero()) / sigma,
            Self::Uniform { a, b } => T::one() / (b - a),
            Self::Triangular { halfwidth, .. } => T::one() / halfwidth,
        }
    }

    /// Generalized inverse `inf { x : F(x) >= t }`, except that bounded
    /// families return their left endpoint at `t = 0`.
    pub fn quantile(&self, t: T) -> Result<T> {
        if !(t >= T::zero() && t <= T::one()) {
            return Err(Error::InvalidParameter(format!("quantile argument {t} outside [0, 1]")));
        }
        Ok(match *self {
            Self::Gaussian { mu, sigma } => mu + sigma * phi_quantile(t),
            Self::Uniform { a, b } => a + (b - a) * t,
            Self::Triangular { center, halfwidth } => {
                let half = T::lit(0.5);
                if t <= half {
                    center - halfwidth + halfwidth * (t + t).sqrt()
                } else {
                    center + halfwidth - halfwidth * ((T::one() - t) * T::lit(2.0)).sqrt()
                }
            }
        })
    }

    pub fn mean(&self) -> T {
        match *self {
            Self::Gaussian { mu, .. } => mu,
            Self::Uniform { a, b } => (a + b) * T::lit(0.5),
            Self::Triangular { center, .. } => center,
        }
    }

    /// Spread parameter used for ordering ("wider" class): sigma, interval
    /// length, or halfwidth.
    pub fn scale(&self) -> T {
        match *self {
            Self::Gaussian { sigma, .. } => sigma,
            Self::Uniform { a, b } => b - a,
            Self::Triangular { halfwidth, .. } => halfwidth,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Uniform { .. } => "uniform",
            Self::Triangular { .. } => "triangular",
        }
    }
}

impl<T: Real> Distribution1d<T> for UnivariateFamily<T> {
    fn cdf(&self, x: T) -> T {
        match *self {
            Self::Gaussian { mu, sigma } => q_tail((mu - x) / sigma),
            Self::Uniform { a, b } => {
                if x <= a {
                    T::zero()
                } else if x >= b {
                    T::one()
                } else {
                    (x - a) / (b - a)
                }
            }
            Self::Triangular { center, halfwidth } => {
                let lo = center - halfwidth;
                let hi = center + halfwidth;
                let two_d2 = T::lit(2.0) * halfwidth * halfwidth;
                if x <= lo {
                    T::zero()
                } else if x >= hi {
                    T::one()
                } else if x <= center {
                    (x - lo) * (x - lo) / two_d2
                } else {
                    T::one() - (hi - x) * (hi - x) / two_d2
                }
            }
        }
    }

    fn sf(&self, x: T) -> T {
        match *self {
            Self::Gaussian { mu, sigma } => q_tail((x - mu) / sigma),
            Self::Uniform { a, b } => {
                if x <= a {
                    T::one()
                } else if x >= b {
                    T::zero()
                } else {
                    (b - x) / (b - a)
                }
            }
            Self::Triangular { center, halfwidth } => {
                let lo = center - halfwidth;
                let hi = center + halfwidth;
                let two_d2 = T::lit(2.0) * halfwidth * halfwidth;
                if x <= lo {
                    T::one()
                } else if x >= hi {
                    T::zero()
                } else if x >= center {
                    (hi - x) * (hi - x) / two_d2
                } else {
                    T::one() - (x - lo) * (x - lo) / two_d2
                }
            }
        }
    }

    fn median(&self) -> T {
        self.mean()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let n = n + n % 2;
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64);
        }
        s * h / 3.0
    }

    fn families() -> Vec<UnivariateFamily<f64>> {
        vec![
            UnivariateFamily::gaussian(0.3, 1.7).unwrap(),
            UnivariateFamily::uniform(-1.0, 2.5).unwrap(),
            UnivariateFamily::triangular(0.5, 0.8).unwrap(),
        ]
    }

    #[test]
    fn spec_examples() {
        let u = UnivariateFamily::uniform(0.0, 1.0).unwrap();
        assert_eq!(u.mass_of(0.25, 0.75), 0.5);
        let g = UnivariateFamily::gaussian(0.0, 1.0).unwrap();
        assert_eq!(g.cdf(0.0), 0.5);
        let t = UnivariateFamily::triangular(0.0, 1.0).unwrap();
        assert_eq!(t.pdf(0.0), 1.0);
    }

    #[test]
    fn pdf_integrates_to_one() {
        for f in families() {
            let (lo, hi) = match f {
                UnivariateFamily::Gaussian { mu, sigma } => (mu - 12.0 * sigma, mu + 12.0 * sigma),
                _ => f.support(),
            };
            // Split at kinks so Simpson sees smooth pieces.
            let mid = f.mean();
            let total = simpson(|x| f.pdf(x), lo, mid, 20_000) + simpson(|x| f.pdf(x), mid, hi, 20_000);
            assert!((total - 1.0).abs() < 1e-6, "{f:?}: {total}");
        }
    }

    #[test]
    fn quantile_inverts_cdf_on_support() {
        for f in families() {
            for i in 1..200 {
                let t = i as f64 / 200.0;
                let x = f.quantile(t).unwrap();
                assert!((f.cdf(x) - t).abs() < 1e-9, "{f:?} t={t}");
                assert!((f.quantile(f.cdf(x)).unwrap() - x).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn quantile_rejects_out_of_range() {
        let g = UnivariateFamily::gaussian(0.0, 1.0).unwrap();
        assert!(g.quantile(1.01).is_err());
        assert!(g.quantile(-0.1).is_err());
        assert_eq!(g.quantile(0.0).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn constructors_validate() {
        assert!(UnivariateFamily::gaussian(0.0, 0.0).is_err());
        assert!(UnivariateFamily::uniform(1.0, 1.0).is_err());
        assert!(UnivariateFamily::triangular(0.0, -1.0).is_err());
        assert!(UnivariateFamily::gaussian(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn cdf_and_sf_are_complementary() {
        for f in families() {
            for i in -40..40 {
                let x = i as f64 * 0.1;
                assert!((f.cdf(x) + f.sf(x) - 1.0).abs() < 1e-15);
            }
        }
    }
}
