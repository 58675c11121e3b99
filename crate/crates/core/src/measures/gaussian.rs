use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::interval::IntervalSet;
use crate::measures::family::{Distribution1d, UnivariateFamily};
use crate::measures::special::q_tail;
use crate::region::{Halfspace, SetMass};
use crate::scalar::Real;

/// Isotropic Gaussian `N(mu, sigma^2 I_d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoGaussian<T = f64> {
    mu: Vec<T>,
    sigma: T,
}

impl<T: Real> IsoGaussian<T> {
    pub fn new(mu: Vec<T>, sigma: T) -> Result<Self> {
        if mu.is_empty() {
            return invalid("isotropic gaussian needs dim >= 1");
        }
        if !(sigma > T::zero()) || !sigma.is_finite() || mu.iter().any(|m| !m.is_finite()) {
            return invalid(format!("isotropic gaussian needs finite mean and sigma > 0, got sigma = {sigma}"));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> &[T] {
        &self.mu
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    /// Law of the first coordinate; meaningful as the whole law when `dim == 1`.
    pub fn marginal_1d(&self) -> UnivariateFamily<T> {
        UnivariateFamily::Gaussian { mu: self.mu[0], sigma: self.sigma }
    }
}

/// `P(w . X >= b)` for `X ~ N(mu, sigma^2 I)`.
pub(crate) fn gaussian_halfspace_mass<T: Real>(mu: &[T], sigma: T, h: &Halfspace<T>) -> T {
    let proj = h.w.iter().zip(mu).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    let wn = h.w.iter().fold(T::zero(), |acc, &a| acc + a * a).sqrt();
    if wn == T::zero() {
        return if h.b <= T::zero() { T::one() } else { T::zero() };
    }
    q_tail((h.b - proj) / (sigma * wn))
}

impl<T: Real> SetMass<T> for IsoGaussian<T> {
    fn dim(&self) -> usize {
        self.mu.len()
    }

    fn total_mass(&self) -> T {
        T::one()
    }

    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim() });
        }
        self.marginal_1d().interval_mass(set)
    }

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T> {
        h.check_dim(self.dim())?;
        Ok(gaussian_halfspace_mass(&self.mu, self.sigma, h))
    }
}

impl<T: Real> SetMass<T> for UnivariateFamily<T> {
    fn dim(&self) -> usize {
        1
    }

    fn total_mass(&self) -> T {
        T::one()
    }

    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T> {
        let m = set.intervals().iter().fold(T::zero(), |acc, iv| acc + self.mass_of(iv.lo.value(), iv.hi.value()));
        Ok(if m > T::one() { T::one() } else { m })
    }

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T> {
        h.check_dim(1)?;
        let w = h.w[0];
        Ok(if w > T::zero() {
            self.sf(h.b / w)
        } else if w < T::zero() {
            self.cdf(h.b / w)
        } else if h.b <= T::zero() {
            T::one()
        } else {
            T::zero()
        })
    }
}
