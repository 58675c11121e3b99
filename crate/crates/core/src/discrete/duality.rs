//! Strassen-type lower bounds `μ(A^{-ε}) - ν(A^ε) <= D_ε(μ, ν)`.

use crate::discrete::exact::{Admissible, Witness};
use crate::error::{Error, Result};
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::metric::Metric;
use crate::region::{Region, SetMass};
use crate::scalar::{Real, Scalar};

/// `μ(A^{-ε}) - ν(A^ε)` for measures with evaluable set masses.
pub fn strassen_gap<T: Real>(
    mu: &impl SetMass<T>,
    nu: &impl SetMass<T>,
    a: &Region<T>,
    metric: Metric,
    eps: T,
) -> Result<T> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
    }
    if !(eps >= T::zero()) {
        return Err(Error::NegativeEps(eps.to_f64_lossy()));
    }
    Ok(mu.region_mass(&a.thin(eps, metric)?)? - nu.region_mass(&a.expand(eps, metric)?)?)
}

/// Dual value of a witness between finite measures, computed without
/// rounding for exact scalar types.
pub fn witness_gap<T: Scalar>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    metric: Metric,
    eps: T,
    witness: &Witness<T>,
) -> Result<T> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
    }
    if !(eps >= T::zero()) {
        return Err(Error::NegativeEps(eps.to_f64_lossy()));
    }
    match witness {
        Witness::Intervals { set } => {
            let inner = set.thin(eps)?.atom_mass(mu.values_1d()?, mu.weights());
            let outer = set.expand(eps)?.atom_mass(nu.values_1d()?, nu.weights());
            Ok(inner - outer)
        }
        Witness::Atoms { indices } => {
            let adm = Admissible::new(metric, mu.dim(), eps);
            let mut inner = T::zero();
            for &i in indices {
                if i >= mu.len() {
                    return Err(Error::InvalidParameter(format!("witness atom {i} out of range")));
                }
                inner = inner + mu.weight(i);
            }
            let outer = nu.mass_where(|y| indices.iter().any(|&i| adm.test(mu.point(i), y)));
            Ok(inner - outer)
        }
        Witness::Halfspace { halfspace } => {
            if halfspace.w.len() != mu.dim() {
                return Err(Error::DimensionMismatch { expected: mu.dim(), got: halfspace.w.len() });
            }
            let side = HalfspaceTest::new(&halfspace.w, halfspace.b, metric, eps);
            Ok(mu.mass_where(|x| side.in_thinning(x)) - nu.mass_where(|y| side.in_expansion(y)))
        }
    }
}

/// Membership in `H^{±ε}` for `H = {w . x >= b}` using only field operations:
/// for the Euclidean metric the comparison `s >= ±ε ||w||` is decided on
/// squares.
struct HalfspaceTest<'a, T> {
    w: &'a [T],
    b: T,
    metric: Metric,
    eps: T,
    /// `||w||_*` for the Chebyshev metric, `||w||_2^2` for the Euclidean one.
    norm: T,
}

impl<'a, T: Scalar> HalfspaceTest<'a, T> {
    fn new(w: &'a [T], b: T, metric: Metric, eps: T) -> Self {
        let norm = match metric {
            Metric::Chebyshev => w.iter().fold(T::zero(), |acc, v| acc + v.abs()),
            Metric::Euclidean => w.iter().fold(T::zero(), |acc, &v| acc + v * v),
        };
        Self { w, b, metric, eps, norm }
    }

    fn slack(&self, x: &[T]) -> T {
        self.w.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b) - self.b
    }

    /// `slack >= eps ||w||_*`.
    fn in_thinning(&self, x: &[T]) -> bool {
        let s = self.slack(x);
        match self.metric {
            Metric::Chebyshev => s >= self.eps * self.norm,
            Metric::Euclidean => s >= T::zero() && s * s >= self.eps * self.eps * self.norm,
        }
    }

    /// `slack >= -eps ||w||_*`.
    fn in_expansion(&self, x: &[T]) -> bool {
        let s = self.slack(x);
        match self.metric {
            Metric::Chebyshev => s >= T::zero() - self.eps * self.norm,
            Metric::Euclidean => s >= T::zero() || s * s <= self.eps * self.eps * self.norm,
        }
    }
}
