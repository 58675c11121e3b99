//! Decision regions: interval unions on the line and halfspaces in R^d,
//! together with their ε-expansions and the mass functionals evaluated on
//! them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::interval::IntervalSet;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::metric::Metric;
use crate::scalar::Real;

/// `{x : w . x >= b}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace<T = f64> {
    pub w: Vec<T>,
    pub b: T,
}

impl<T: Real> Halfspace<T> {
    pub fn new(w: Vec<T>, b: T) -> Result<Self> {
        if w.is_empty() || w.iter().any(|v| !v.is_finite()) || !b.is_finite() {
            return invalid("halfspace needs a finite nonempty normal and finite offset");
        }
        Ok(Self { w, b })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.w.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.w.len() });
        }
        Ok(())
    }

    pub fn score(&self, x: &[T]) -> T {
        self.w.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.score(x) >= self.b
    }

    /// `H^eps = {w . x >= b - eps ||w||_*}`.
    pub fn expand(&self, eps: T, metric: Metric) -> Self {
        Self { w: self.w.clone(), b: self.b - eps * metric.dual_norm(&self.w) }
    }

    /// `H^{-eps} = {w . x >= b + eps ||w||_*}`.
    pub fn thin(&self, eps: T, metric: Metric) -> Self {
        Self { w: self.w.clone(), b: self.b + eps * metric.dual_norm(&self.w) }
    }

    /// Closed complement `{-w . x >= -b}`.
    pub fn complement(&self) -> Self {
        Self { w: self.w.iter().map(|&v| -v).collect(), b: -self.b }
    }
}

impl<T: fmt::Display> fmt::Display for Halfspace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("w=[")?;
        for (k, v) in self.w.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "];b={}", self.b)
    }
}

/// A closed decision region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region<T = f64> {
    Empty,
    Full,
    Intervals { set: IntervalSet<T> },
    Halfspace { halfspace: Halfspace<T> },
}

impl<T: Real> Region<T> {
    pub fn intervals(set: IntervalSet<T>) -> Self {
        if set.is_empty() {
            Region::Empty
        } else if set.is_full() {
            Region::Full
        } else {
            Region::Intervals { set }
        }
    }

    pub fn halfspace(halfspace: Halfspace<T>) -> Self {
        Region::Halfspace { halfspace }
    }

    pub fn expand(&self, eps: T, metric: Metric) -> Result<Self> {
        Ok(match self {
            Region::Empty => Region::Empty,
            Region::Full => Region::Full,
            Region::Intervals { set } => Region::intervals(set.expand(eps)?),
            Region::Halfspace { halfspace } => Region::halfspace(halfspace.expand(eps, metric)),
        })
    }

    pub fn thin(&self, eps: T, metric: Metric) -> Result<Self> {
        Ok(match self {
            Region::Empty => Region::Empty,
            Region::Full => Region::Full,
            Region::Intervals { set } => Region::intervals(set.thin(eps)?),
            Region::Halfspace { halfspace } => Region::halfspace(halfspace.thin(eps, metric)),
        })
    }

    pub fn complement(&self) -> Self {
        match self {
            Region::Empty => Region::Full,
            Region::Full => Region::Empty,
            Region::Intervals { set } => Region::intervals(set.complement()),
            Region::Halfspace { halfspace } => Region::halfspace(halfspace.complement()),
        }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        match self {
            Region::Empty => false,
            Region::Full => true,
            Region::Intervals { set } => x.len() == 1 && set.contains(x[0]),
            Region::Halfspace { halfspace } => halfspace.contains(x),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Region::Empty | Region::Full)
    }
}

impl<T: fmt::Display> fmt::Display for Region<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Empty => f.write_str("empty"),
            Region::Full => f.write_str("-inf..inf"),
            Region::Intervals { set } => write!(f, "{set}"),
            Region::Halfspace { halfspace } => write!(f, "{halfspace}"),
        }
    }
}

/// A finite measure whose masses of interval unions and halfspaces can be
/// evaluated.
pub trait SetMass<T: Real> {
    fn dim(&self) -> usize;

    fn total_mass(&self) -> T;

    /// Mass of a union of closed intervals; one-dimensional measures only.
    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T>;

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T>;

    fn region_mass(&self, region: &Region<T>) -> Result<T> {
        match region {
            Region::Empty => Ok(T::zero()),
            Region::Full => Ok(self.total_mass()),
            Region::Intervals { set } => self.interval_mass(set),
            Region::Halfspace { halfspace } => self.halfspace_mass(halfspace),
        }
    }
}

impl<T: Real> SetMass<T> for EmpiricalMeasure<T> {
    fn dim(&self) -> usize {
        EmpiricalMeasure::dim(self)
    }

    fn total_mass(&self) -> T {
        EmpiricalMeasure::total_mass(self)
    }

    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T> {
        Ok(set.atom_mass(self.values_1d()?, self.weights()))
    }

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T> {
        h.check_dim(self.dim())?;
        Ok(self.mass_where(|p| h.contains(p)))
    }
}

/// Adversarial 0-1 risk of the classifier deciding class 1 on `region`, with
/// balanced priors: `½ (p0(A^eps) + p1((A^c)^eps))`.
pub fn region_risk<T: Real>(
    p0: &impl SetMass<T>,
    p1: &impl SetMass<T>,
    region: &Region<T>,
    metric: Metric,
    eps: T,
) -> Result<T> {
    if p0.dim() != p1.dim() {
        return Err(Error::DimensionMismatch { expected: p0.dim(), got: p1.dim() });
    }
    let err0 = p0.region_mass(&region.expand(eps, metric)?)?;
    let err1 = p1.region_mass(&region.complement().expand(eps, metric)?)?;
    Ok(T::lit(0.5) * (err0 + err1))
}
