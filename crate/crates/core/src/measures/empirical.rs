use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Scalar;

/// Finite weighted point cloud in `dim` dimensions.
///
/// Weights are kept unnormalized; `total_mass` is recorded explicitly so
/// sub-probability restrictions are representable. Coordinates are stored
/// row-major in one buffer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMeasure<T = f64> {
    dim: usize,
    coords: Vec<T>,
    weights: Vec<T>,
    total_mass: T,
}

impl<T: Scalar> EmpiricalMeasure<T> {
    pub fn new(points: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or(Error::EmptyMeasure)?;
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords, weights)
    }

    /// Uniform weights `1/n`.
    pub fn uniform(points: Vec<Vec<T>>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::EmptyMeasure);
        }
        let w = T::one() / T::from_count(n);
        Self::new(points, vec![w; n])
    }

    /// One-dimensional measure with uniform weights.
    pub fn uniform_1d(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        let w = T::one() / T::from_count(values.len());
        Self::from_flat(1, values.to_vec(), vec![w; values.len()])
    }

    pub fn weighted_1d(values: &[T], weights: &[T]) -> Result<Self> {
        Self::from_flat(1, values.to_vec(), weights.to_vec())
    }

    pub fn from_flat(dim: usize, coords: Vec<T>, weights: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return invalid("dimension must be positive");
        }
        if weights.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if coords.len() != dim * weights.len() {
            return invalid(format!(
                "{} coordinates do not form {} points of dimension {dim}",
                coords.len(),
                weights.len()
            ));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite_value()) {
            return invalid(format!("non-finite coordinate {c}"));
        }
        let mut total = T::zero();
        for &w in &weights {
            if !(w >= T::zero()) || !w.is_finite_value() {
                return invalid(format!("weights must be finite and nonnegative, got {w}"));
            }
            total = total + w;
        }
        Ok(Self { dim, coords, weights, total_mass: total })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn total_mass(&self) -> T {
        self.total_mass
    }

    pub fn is_uniform(&self) -> bool {
        let w0 = self.weights[0];
        self.weights.iter().all(|&w| w == w0)
    }

    pub fn is_probability(&self, tol: T) -> bool {
        (self.total_mass - T::one()).abs() <= tol
    }

    /// Mass of the points satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&[T]) -> bool) -> T {
        self.points().zip(&self.weights).filter(|(p, _)| pred(p)).fold(T::zero(), |acc, (_, &w)| acc + w)
    }

    /// Restriction to a subset of atoms (indices into this measure).
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        let mut weights = Vec::with_capacity(indices.len());
        for &i in indices {
            coords.extend_from_slice(self.point(i));
            weights.push(self.weights[i]);
        }
        Self::from_flat(self.dim, coords, weights)
    }

    /// Same points with uniform weights.
    pub fn with_uniform_weights(&self) -> Self {
        let w = T::one() / T::from_count(self.len());
        Self { dim: self.dim, coords: self.coords.clone(), weights: vec![w; self.len()], total_mass: T::one() }
    }

    /// Values of a one-dimensional measure.
    pub fn values_1d(&self) -> Result<&[T]> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim });
        }
        Ok(&self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn uniform_weights_sum_to_one() {
        let m = EmpiricalMeasure::uniform(vec![vec![0.0, 1.0], vec![2.0, 3.0], vec![4.0, 5.0]]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.len(), 3);
        assert!(m.is_probability(1e-12));
        assert!(m.is_uniform());
        assert_eq!(m.point(1), &[2.0, 3.0]);
    }

    #[test]
    fn rational_uniform_is_exact() {
        let m = EmpiricalMeasure::uniform_1d(&[Rational64::from_integer(1); 3]).unwrap();
        assert_eq!(m.total_mass(), Rational64::from_integer(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(EmpiricalMeasure::<f64>::uniform(vec![]), Err(Error::EmptyMeasure)));
        assert!(EmpiricalMeasure::new(vec![vec![0.0], vec![1.0, 2.0]], vec![0.5, 0.5]).is_err());
        assert!(EmpiricalMeasure::weighted_1d(&[0.0, 1.0], &[0.5, -0.5]).is_err());
        assert!(EmpiricalMeasure::weighted_1d(&[f64::NAN], &[1.0]).is_err());
    }

    #[test]
    fn sub_probability_masses_are_kept() {
        let m = EmpiricalMeasure::weighted_1d(&[0.0f64, 1.0], &[0.1, 0.2]).unwrap();
        assert!((m.total_mass() - 0.3).abs() < 1e-15);
        assert!(!m.is_probability(1e-9));
        assert_eq!(m.mass_where(|p| p[0] > 0.5), 0.2);
    }
}
