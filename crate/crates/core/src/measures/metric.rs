use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{pmax, Real, Scalar};

/// Ground metric on the input space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// ℓ2
    Euclidean,
    /// ℓ∞
    Chebyshev,
}

impl Metric {
    pub fn distance<T: Real>(self, x: &[T], y: &[T]) -> Result<T> {
        check_dims(x, y)?;
        Ok(match self {
            Metric::Euclidean => self.key(x, y).sqrt(),
            Metric::Chebyshev => self.key(x, y),
        })
    }

    /// Monotone surrogate of the distance that needs no square root:
    /// squared distance for ℓ2, the distance itself for ℓ∞.
    ///
    /// Every admissibility test in the crate goes through this key so that
    /// all solvers agree on ties, for floats and rationals alike.
    pub fn key<T: Scalar>(self, x: &[T], y: &[T]) -> T {
        debug_assert_eq!(x.len(), y.len());
        match self {
            Metric::Euclidean => x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b)),
            Metric::Chebyshev => x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| pmax(acc, (a - b).abs())),
        }
    }

    pub fn radius_key<T: Scalar>(self, r: T) -> T {
        match self {
            Metric::Euclidean => r * r,
            Metric::Chebyshev => r,
        }
    }

    /// `d(x, y) <= r`.
    pub fn within<T: Scalar>(self, x: &[T], y: &[T], r: T) -> bool {
        self.key(x, y) <= self.radius_key(r)
    }

    /// Norm dual to the metric's norm: ℓ2 for ℓ2, ℓ1 for ℓ∞.
    pub fn dual_norm<T: Real>(self, w: &[T]) -> T {
        match self {
            Metric::Euclidean => w.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt(),
            Metric::Chebyshev => w.iter().fold(T::zero(), |acc, &v| acc + v.abs()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "l2",
            Metric::Chebyshev => "linf",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l2" | "euclidean" => Ok(Metric::Euclidean),
            "linf" | "l-inf" | "chebyshev" => Ok(Metric::Chebyshev),
            other => Err(Error::InvalidParameter(format!("unknown metric '{other}'"))),
        }
    }
}

fn check_dims<T>(x: &[T], y: &[T]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    Ok(())
}

/// Distance between two points under `metric`.
pub fn distance<T: Real>(metric: Metric, x: &[T], y: &[T]) -> Result<T> {
    metric.distance(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn pythagorean_and_max_coordinate() {
        assert_eq!(distance(Metric::Euclidean, &[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(distance(Metric::Chebyshev, &[0.0, 0.0], &[3.0, 4.0]).unwrap(), 4.0);
        for m in [Metric::Euclidean, Metric::Chebyshev] {
            assert_eq!(distance(m, &[1.5, -2.0], &[1.5, -2.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            distance(Metric::Euclidean, &[0.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn ties_are_admissible_for_rationals() {
        let x = [Rational64::from_integer(0), Rational64::from_integer(0)];
        let y = [Rational64::from_integer(3), Rational64::from_integer(4)];
        assert!(Metric::Euclidean.within(&x, &y, Rational64::from_integer(5)));
        assert!(!Metric::Euclidean.within(&x, &y, Rational64::new(49, 10)));
    }

    #[test]
    fn parse_names() {
        assert_eq!("l2".parse::<Metric>().unwrap(), Metric::Euclidean);
        assert_eq!("LINF".parse::<Metric>().unwrap(), Metric::Chebyshev);
        assert!("l1".parse::<Metric>().is_err());
    }
}
