//! Midpoint-rule discretization of one-dimensional laws.

use serde::{Deserialize, Serialize};

use crate::discrete::{ExactOptions, ExactSolver};
use crate::error::{invalid, Result};
use crate::interval::IntervalSet;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::family::{Distribution1d, UnivariateFamily};
use crate::measures::metric::Metric;
use crate::region::SetMass;
use crate::scalar::Real;

/// Atoms at cell midpoints carrying the exact cell masses, renormalized to
/// total 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeasure<T = f64> {
    pub points: Vec<T>,
    pub weights: Vec<T>,
    /// Mass of the covered range before renormalization.
    pub captured: T,
}

impl<T: Real> GridMeasure<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Cell width.
    pub fn step(&self) -> T {
        if self.points.len() < 2 {
            T::zero()
        } else {
            self.points[1] - self.points[0]
        }
    }

    pub fn to_empirical(&self) -> Result<EmpiricalMeasure<T>> {
        EmpiricalMeasure::weighted_1d(&self.points, &self.weights)
    }
}

/// `n` cells covering the central `coverage` quantile range of `family`.
pub fn discretize<T: Real>(family: &UnivariateFamily<T>, n: usize, coverage: T) -> Result<GridMeasure<T>> {
    let (lo, hi) = coverage_range(family, coverage)?;
    discretize_on(family, lo, hi, n)
}

/// `n` equal cells on `[lo, hi]`; each midpoint carries the mass of its cell.
/// Cells are closed, so the measure must not have atoms on cell edges.
pub fn discretize_on<T: Real>(measure: &impl SetMass<T>, lo: T, hi: T, n: usize) -> Result<GridMeasure<T>> {
    if n < 3 {
        return invalid(format!("grid needs at least 3 cells, got {n}"));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return invalid(format!("grid range [{lo}, {hi}] must be finite and nonempty"));
    }
    let h = (hi - lo) / T::lit(n as f64);
    let half = T::lit(0.5);
    let edge = |k: usize| if k == n { hi } else { lo + h * T::lit(k as f64) };
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (edge(k), edge(k + 1));
        points.push(a + (b - a) * half);
        weights.push(measure.interval_mass(&IntervalSet::closed(a, b)?)?);
    }
    let captured = weights.iter().fold(T::zero(), |s, &w| s + w);
    if !(captured > T::zero()) {
        return invalid(format!("grid [{lo}, {hi}] carries no mass"));
    }
    for w in &mut weights {
        *w = *w / captured;
    }
    Ok(GridMeasure { points, weights, captured })
}

/// Two families on one shared grid spanning both coverage ranges, so that
/// grid distances are exact multiples of the step.
pub fn discretize_pair<T: Real>(
    f: &UnivariateFamily<T>,
    g: &UnivariateFamily<T>,
    n: usize,
    coverage: T,
) -> Result<(GridMeasure<T>, GridMeasure<T>)> {
    let (a, b) = coverage_range(f, coverage)?;
    let (c, d) = coverage_range(g, coverage)?;
    let (lo, hi) = (if c < a { c } else { a }, if d > b { d } else { b });
    Ok((discretize_on(f, lo, hi, n)?, discretize_on(g, lo, hi, n)?))
}

fn coverage_range<T: Real>(family: &UnivariateFamily<T>, coverage: T) -> Result<(T, T)> {
    if !(coverage > T::zero() && coverage <= T::one()) {
        return invalid(format!("coverage must lie in (0, 1], got {coverage}"));
    }
    let tail = (T::one() - coverage) * T::lit(0.5);
    let (lo, hi) = (family.quantile(tail)?, family.quantile(T::one() - tail)?);
    if !lo.is_finite() || !hi.is_finite() {
        return invalid(format!("coverage {coverage} of an unbounded family needs a finite range"));
    }
    Ok((lo, hi))
}

/// Mass the grid range misses, `1 - F(hi) + F(lo)`.
pub fn uncovered_mass<T: Real>(family: &UnivariateFamily<T>, lo: T, hi: T) -> T {
    family.cdf(lo) + family.sf(hi)
}

/// `D_ε` of two families on a shared grid, one value per `eps`.
pub fn grid_depsilon<T: Real>(
    f: &UnivariateFamily<T>,
    g: &UnivariateFamily<T>,
    eps: &[T],
    n: usize,
    coverage: T,
) -> Result<Vec<T>> {
    let (a, b) = discretize_pair(f, g, n, coverage)?;
    let (mu, nu) = (a.to_empirical()?, b.to_empirical()?);
    let solver = ExactSolver::new(&mu, &nu, Metric::Euclidean)?;
    let opts = ExactOptions { witness: false, ..ExactOptions::default() };
    Ok(solver.sweep(eps, &opts)?.into_iter().map(|c| c.cost).collect())
}
