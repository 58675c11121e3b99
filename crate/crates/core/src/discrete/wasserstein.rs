//! Wasserstein distances between finite measures.

use crate::error::{Error, Result};
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::metric::Metric;
use crate::oracles::transport_lp::{small_transport_lp, TRANSPORT_LP_CAP};
use crate::scalar::{pmin, Real, Scalar};

fn sorted_order<T: Scalar>(v: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).expect("finite values").then(a.cmp(&b)));
    idx
}

fn check_pair<T: Scalar>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>) -> Result<()> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
    }
    let tol = T::lit(1e-9);
    for m in [mu, nu] {
        if (m.total_mass() - T::one()).abs() > tol {
            return Err(Error::MassMismatch(m.total_mass().to_f64_lossy(), 1.0));
        }
    }
    Ok(())
}

/// Monotone (quantile) coupling of two measures on the line, as
/// `(source, target, mass)` in increasing quantile order.
pub fn quantile_coupling<T: Scalar>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
) -> Result<Vec<(usize, usize, T)>> {
    check_pair(mu, nu)?;
    let (x, y) = (mu.values_1d()?, nu.values_1d()?);
    let (ox, oy) = (sorted_order(x), sorted_order(y));
    let tol = T::feasibility_tol();
    let mut rx: Vec<T> = ox.iter().map(|&i| mu.weight(i)).collect();
    let mut ry: Vec<T> = oy.iter().map(|&j| nu.weight(j)).collect();
    let (mut p, mut q) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    while p < rx.len() && q < ry.len() {
        if rx[p] <= tol {
            p += 1;
            continue;
        }
        if ry[q] <= tol {
            q += 1;
            continue;
        }
        let f = pmin(rx[p], ry[q]);
        out.push((ox[p], oy[q], f));
        rx[p] = rx[p] - f;
        ry[q] = ry[q] - f;
    }
    Ok(out)
}

/// Exact `W_p`. One-dimensional inputs use the quantile coupling; higher
/// dimensions solve the transportation problem and are limited to
/// [`TRANSPORT_LP_CAP`] atoms per side.
pub fn wasserstein_p<T: Real>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>, metric: Metric, p: T) -> Result<T> {
    if !(p >= T::one()) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must be at least 1, got {p}")));
    }
    check_pair(mu, nu)?;
    let total = if mu.dim() == 1 {
        let (x, y) = (mu.values_1d()?, nu.values_1d()?);
        quantile_coupling(mu, nu)?.into_iter().fold(T::zero(), |acc, (i, j, f)| acc + f * (x[i] - y[j]).abs().powf(p))
    } else {
        if mu.len() > TRANSPORT_LP_CAP || nu.len() > TRANSPORT_LP_CAP {
            return Err(Error::TooLarge {
                what: "support for multivariate Wasserstein",
                size: mu.len().max(nu.len()),
                cap: TRANSPORT_LP_CAP,
            });
        }
        let cost: Vec<Vec<T>> = mu
            .points()
            .map(|x| nu.points().map(|y| metric.distance(x, y).map(|d| d.powf(p))).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        small_transport_lp(mu.weights(), nu.weights(), &cost)?
    };
    Ok(T::zero().max(total).powf(p.recip()))
}

/// `W_∞` on the line: the largest displacement of the quantile coupling.
pub fn winf_1d<T: Scalar>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>) -> Result<T> {
    let (x, y) = (mu.values_1d()?, nu.values_1d()?);
    Ok(quantile_coupling(mu, nu)?
        .into_iter()
        .fold(T::zero(), |acc, (i, j, _)| crate::scalar::pmax(acc, (x[i] - y[j]).abs())))
}
