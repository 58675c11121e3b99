//! Exact transport quantities between finite measures.

pub mod duality;
pub mod exact;
pub(crate) mod flow;
pub mod hungarian;
pub(crate) mod line;
pub(crate) mod matching;
pub mod wasserstein;

pub use duality::{strassen_gap, witness_gap};
pub use exact::{
    depsilon_exact, depsilon_exact_with, CertificateCheck, ExactOptions, ExactSolver, Strategy, Transfer,
    TransportCertificate, Witness,
};
pub use hungarian::min_cost_assignment;
pub use wasserstein::{quantile_coupling, wasserstein_p, winf_1d};

use crate::error::{Error, Result};
use crate::measures::empirical::EmpiricalMeasure;
use crate::scalar::{pmin, Real, Scalar};

/// Optimal balanced 0-1 adversarial risk `(1 - D_ε) / 2`.
pub fn risk_from_depsilon<T: Scalar>(cost: T) -> Result<T> {
    let tol = T::lit(1e-9);
    if !(cost >= T::zero() - tol && cost <= T::one() + tol) {
        return Err(Error::InvalidParameter(format!("transport cost {cost} outside [0, 1]")));
    }
    Ok((T::one() - cost) / (T::one() + T::one()))
}

/// Risk lower bound from a `W_p` distance: `max(0, ½ (1 - (W_p / 2ε)^p))`.
pub fn wp_lower_bound<T: Real>(wp: T, eps: T, p: T) -> Result<T> {
    if !(eps > T::zero()) {
        return Err(Error::InvalidParameter(format!("budget must be positive, got {eps}")));
    }
    if !(p >= T::one()) || !(wp >= T::zero()) {
        return Err(Error::InvalidParameter(format!("need p >= 1 and W_p >= 0, got p = {p}, W_p = {wp}")));
    }
    let ratio = (wp / (eps + eps)).powf(p);
    Ok(T::zero().max(T::lit(0.5) * (T::one() - ratio)))
}

/// Total variation `1 - Σ_x min(μ{x}, ν{x})` between two probability
/// measures, pooling repeated atoms.
pub fn total_variation<T: Scalar>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>) -> Result<T> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
    }
    let pool = |m: &EmpiricalMeasure<T>| {
        let mut atoms: Vec<(Vec<T>, T)> = m.points().map(|p| p.to_vec()).zip(m.weights().iter().copied()).collect();
        atoms.sort_by(|a, b| lex(&a.0, &b.0));
        let mut out: Vec<(Vec<T>, T)> = Vec::with_capacity(atoms.len());
        for (p, w) in atoms {
            match out.last_mut() {
                Some((q, acc)) if *q == p => *acc = *acc + w,
                _ => out.push((p, w)),
            }
        }
        out
    };
    let (a, b) = (pool(mu), pool(nu));
    let (mut i, mut j) = (0, 0);
    let mut overlap = T::zero();
    while i < a.len() && j < b.len() {
        match lex(&a[i].0, &b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                overlap = overlap + pmin(a[i].1, b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    Ok(mu.total_mass() - overlap)
}

fn lex<T: Scalar>(a: &[T], b: &[T]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).expect("finite coordinates") {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
