//! Uniform class pair on closed intervals.

use crate::analytic::{check_eps, AnalyticSolution};
use crate::error::{invalid, Result};
use crate::interval::IntervalSet;
use crate::region::Region;
use crate::scalar::Real;

fn overlap<T: Real>((a, b): (T, T), (c, d): (T, T)) -> T {
    (b.min(d) - a.max(c)).max(T::zero())
}

/// Uniform laws on `i` (class 0) and `j` (class 1).
///
/// With `I` the narrower interval and `ν` the other law,
/// `D_ε = max(0, 1 - ν(I^{2ε}))` and `I^ε` decides the narrower class. The
/// boundary `nu_i2eps` records `ν(I^{2ε})` itself.
pub fn uniform_pair<T: Real>(i: (T, T), j: (T, T), eps: T) -> Result<AnalyticSolution<T>> {
    check_eps(eps)?;
    for (lo, hi) in [i, j] {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return invalid(format!("uniform support [{lo}, {hi}] must be a finite nondegenerate interval"));
        }
    }
    let (narrow, wide, decides) = if i.1 - i.0 <= j.1 - j.0 { (i, j, 0) } else { (j, i, 1) };
    let two_eps = eps + eps;
    let nu_thick = overlap((narrow.0 - two_eps, narrow.1 + two_eps), wide) / (wide.1 - wide.0);
    let a = IntervalSet::closed(narrow.0 - eps, narrow.1 + eps)?;
    Ok(AnalyticSolution::new(
        T::one() - nu_thick,
        Region::intervals(a),
        decides,
        vec![("i_lo", narrow.0), ("i_hi", narrow.1), ("nu_i2eps", nu_thick)],
    ))
}
