//! Grid criteria for `D_ε = 0` on the line.

use crate::error::{invalid, Result};
use crate::measures::family::{Distribution1d, UnivariateFamily};
use crate::scalar::Real;

pub const DEFAULT_GRID_N: usize = 10001;

/// `max_t |F⁻¹(t) - G⁻¹(t)|` over `t = k / (n + 1)`, `k = 1..=n`. The open
/// grid avoids infinite quantiles; the value approaches the supremum from
/// below as `n` grows.
pub fn quantile_sup_distance<T: Real>(f: &UnivariateFamily<T>, g: &UnivariateFamily<T>, grid_n: usize) -> Result<T> {
    if grid_n < 2 {
        return invalid(format!("quantile grid needs at least 2 points, got {grid_n}"));
    }
    let denom = T::from_count(grid_n + 1);
    let mut sup = T::zero();
    for k in 1..=grid_n {
        let t = T::from_count(k) / denom;
        sup = sup.max((f.quantile(t)? - g.quantile(t)?).abs());
    }
    Ok(sup)
}

/// `D_ε(F, G) = 0` on the quantile grid: the sup distance is at most `2ε`
/// up to a relative rounding slack.
pub fn zero_cost_check<T: Real>(
    f: &UnivariateFamily<T>,
    g: &UnivariateFamily<T>,
    eps: T,
    grid_n: usize,
) -> Result<bool> {
    crate::analytic::check_eps(eps)?;
    let sup = quantile_sup_distance(f, g, grid_n)?;
    let slack = T::lit(1e-12) * (T::one() + f.scale() + g.scale() + f.mean().abs() + g.mean().abs());
    Ok(sup <= eps + eps + slack)
}

/// The two cdf tests `F(x) >= G(x)` and `F(x) <= G(x + 2ε)` on a uniform
/// `x` grid spanning both laws' central `1 - 2e-8` mass. Together they imply
/// `D_ε = 0`.
pub fn cdf_dominance<T: Real>(
    f: &UnivariateFamily<T>,
    g: &UnivariateFamily<T>,
    eps: T,
    grid_n: usize,
) -> Result<(bool, bool)> {
    crate::analytic::check_eps(eps)?;
    if grid_n < 2 {
        return invalid(format!("grid needs at least 2 points, got {grid_n}"));
    }
    let tail = T::lit(1e-8);
    let lo = f.quantile(tail)?.min(g.quantile(tail)?) - eps - eps;
    let hi = f.quantile(T::one() - tail)?.max(g.quantile(T::one() - tail)?);
    let tol = T::lit(1e-12);
    let (mut above, mut within) = (true, true);
    for k in 0..grid_n {
        let x = lo + (hi - lo) * T::from_count(k) / T::from_count(grid_n - 1);
        above &= f.cdf(x) >= g.cdf(x) - tol;
        within &= f.cdf(x) <= g.cdf(x + eps + eps) + tol;
    }
    Ok((above, within))
}
