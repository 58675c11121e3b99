//! Closed-form D_ε, optimal risk and optimal classifier for parametric
//! class pairs.

pub mod conditions;
pub mod gaussian;
pub mod motivating;
pub mod triangular;
pub mod uniform;
pub mod zero_cost;

pub use conditions::{check_scrunch_condition, check_shift_condition, five_region_plan, FiveRegionPlan, Restriction};
pub use gaussian::{
    gaussian_equal_var, gaussian_general, gaussian_intersections, gaussian_iso_ddim, gaussian_same_mean,
    IntersectionRoots,
};
pub use motivating::motivating_example;
pub use triangular::triangular_pair;
pub use uniform::uniform_pair;
pub use zero_cost::{cdf_dominance, quantile_sup_distance, zero_cost_check, DEFAULT_GRID_N};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::family::UnivariateFamily;
use crate::measures::problem::BinaryProblem;
use crate::region::Region;
use crate::scalar::Real;

/// Optimal transport cost, risk and classifier for one class pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSolution<T = f64> {
    pub depsilon: T,
    /// `(1 - depsilon) / 2`.
    pub risk: T,
    /// Region on which the classifier decides class `decides`.
    pub classifier: Region<T>,
    /// Class (0 or 1, in argument order) that `classifier` decides.
    pub decides: usize,
    /// Named boundary points and auxiliary quantities.
    pub boundaries: Vec<(String, T)>,
    /// The constant classifier is optimal and the risk is ½.
    pub degenerate: bool,
    /// Amount removed by clamping `depsilon` into `[0, 1]`.
    pub clamped: T,
}

impl<T: Real> AnalyticSolution<T> {
    pub(crate) fn new(raw: T, classifier: Region<T>, decides: usize, boundaries: Vec<(&str, T)>) -> Self {
        let depsilon = raw.max(T::zero()).min(T::one());
        let degenerate = !(depsilon > T::zero());
        let classifier = if degenerate { Region::Empty } else { classifier };
        Self {
            depsilon,
            risk: (T::one() - depsilon) * T::lit(0.5),
            classifier,
            decides,
            boundaries: boundaries.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            degenerate,
            clamped: (raw - depsilon).abs(),
        }
    }

    pub fn boundary(&self, name: &str) -> Option<T> {
        self.boundaries.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Region on which the classifier decides class 1.
    pub fn decide_one(&self) -> Region<T> {
        if self.decides == 1 {
            self.classifier.clone()
        } else {
            self.classifier.complement()
        }
    }
}

/// Solves a univariate family pair in argument order, dispatching on the
/// family kind.
pub fn solve_family_pair<T: Real>(
    p0: &UnivariateFamily<T>,
    p1: &UnivariateFamily<T>,
    eps: T,
) -> Result<AnalyticSolution<T>> {
    match (*p0, *p1) {
        (UnivariateFamily::Gaussian { mu: m0, sigma: s0 }, UnivariateFamily::Gaussian { mu: m1, sigma: s1 }) => {
            gaussian_general(m0, s0, m1, s1, eps)
        }
        (UnivariateFamily::Uniform { a, b }, UnivariateFamily::Uniform { a: c, b: d }) => {
            uniform_pair((a, b), (c, d), eps)
        }
        (UnivariateFamily::Triangular { .. }, UnivariateFamily::Triangular { .. }) => triangular_pair(p0, p1, eps),
        _ => Err(Error::Unsupported(format!("no closed form for {} vs {}", p0.kind(), p1.kind()))),
    }
}

/// Closed-form solution for a problem made of two univariate families or
/// two isotropic Gaussians.
pub fn solve_problem<T: Real>(problem: &BinaryProblem<T>, eps: T) -> Result<AnalyticSolution<T>> {
    use crate::measures::problem::ClassModel;
    match (&problem.class0, &problem.class1) {
        (ClassModel::Family { law: a }, ClassModel::Family { law: b }) => solve_family_pair(a, b, eps),
        (ClassModel::Gaussian { law: a }, ClassModel::Gaussian { law: b }) => {
            gaussian_iso_ddim(a, b, eps, crate::measures::metric::Metric::Euclidean)
        }
        _ => Err(Error::Unsupported("closed forms need two parametric classes".into())),
    }
}

pub(crate) fn check_eps<T: Real>(eps: T) -> Result<()> {
    if !(eps >= T::zero()) || !eps.is_finite() {
        return Err(Error::NegativeEps(eps.to_f64_lossy()));
    }
    Ok(())
}

/// Root of a continuous `h` on `[lo, hi]` with `h(lo)` and `h(hi)` of
/// opposite signs (or zero), by bisection to full precision.
pub(crate) fn bisect<T: Real>(h: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let mut hlo = h(lo);
    if hlo == T::zero() {
        return lo;
    }
    if h(hi) == T::zero() {
        return hi;
    }
    for _ in 0..200 {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let hm = h(mid);
        if hm == T::zero() {
            return mid;
        }
        if (hm < T::zero()) == (hlo < T::zero()) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
        }
    }
    lo + (hi - lo) * T::lit(0.5)
}
