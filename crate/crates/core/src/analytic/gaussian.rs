//! Gaussian class pairs: equal variances (any dimension), equal means, and
//! the general univariate case.

use serde::{Deserialize, Serialize};

use crate::analytic::{check_eps, AnalyticSolution};
use crate::error::{invalid, Error, Result};
use crate::interval::IntervalSet;
use crate::measures::family::UnivariateFamily;
use crate::measures::gaussian::IsoGaussian;
use crate::measures::metric::Metric;
use crate::measures::special::q_tail;
use crate::region::{Halfspace, Region, SetMass};
use crate::scalar::Real;

/// Solutions of `f = g` for two Gaussian densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "roots", rename_all = "lowercase")]
pub enum IntersectionRoots<T> {
    /// Identical densities.
    None,
    /// Equal variances: the midpoint of the means.
    One { s: T },
    /// Unequal variances: `s1 < s2`, with the narrower mean strictly between.
    Two { s1: T, s2: T },
}

impl<T: Copy> IntersectionRoots<T> {
    pub fn left(&self) -> Option<T> {
        match *self {
            Self::None => None,
            Self::One { s } => Some(s),
            Self::Two { s1, .. } => Some(s1),
        }
    }

    pub fn right(&self) -> Option<T> {
        match *self {
            Self::None => None,
            Self::One { s } => Some(s),
            Self::Two { s2, .. } => Some(s2),
        }
    }
}

fn check_gaussian<T: Real>(mu: T, sigma: T) -> Result<()> {
    if !(sigma > T::zero()) || !sigma.is_finite() || !mu.is_finite() {
        return invalid(format!("gaussian needs finite mu and sigma > 0, got ({mu}, {sigma})"));
    }
    Ok(())
}

/// `log f(x) - log g(x)` for `f = N(m1, s1²)`, `g = N(m2, s2²)`.
fn log_ratio<T: Real>(x: T, m1: T, s1: T, m2: T, s2: T) -> (T, T) {
    let (z1, z2) = ((x - m1) / s1, (x - m2) / s2);
    let half = T::lit(0.5);
    let value = half * (z2 * z2 - z1 * z1) - (s1 / s2).ln();
    let slope = z2 / s2 - z1 / s1;
    (value, slope)
}

/// Intersections of the densities of `N(mu1, sigma1²)` and `N(mu2, sigma2²)`.
pub fn gaussian_intersections<T: Real>(mu1: T, sigma1: T, mu2: T, sigma2: T) -> IntersectionRoots<T> {
    if sigma1 == sigma2 {
        return if mu1 == mu2 {
            IntersectionRoots::None
        } else {
            IntersectionRoots::One { s: (mu1 + mu2) * T::lit(0.5) }
        };
    }
    let ((mw, sw), (mn, sn)) =
        if sigma1 > sigma2 { ((mu1, sigma1), (mu2, sigma2)) } else { ((mu2, sigma2), (mu1, sigma1)) };
    // Narrow-class coordinates u = (x - mn) / sn:
    // a u² + 2 m u + c = 0 with a = s² - 1, c = -(m² + 2 s² ln s), s = sw / sn.
    let m = (mw - mn) / sn;
    let ratio_m1 = (sw - sn) / sn;
    let a = ratio_m1 * (sw + sn) / sn;
    let ln_s = ratio_m1.ln_1p();
    let s = sw / sn;
    let c = -(m * m + T::lit(2.0) * s * s * ln_s);
    let root = s * (m * m + T::lit(2.0) * a * ln_s).sqrt();
    let q = -(m + if m < T::zero() { -root } else { root });
    let (u1, u2) = (q / a, c / q);
    let polish = |u: T| {
        let mut x = mn + sn * u;
        for _ in 0..2 {
            let (v, d) = log_ratio(x, mw, sw, mn, sn);
            if v == T::zero() || d == T::zero() {
                break;
            }
            let next = x - v / d;
            if log_ratio(next, mw, sw, mn, sn).0.abs() < v.abs() {
                x = next;
            } else {
                break;
            }
        }
        x
    };
    let (x1, x2) = (polish(u1), polish(u2));
    IntersectionRoots::Two { s1: x1.min(x2), s2: x1.max(x2) }
}

/// Equal-variance pair `N(mu0, σ²)`, `N(mu1, σ²)`: the optimal classifier
/// thresholds at the midpoint until `eps` reaches half the mean gap, after
/// which the constant classifier is optimal.
pub fn gaussian_equal_var<T: Real>(mu0: T, mu1: T, sigma: T, eps: T) -> Result<AnalyticSolution<T>> {
    check_gaussian(mu0, sigma)?;
    check_gaussian(mu1, sigma)?;
    check_eps(eps)?;
    let half_gap = (mu1 - mu0).abs() * T::lit(0.5);
    let mid = mu0 + (mu1 - mu0) * T::lit(0.5);
    let decides = if mu1 >= mu0 { 1 } else { 0 };
    let raw = if eps >= half_gap { T::zero() } else { T::one() - T::lit(2.0) * q_tail((half_gap - eps) / sigma) };
    let a = Region::intervals(IntervalSet::at_least(mid));
    Ok(AnalyticSolution::new(raw, a, decides, vec![("mid", mid)]))
}

/// Isotropic Gaussians with a common `σ` in `R^d` under the Euclidean metric:
/// the equal-variance solution along the mean-difference axis, with the
/// mid-hyperplane as classifier.
pub fn gaussian_iso_ddim<T: Real>(
    p0: &IsoGaussian<T>,
    p1: &IsoGaussian<T>,
    eps: T,
    metric: Metric,
) -> Result<AnalyticSolution<T>> {
    check_eps(eps)?;
    if p0.dim() != p1.dim() {
        return Err(Error::DimensionMismatch { expected: p0.dim(), got: p1.dim() });
    }
    if p0.sigma() != p1.sigma() {
        if p0.dim() == 1 {
            return gaussian_general(p0.mu()[0], p0.sigma(), p1.mu()[0], p1.sigma(), eps);
        }
        return invalid(format!("unequal sigmas {} and {} in dimension {}", p0.sigma(), p1.sigma(), p0.dim()));
    }
    if metric != Metric::Euclidean && p0.dim() > 1 {
        return Err(Error::Unsupported("multivariate Gaussian closed form needs the l2 metric".into()));
    }
    let w: Vec<T> = p1.mu().iter().zip(p0.mu()).map(|(&a, &b)| a - b).collect();
    let delta = w.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
    if delta == T::zero() {
        return Ok(AnalyticSolution::new(T::zero(), Region::Empty, 1, vec![("delta", delta)]));
    }
    let half = T::lit(0.5);
    let b = w
        .iter()
        .zip(p0.mu().iter().zip(p1.mu()))
        .fold(T::zero(), |acc, (&wi, (&a, &c))| acc + wi * (a + (c - a) * half));
    let raw = if eps >= delta * half {
        T::zero()
    } else {
        T::one() - T::lit(2.0) * q_tail((delta * half - eps) / p0.sigma())
    };
    let h = Halfspace::new(w, b)?;
    Ok(AnalyticSolution::new(raw, Region::halfspace(h), 1, vec![("delta", delta)]))
}

/// Centered pair `N(0, sigma1²)` (wider) and `N(0, sigma2²)`.
///
/// `m` is the right intersection of `f(· + ε)` and `g(· - ε)`; the classifier
/// `|x| >= m` decides class 0.
pub fn gaussian_same_mean<T: Real>(sigma1: T, sigma2: T, eps: T) -> Result<AnalyticSolution<T>> {
    check_gaussian(T::zero(), sigma1)?;
    check_gaussian(T::zero(), sigma2)?;
    check_eps(eps)?;
    if !(sigma1 > sigma2) {
        return invalid(format!("same-mean solver needs sigma1 > sigma2, got {sigma1} <= {sigma2}"));
    }
    let m = gaussian_intersections(-eps, sigma1, eps, sigma2).right().expect("unequal variances cross twice");
    let two = T::lit(2.0);
    let raw = two * q_tail((m + eps) / sigma1) - two * q_tail((m - eps) / sigma2);
    let a = IntervalSet::at_most(-m).union(&IntervalSet::at_least(m));
    Ok(AnalyticSolution::new(raw, Region::intervals(a), 0, vec![("m", m)]))
}

/// General univariate pair `N(mu1, sigma1²)`, `N(mu2, sigma2²)` in argument
/// order. Equal variances use [`gaussian_equal_var`]; otherwise the wider
/// class is decided on `(-∞, b_l] ∪ [b_r, ∞)`.
pub fn gaussian_general<T: Real>(mu1: T, sigma1: T, mu2: T, sigma2: T, eps: T) -> Result<AnalyticSolution<T>> {
    check_gaussian(mu1, sigma1)?;
    check_gaussian(mu2, sigma2)?;
    check_eps(eps)?;
    if sigma1 == sigma2 {
        return gaussian_equal_var(mu1, mu2, sigma1, eps);
    }
    let (wide, narrow, decides) =
        if sigma1 > sigma2 { ((mu1, sigma1), (mu2, sigma2), 0) } else { ((mu2, sigma2), (mu1, sigma1), 1) };
    let ((mw, sw), (mn, sn)) = (wide, narrow);
    // f(b - ε) = g(b + ε) on the left, f(b + ε) = g(b - ε) on the right.
    let b_l = gaussian_intersections(mw + eps, sw, mn - eps, sn).left().expect("two roots");
    let b_r = gaussian_intersections(mw - eps, sw, mn + eps, sn).right().expect("two roots");
    let a = Region::intervals(IntervalSet::at_most(b_l).union(&IntervalSet::at_least(b_r)));
    let mu = UnivariateFamily::Gaussian { mu: mw, sigma: sw };
    let nu = UnivariateFamily::Gaussian { mu: mn, sigma: sn };
    let raw = mu.region_mass(&a.thin(eps, Metric::Euclidean)?)? - nu.region_mass(&a.expand(eps, Metric::Euclidean)?)?;
    Ok(AnalyticSolution::new(raw, a, decides, vec![("b_l", b_l), ("b_r", b_r)]))
}
