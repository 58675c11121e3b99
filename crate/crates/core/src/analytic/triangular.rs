//! Symmetric triangular class pair.
//!
//! The optimal set is an interval `[l, r]` deciding the narrower class,
//! where `l` solves `f(l + ε) = g(l - ε)` and `r` solves `f(r - ε) = g(r + ε)`.
//! Both equations are piecewise linear, so every solution is found exactly
//! per linear piece; among all candidate pairs the one with the largest
//! `μ(A^{-ε}) - ν(A^ε)` is returned.

use crate::analytic::{check_eps, AnalyticSolution};
use crate::error::{invalid, Result};
use crate::interval::IntervalSet;
use crate::measures::family::UnivariateFamily;
use crate::measures::metric::Metric;
use crate::region::{Region, SetMass};
use crate::scalar::Real;

fn knots<T: Real>(t: &UnivariateFamily<T>) -> [T; 3] {
    let (lo, hi) = t.support();
    [lo, t.mean(), hi]
}

/// Zeros of a continuous function that is linear between consecutive
/// `breaks`; whole zero pieces contribute their endpoints. Values within
/// `tol` of zero count as zero, which absorbs rounding at support edges.
fn piecewise_linear_zeros<T: Real>(h: impl Fn(T) -> T, mut breaks: Vec<T>, tol: T) -> Vec<T> {
    breaks.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    breaks.dedup();
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (p, q) = (w[0], w[1]);
        let snap = |v: T| if v.abs() <= tol { T::zero() } else { v };
        let (hp, hq) = (snap(h(p)), snap(h(q)));
        if hp == T::zero() {
            out.push(p);
        }
        if (hp < T::zero() && hq > T::zero()) || (hp > T::zero() && hq < T::zero()) {
            let x = p - hp * (q - p) / (hq - hp);
            out.push(x.max(p).min(q));
        }
    }
    if let Some(&last) = breaks.last() {
        if h(last).abs() <= tol {
            out.push(last);
        }
    }
    out.dedup();
    out
}

struct Oriented<T> {
    gap: T,
    l: T,
    r: T,
    rule: Option<(T, T)>,
}

fn gap_of<T: Real>(mu: &UnivariateFamily<T>, nu: &UnivariateFamily<T>, a: &Region<T>, eps: T) -> Result<T> {
    Ok(mu.region_mass(&a.thin(eps, Metric::Euclidean)?)? - nu.region_mass(&a.expand(eps, Metric::Euclidean)?)?)
}

fn solve_oriented<T: Real>(mu: &UnivariateFamily<T>, nu: &UnivariateFamily<T>, eps: T) -> Result<Option<Oriented<T>>> {
    let (kf, kg) = (knots(mu), knots(nu));
    let h_l = |x: T| mu.pdf(x + eps) - nu.pdf(x - eps);
    let h_r = |x: T| mu.pdf(x - eps) - nu.pdf(x + eps);
    let tol = T::lit(64.0) * T::epsilon() * (mu.max_pdf() + nu.max_pdf());
    let left =
        piecewise_linear_zeros(h_l, kf.iter().map(|&k| k - eps).chain(kg.iter().map(|&k| k + eps)).collect(), tol);
    let right =
        piecewise_linear_zeros(h_r, kf.iter().map(|&k| k + eps).chain(kg.iter().map(|&k| k - eps)).collect(), tol);

    let mut best: Option<Oriented<T>> = None;
    for &l in left.iter().rev() {
        for &r in &right {
            if l > r {
                continue;
            }
            let gap = gap_of(mu, nu, &Region::intervals(IntervalSet::closed(l, r)?), eps)?;
            if best.as_ref().is_none_or(|b| gap > b.gap) {
                best = Some(Oriented { gap, l, r, rule: None });
            }
        }
    }
    let c = mu.mean();
    let rule_l = left.iter().copied().filter(|&l| l < c).last();
    let rule_r = right.iter().copied().find(|&r| r > c);
    if let (Some(b), Some(l), Some(r)) = (best.as_mut(), rule_l, rule_r) {
        b.rule = Some((l, r));
    }
    Ok(best)
}

/// Triangular laws `t1` (class 0) and `t2` (class 1). The narrower class is
/// decided on `[l, r]`; with equal halfwidths both orientations are tried.
/// Boundaries `l_rule`/`r_rule` record the largest left and smallest right
/// solutions around the narrower center.
pub fn triangular_pair<T: Real>(
    t1: &UnivariateFamily<T>,
    t2: &UnivariateFamily<T>,
    eps: T,
) -> Result<AnalyticSolution<T>> {
    check_eps(eps)?;
    for t in [t1, t2] {
        if !matches!(t, UnivariateFamily::Triangular { .. }) {
            return invalid(format!("expected a triangular law, got {}", t.kind()));
        }
    }
    let mut orientations = Vec::new();
    if t1.scale() <= t2.scale() {
        orientations.push((0, solve_oriented(t1, t2, eps)?));
    }
    if t2.scale() <= t1.scale() {
        orientations.push((1, solve_oriented(t2, t1, eps)?));
    }
    let best = orientations.into_iter().filter_map(|(d, o)| o.map(|o| (d, o))).fold(
        None::<(usize, Oriented<T>)>,
        |acc, (d, o)| match acc {
            Some((_, ref b)) if b.gap >= o.gap => acc,
            _ => Some((d, o)),
        },
    );
    let Some((decides, o)) = best else {
        return Ok(AnalyticSolution::new(T::zero(), Region::Empty, 0, vec![]));
    };
    let mut bounds = vec![("l", o.l), ("r", o.r)];
    if let Some((l, r)) = o.rule {
        bounds.push(("l_rule", l));
        bounds.push(("r_rule", r));
    }
    Ok(AnalyticSolution::new(o.gap, Region::intervals(IntervalSet::closed(o.l, o.r)?), decides, bounds))
}
