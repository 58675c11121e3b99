//! Grid checks of the shift and scrunch hypotheses, and the five-region
//! transport plan that certifies the general Gaussian solution from above.

use crate::analytic::bisect;
use crate::analytic::gaussian::gaussian_intersections;
use crate::error::{invalid, Result};
use crate::measures::family::{Distribution1d, UnivariateFamily};
use crate::scalar::Real;

/// A density restricted to `[lo, hi]` (either end may be infinite), with its
/// total mass.
pub struct Restriction<'a, T> {
    pub density: &'a dyn Fn(T) -> T,
    pub lo: T,
    pub hi: T,
    pub mass: T,
}

impl<T: Real> Restriction<'_, T> {
    fn eval(&self, x: T) -> T {
        if x >= self.lo && x <= self.hi {
            (self.density)(x)
        } else {
            T::zero()
        }
    }
}

/// Sampling for the grid checks: `points` cell midpoints, extending `span`
/// past the finite end of half-infinite supports.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec<T> {
    pub points: usize,
    pub span: T,
}

impl<T: Real> GridSpec<T> {
    fn midpoints(&self, lo: T, hi: T) -> impl Iterator<Item = T> + '_ {
        let n = self.points.max(1);
        let h = (hi - lo) / T::from_count(n);
        (0..n).map(move |k| lo + h * (T::from_count(k) + T::lit(0.5)))
    }
}

fn close<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(1e-9) * (T::one() + a.abs() + b.abs())
}

/// `a <= b` up to relative and absolute slack.
fn at_most<T: Real>(a: T, b: T, floor: T) -> bool {
    a <= b + T::lit(1e-9) * (a.abs() + b.abs()) + floor
}

/// Shift hypotheses: `g` on `[a, ∞)`, `f` on `[a + 2ε, ∞)` and
/// `g(x) <= f(x + 2ε)`; or the mirror image with supports `(-∞, b]`,
/// `(-∞, b - 2ε]` and `g(x) <= f(x - 2ε)`.
pub fn check_shift_condition<T: Real>(f: &Restriction<T>, g: &Restriction<T>, eps: T, grid: &GridSpec<T>) -> bool {
    let two = eps + eps;
    let inf = T::infinity();
    let floor = T::lit(1e-14);
    if f.hi == inf && g.hi == inf && f.lo.is_finite() && g.lo.is_finite() {
        close(f.lo, g.lo + two)
            && grid.midpoints(g.lo, g.lo + grid.span).all(|x| at_most(g.eval(x), f.eval(x + two), floor))
    } else if f.lo == -inf && g.lo == -inf && f.hi.is_finite() && g.hi.is_finite() {
        close(f.hi, g.hi - two)
            && grid.midpoints(g.hi - grid.span, g.hi).all(|x| at_most(g.eval(x), f.eval(x - two), floor))
    } else {
        false
    }
}

/// `d` changes sign at most once over the grid, from `first` to `-first`
/// (values within `floor` count as zero).
fn single_crossing<T: Real>(values: impl Iterator<Item = T>, first_positive: bool, floor: T) -> bool {
    let mut crossed = false;
    for d in values {
        let pos = d > floor;
        let neg = d < -floor;
        let (same, other) = if first_positive { (pos, neg) } else { (neg, pos) };
        if other {
            crossed = true;
        } else if same && crossed {
            return false;
        }
    }
    true
}

/// Scrunch hypotheses: equal masses, `f` on `[a, b]`, `g` on `[a + 2ε, b]`,
/// `f - g` positive then negative, and `f - g(· + 2ε)` negative then positive
/// on `[a, b - 2ε]`. The mirror image (`f` on `[b, c + 2ε]`, `g` on `[b, c]`)
/// is checked by reflection.
pub fn check_scrunch_condition<T: Real>(f: &Restriction<T>, g: &Restriction<T>, eps: T, grid: &GridSpec<T>) -> bool {
    let two = eps + eps;
    if !(f.lo.is_finite() && f.hi.is_finite() && g.lo.is_finite() && g.hi.is_finite()) || !close(f.mass, g.mass) {
        return false;
    }
    let peak = grid.midpoints(f.lo, f.hi).map(|x| f.eval(x).max(g.eval(x))).fold(T::zero(), |a, b| a.max(b));
    let floor = T::lit(1e-9) * peak;
    let direct = |fe: &dyn Fn(T) -> T, ge: &dyn Fn(T) -> T, a: T, b: T| {
        b - a > two
            && single_crossing(grid.midpoints(a, b).map(|x| fe(x) - ge(x)), true, floor)
            && single_crossing(grid.midpoints(a, b - two).map(|x| fe(x) - ge(x + two)), false, floor)
    };
    if close(g.lo, f.lo + two) && close(g.hi, f.hi) {
        direct(&|x| f.eval(x), &|x| g.eval(x), f.lo, f.hi)
    } else if close(g.lo, f.lo) && close(f.hi, g.hi + two) {
        direct(&|x| f.eval(-x), &|x| g.eval(-x), -f.hi, -f.lo)
    } else {
        false
    }
}

/// Five-region coupling of a wider Gaussian `μ` and a narrower `ν`:
///
/// | region | `μ` part | `ν` part |
/// |---|---|---|
/// | `--` | `(-∞, b_l - ε]` | `(-∞, b_l + ε]` |
/// | `-` | `(b_l - ε, c1]` | `(b_l + ε, c1]` |
/// | `0` | `(c1, c2)` | `(c1, c2)` |
/// | `+` | `[c2, b_r + ε)` | `[c2, b_r - ε)` |
/// | `++` | `[b_r + ε, ∞)` | `[b_r - ε, ∞)` |
///
/// Each pair moves at zero cost, so `primal = 1 - Σ min(μ_k, ν_k)` bounds
/// `D_ε` from above.
#[derive(Debug, Clone, PartialEq)]
pub struct FiveRegionPlan<T> {
    pub mu: UnivariateFamily<T>,
    pub nu: UnivariateFamily<T>,
    pub eps: T,
    pub b_l: T,
    pub b_r: T,
    pub c1: T,
    pub c2: T,
    pub mu_mass: [T; 5],
    pub nu_mass: [T; 5],
    pub primal: T,
}

const SCAN_STEPS: usize = 4000;

/// Builds the plan for `N(mu1, sigma1²)` (wider) and `N(mu2, sigma2²)`.
/// `None` when the cut points `c1 <= c2` do not exist.
pub fn five_region_plan<T: Real>(mu1: T, sigma1: T, mu2: T, sigma2: T, eps: T) -> Result<Option<FiveRegionPlan<T>>> {
    crate::analytic::check_eps(eps)?;
    if !(sigma1 > sigma2 && sigma2 > T::zero()) {
        return invalid(format!("five-region plan needs sigma1 > sigma2 > 0, got {sigma1}, {sigma2}"));
    }
    let mu = UnivariateFamily::gaussian(mu1, sigma1)?;
    let nu = UnivariateFamily::gaussian(mu2, sigma2)?;
    let b_l = gaussian_intersections(mu1 + eps, sigma1, mu2 - eps, sigma2).left().expect("two roots");
    let b_r = gaussian_intersections(mu1 - eps, sigma1, mu2 + eps, sigma2).right().expect("two roots");
    let (lo, hi) = (b_l + eps, b_r - eps);
    if !(lo < hi) {
        return Ok(None);
    }
    let phi = |t: T| mu.mass_of(b_l - eps, t) - nu.mass_of(b_l + eps, t);
    let psi = |t: T| mu.mass_of(t, b_r + eps) - nu.mass_of(t, b_r - eps);
    let step = (hi - lo) / T::from_count(SCAN_STEPS);
    let c1 = (1..=SCAN_STEPS)
        .map(|k| lo + step * T::from_count(k))
        .find(|&t| phi(t) <= T::zero())
        .map(|t| bisect(phi, t - step, t));
    let c2 = (1..=SCAN_STEPS)
        .map(|k| hi - step * T::from_count(k))
        .find(|&t| psi(t) <= T::zero())
        .map(|t| bisect(psi, t, t + step));
    let (Some(c1), Some(c2)) = (c1, c2) else {
        return Ok(None);
    };
    if c1 > c2 {
        return Ok(None);
    }
    let (ninf, pinf) = (T::neg_infinity(), T::infinity());
    let mu_mass = [
        mu.mass_of(ninf, b_l - eps),
        mu.mass_of(b_l - eps, c1),
        mu.mass_of(c1, c2),
        mu.mass_of(c2, b_r + eps),
        mu.mass_of(b_r + eps, pinf),
    ];
    let nu_mass = [
        nu.mass_of(ninf, b_l + eps),
        nu.mass_of(b_l + eps, c1),
        nu.mass_of(c1, c2),
        nu.mass_of(c2, b_r - eps),
        nu.mass_of(b_r - eps, pinf),
    ];
    let matched = mu_mass.iter().zip(&nu_mass).fold(T::zero(), |acc, (&a, &b)| acc + a.min(b));
    Ok(Some(FiveRegionPlan { mu, nu, eps, b_l, b_r, c1, c2, mu_mass, nu_mass, primal: T::one() - matched }))
}

fn restrict<T>(density: &dyn Fn(T) -> T, lo: T, hi: T, mass: T) -> Restriction<'_, T> {
    Restriction { density, lo, hi, mass }
}

impl<T: Real> FiveRegionPlan<T> {
    /// Grid checks that each region pair moves at zero cost, in the order
    /// `--`, `-`, `0`, `+`, `++`.
    pub fn validate(&self, points: usize) -> [bool; 5] {
        let (mu, nu, eps) = (self.mu, self.nu, self.eps);
        let f = |x: T| mu.pdf(x);
        let g = |x: T| nu.pdf(x);
        let r = restrict::<T>;
        let grid = GridSpec { points, span: T::lit(12.0) * mu.scale() };
        let (ninf, pinf) = (T::neg_infinity(), T::infinity());
        let (b_l, b_r, c1, c2) = (self.b_l, self.b_r, self.c1, self.c2);
        let (m, n) = (self.mu_mass, self.nu_mass);
        let outer_l = check_shift_condition(&r(&f, ninf, b_l - eps, m[0]), &r(&g, ninf, b_l + eps, n[0]), eps, &grid);
        let inner_l = check_scrunch_condition(&r(&f, b_l - eps, c1, m[1]), &r(&g, b_l + eps, c1, n[1]), eps, &grid);
        let inner_r = check_scrunch_condition(&r(&f, c2, b_r + eps, m[3]), &r(&g, c2, b_r - eps, n[3]), eps, &grid);
        let outer_r = check_shift_condition(&r(&f, b_r + eps, pinf, m[4]), &r(&g, b_r - eps, pinf, n[4]), eps, &grid);
        let floor = T::lit(1e-12);
        let middle = c1 >= c2 || grid.midpoints(c1, c2).all(|x| at_most(f(x), g(x), floor));
        [outer_l, inner_l, middle, inner_r, outer_r]
    }
}
