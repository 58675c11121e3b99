//! Certified lower bounds on the adversarial risk of isotropic Gaussian
//! mixtures centred on data points.

use serde::{Deserialize, Serialize};

use crate::discrete::exact::{depsilon_exact_with, ExactOptions, Strategy};
use crate::discrete::hungarian::min_cost_assignment;
use crate::discrete::risk_from_depsilon;
use crate::error::{invalid, Error, Result};
use crate::interval::IntervalSet;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::family::{Distribution1d, UnivariateFamily};
use crate::measures::gaussian::gaussian_halfspace_mass;
use crate::measures::metric::Metric;
use crate::measures::special::q_tail;
use crate::region::{Halfspace, SetMass};
use crate::scalar::Real;

/// Largest class size for the O(n³) assignment solves; larger inputs fall
/// back to the exact empirical matching.
pub const ASSIGNMENT_CAP: usize = 2048;

/// Equal-weight mixture of `N(c_i, sigma^2 I)`; `sigma = 0` is the
/// empirical measure on the centres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec<T = f64> {
    centers: EmpiricalMeasure<T>,
    sigma: T,
}

impl<T: Real> MixtureSpec<T> {
    pub fn new(centers: EmpiricalMeasure<T>, sigma: T) -> Result<Self> {
        if !(sigma >= T::zero()) || !sigma.is_finite() {
            return invalid(format!("mixture sigma must be finite and >= 0, got {sigma}"));
        }
        if !centers.is_uniform() {
            return invalid("mixture centres must carry equal weights");
        }
        Ok(Self { centers, sigma })
    }

    pub fn centers(&self) -> &EmpiricalMeasure<T> {
        &self.centers
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn dim(&self) -> usize {
        self.centers.dim()
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    fn component(&self, i: usize) -> UnivariateFamily<T> {
        UnivariateFamily::Gaussian { mu: self.centers.point(i)[0], sigma: self.sigma }
    }
}

impl<T: Real> SetMass<T> for MixtureSpec<T> {
    fn dim(&self) -> usize {
        self.centers.dim()
    }

    fn total_mass(&self) -> T {
        self.centers.total_mass()
    }

    fn interval_mass(&self, set: &IntervalSet<T>) -> Result<T> {
        if self.sigma == T::zero() {
            return self.centers.interval_mass(set);
        }
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim() });
        }
        let mut total = T::zero();
        for i in 0..self.len() {
            let c = self.component(i);
            let m = set.intervals().iter().fold(T::zero(), |acc, iv| acc + c.mass_of(iv.lo.value(), iv.hi.value()));
            total = total + self.centers.weight(i) * m;
        }
        Ok(total)
    }

    fn halfspace_mass(&self, h: &Halfspace<T>) -> Result<T> {
        if self.sigma == T::zero() {
            return self.centers.halfspace_mass(h);
        }
        h.check_dim(self.dim())?;
        Ok(self
            .centers
            .points()
            .zip(self.centers.weights())
            .fold(T::zero(), |acc, (c, &w)| acc + w * gaussian_halfspace_mass(c, self.sigma, h)))
    }
}

/// Transport cost between `N(0, σ²I)` and `N(δ, σ²I)` for the coupling that
/// first shifts by `s` with `||s|| <= 2ε` and then couples the remaining
/// offset `δ - s` maximally: `1 - 2Q(||δ - s||₂ / 2σ)`.
///
/// The Euclidean shift is `δ` shortened by `2ε` (exact); the Chebyshev shift
/// clamps every coordinate to `[-2ε, 2ε]` (an upper bound).
pub fn pair_cost<T: Real>(delta: &[T], sigma: T, eps: T, metric: Metric) -> Result<T> {
    if !(sigma > T::zero()) || !sigma.is_finite() {
        return invalid(format!("pair cost needs sigma > 0, got {sigma}"));
    }
    if !(eps >= T::zero()) {
        return Err(Error::NegativeEps(eps.to_f64_lossy()));
    }
    let two_eps = eps + eps;
    let residual = match metric {
        Metric::Euclidean => {
            let norm = delta.iter().fold(T::zero(), |acc, &d| acc + d * d).sqrt();
            (norm - two_eps).max(T::zero())
        }
        Metric::Chebyshev => delta
            .iter()
            .fold(T::zero(), |acc, &d| {
                let r = (d.abs() - two_eps).max(T::zero());
                acc + r * r
            })
            .sqrt(),
    };
    Ok((T::one() - T::lit(2.0) * q_tail(residual / (sigma + sigma))).max(T::zero()))
}

/// How mixture centres are paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingMode {
    /// A matching realizing the exact empirical D_ε at the same budget.
    Empirical,
    /// The assignment minimizing the total pair cost.
    #[default]
    Tight,
}

impl std::fmt::Display for MatchingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Empirical => "empirical",
            Self::Tight => "tight",
        })
    }
}

impl std::str::FromStr for MatchingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "empirical" => Ok(Self::Empirical),
            "tight" => Ok(Self::Tight),
            _ => Err(Error::Format(format!("unknown matching mode `{s}` (expected empirical or tight)"))),
        }
    }
}

/// Lower bound on the mixture risk together with the coupling behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureBoundReport<T = f64> {
    pub eps: T,
    pub sigma: T,
    pub metric: Metric,
    pub mode: MatchingMode,
    /// `½ (1 - depsilon_ub)`.
    pub risk_lb: T,
    /// Mean pair cost: an upper bound on D_ε between the mixtures.
    pub depsilon_ub: T,
    /// `matching[i]` is the class-1 centre paired with class-0 centre `i`.
    pub matching: Vec<usize>,
    pub per_pair_costs: Vec<T>,
    /// Tight mode exceeded [`ASSIGNMENT_CAP`] and used the empirical matching.
    pub fallback: bool,
    /// The matching was carried over from a smaller budget of a sweep.
    pub carried: bool,
}

fn check_pairable<T: Real>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>) -> Result<()> {
    if mu.dim() != nu.dim() {
        return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
    }
    if mu.len() != nu.len() {
        return invalid(format!("pairing needs equal class sizes, got {} and {}", mu.len(), nu.len()));
    }
    if !mu.is_uniform() || !nu.is_uniform() {
        return invalid("pairing needs uniform weights");
    }
    Ok(())
}

fn empirical_matching<T: Real>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    metric: Metric,
    eps: T,
) -> Result<(T, Vec<usize>)> {
    let opts = ExactOptions { strategy: Strategy::Matching, prefilter: true, witness: false };
    let cert = depsilon_exact_with(mu, nu, metric, eps, &opts)?;
    let mut matching = vec![usize::MAX; mu.len()];
    for t in &cert.coupling {
        matching[t.from] = t.to;
    }
    debug_assert!(matching.iter().all(|&j| j < nu.len()));
    Ok((cert.cost, matching))
}

fn cost_matrix<T: Real>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    sigma: T,
    eps: T,
    metric: Metric,
) -> Result<Vec<Vec<T>>> {
    mu.points()
        .map(|x| {
            nu.points()
                .map(|y| {
                    let delta: Vec<T> = x.iter().zip(y).map(|(&a, &b)| b - a).collect();
                    pair_cost(&delta, sigma, eps, metric)
                })
                .collect()
        })
        .collect()
}

fn mean_pair_cost<T: Real>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    matching: &[usize],
    sigma: T,
    eps: T,
    metric: Metric,
) -> Result<Vec<T>> {
    matching
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let delta: Vec<T> = mu.point(i).iter().zip(nu.point(j)).map(|(&a, &b)| b - a).collect();
            pair_cost(&delta, sigma, eps, metric)
        })
        .collect()
}

fn mean<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a + b) / T::from_count(v.len().max(1))
}

/// Pairs class-0 centres with class-1 centres; returns `(matching, fallback)`.
pub fn pair_matching<T: Real>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    metric: Metric,
    eps: T,
    sigma: T,
    mode: MatchingMode,
) -> Result<(Vec<usize>, bool)> {
    check_pairable(mu, nu)?;
    let (_, empirical) = empirical_matching(mu, nu, metric, eps)?;
    if mode == MatchingMode::Empirical || sigma == T::zero() {
        return Ok((empirical, false));
    }
    if mu.len() > ASSIGNMENT_CAP {
        return Ok((empirical, true));
    }
    let (_, tight) = min_cost_assignment(&cost_matrix(mu, nu, sigma, eps, metric)?);
    // Guard against rounding in the assignment: never do worse than the
    // empirical matching under the same cost.
    let t = mean(&mean_pair_cost(mu, nu, &tight, sigma, eps, metric)?);
    let e = mean(&mean_pair_cost(mu, nu, &empirical, sigma, eps, metric)?);
    Ok((if e < t { empirical } else { tight }, false))
}

/// Certified lower bound on the adversarial risk between two mixtures with a
/// shared `σ`. At `σ = 0` the result is the exact empirical risk.
pub fn mixture_risk_lb<T: Real>(
    spec0: &MixtureSpec<T>,
    spec1: &MixtureSpec<T>,
    metric: Metric,
    eps: T,
    mode: MatchingMode,
) -> Result<MixtureBoundReport<T>> {
    if spec0.sigma() != spec1.sigma() {
        return invalid(format!("mixtures need a shared sigma, got {} and {}", spec0.sigma(), spec1.sigma()));
    }
    let (mu, nu, sigma) = (spec0.centers(), spec1.centers(), spec0.sigma());
    check_pairable(mu, nu)?;
    if sigma == T::zero() {
        let (cost, matching) = empirical_matching(mu, nu, metric, eps)?;
        let adm = crate::discrete::exact::Admissible::new(metric, mu.dim(), eps);
        let per_pair_costs = matching
            .iter()
            .enumerate()
            .map(|(i, &j)| if adm.test(mu.point(i), nu.point(j)) { T::zero() } else { T::one() })
            .collect();
        return Ok(MixtureBoundReport {
            eps,
            sigma,
            metric,
            mode,
            risk_lb: risk_from_depsilon(cost)?,
            depsilon_ub: cost,
            matching,
            per_pair_costs,
            fallback: false,
            carried: false,
        });
    }
    let (matching, fallback) = pair_matching(mu, nu, metric, eps, sigma, mode)?;
    let per_pair_costs = mean_pair_cost(mu, nu, &matching, sigma, eps, metric)?;
    let depsilon_ub = mean(&per_pair_costs).min(T::one());
    Ok(MixtureBoundReport {
        eps,
        sigma,
        metric,
        mode,
        risk_lb: (T::one() - depsilon_ub) * T::lit(0.5),
        depsilon_ub,
        matching,
        per_pair_costs,
        fallback,
        carried: false,
    })
}

/// Bounds for every budget in `eps`, reported in input order. Each budget
/// also re-scores the best matching found at the smaller budgets; a fixed
/// matching's pair costs only fall as ε grows, so the bound is
/// nondecreasing in ε across the sweep.
pub fn mixture_risk_sweep<T: Real>(
    spec0: &MixtureSpec<T>,
    spec1: &MixtureSpec<T>,
    metric: Metric,
    eps: &[T],
    mode: MatchingMode,
) -> Result<Vec<MixtureBoundReport<T>>> {
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&a, &b| eps[a].partial_cmp(&eps[b]).unwrap_or(std::cmp::Ordering::Equal));
    let (mu, nu, sigma) = (spec0.centers(), spec1.centers(), spec0.sigma());
    let mut out: Vec<Option<MixtureBoundReport<T>>> = vec![None; eps.len()];
    let mut best: Option<Vec<usize>> = None;
    for i in order {
        let mut r = mixture_risk_lb(spec0, spec1, metric, eps[i], mode)?;
        if let (Some(prev), true) = (&best, sigma > T::zero()) {
            let costs = mean_pair_cost(mu, nu, prev, sigma, eps[i], metric)?;
            let d = mean(&costs).min(T::one());
            if d < r.depsilon_ub {
                r.depsilon_ub = d;
                r.risk_lb = (T::one() - d) * T::lit(0.5);
                r.matching = prev.clone();
                r.per_pair_costs = costs;
                r.carried = true;
            }
        }
        best = Some(r.matching.clone());
        out[i] = Some(r);
    }
    Ok(out.into_iter().map(|r| r.expect("every budget solved")).collect())
}

/// `½ ·` mean distance over the minimum-total-distance pairing of the two
/// samples (sorted order on the line).
pub fn sigma_star<T: Real>(mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>, metric: Metric) -> Result<T> {
    if mu.is_empty() || nu.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    check_pairable(mu, nu)?;
    let total = if mu.dim() == 1 {
        let sorted = |m: &EmpiricalMeasure<T>| {
            let mut v = m.values_1d().map(|v| v.to_vec())?;
            v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            Ok::<_, Error>(v)
        };
        let (a, b) = (sorted(mu)?, sorted(nu)?);
        a.iter().zip(&b).fold(T::zero(), |acc, (&x, &y)| acc + (x - y).abs())
    } else {
        if mu.len() > ASSIGNMENT_CAP {
            return Err(Error::TooLarge { what: "class size for sigma*", size: mu.len(), cap: ASSIGNMENT_CAP });
        }
        let d: Vec<Vec<T>> = mu
            .points()
            .map(|x| nu.points().map(|y| metric.distance(x, y)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        min_cost_assignment(&d).0
    };
    Ok(T::lit(0.5) * total / T::from_count(mu.len()))
}
