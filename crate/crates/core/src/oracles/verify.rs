//! Seeded cross-checks of every solver against the oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    gaussian_equal_var, gaussian_general, gaussian_iso_ddim, gaussian_same_mean, triangular_pair, uniform_pair,
    AnalyticSolution,
};
use crate::discrete::{
    depsilon_exact, depsilon_exact_with, risk_from_depsilon, strassen_gap, ExactOptions, ExactSolver,
};
use crate::error::Result;
use crate::measures::{EmpiricalMeasure, IsoGaussian, Metric, UnivariateFamily};
use crate::mixture::{mixture_risk_lb, MatchingMode, MixtureSpec};
use crate::oracles::{exhaustive_min_assignment, grid_depsilon, small_transport_lp};
use crate::region::{region_risk, SetMass};

/// Instance counts for [`run_verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub assignment_instances: usize,
    pub lp_instances: usize,
    pub quantile_instances: usize,
    pub certificate_instances: usize,
    pub analytic_draws: usize,
    pub mixture_instances: usize,
    pub grid_draws: usize,
    pub grid_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            assignment_instances: 1000,
            lp_instances: 200,
            quantile_instances: 200,
            certificate_instances: 200,
            analytic_draws: 100,
            mixture_instances: 50,
            grid_draws: 4,
            grid_n: 1001,
        }
    }
}

/// Outcome of one family of checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Largest observed discrepancy (0 for boolean checks).
    pub max_error: f64,
    pub tolerance: f64,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str, tolerance: f64) -> Self {
        Self { name: name.into(), instances: 0, failures: 0, max_error: 0.0, tolerance, first_failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records `|error| <= tolerance`.
    fn close(&mut self, error: f64, what: impl FnOnce() -> String) {
        self.instances += 1;
        let e = error.abs();
        if e.is_nan() || e > self.max_error {
            self.max_error = if e.is_nan() { f64::INFINITY } else { e };
        }
        if !(e <= self.tolerance) {
            self.fail(what);
        }
    }

    fn holds(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(what);
        }
    }

    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Dyadic coordinates `k / 4` in `[0, 4]`, so exact ties at `2ε` occur often.
fn dyadic_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| f64::from(rng.gen_range(0..=16u32)) / 4.0).collect()).collect()
}

fn dyadic_eps(rng: &mut ChaCha8Rng) -> f64 {
    f64::from(rng.gen_range(0..=12u32)) / 8.0
}

/// Admissibility as the oracles see it: `|x - y| <= 2ε` on the line,
/// [`Metric::within`] otherwise.
pub fn oracle_admissible(metric: Metric, x: &[f64], y: &[f64], eps: f64) -> bool {
    if x.len() == 1 {
        (x[0] - y[0]).abs() <= eps + eps
    } else {
        metric.within(x, y, eps + eps)
    }
}

/// 0-1 cost matrix `1{d > 2ε}`.
pub fn indicator_costs(
    mu: &EmpiricalMeasure<f64>,
    nu: &EmpiricalMeasure<f64>,
    metric: Metric,
    eps: f64,
) -> Vec<Vec<f64>> {
    mu.points()
        .map(|x| nu.points().map(|y| if oracle_admissible(metric, x, y, eps) { 0.0 } else { 1.0 }).collect())
        .collect()
}

fn random_metric(rng: &mut ChaCha8Rng) -> Metric {
    if rng.gen_bool(0.5) {
        Metric::Euclidean
    } else {
        Metric::Chebyshev
    }
}

pub fn check_point_masses(rng: &mut ChaCha8Rng, draws: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("point-mass remark", 0.0);
    for _ in 0..draws {
        let eps = rng.gen_range(0.01..10.0);
        let d0 = EmpiricalMeasure::uniform_1d(&[0.0])?;
        let near = depsilon_exact(&d0, &EmpiricalMeasure::uniform_1d(&[2.0 * eps])?, Metric::Euclidean, eps)?.cost;
        let far = depsilon_exact(&d0, &EmpiricalMeasure::uniform_1d(&[4.0 * eps])?, Metric::Euclidean, eps)?.cost;
        out.holds(near == 0.0 && far == 1.0, || format!("eps {eps}: D(δ0, δ2ε) = {near}, D(δ0, δ4ε) = {far}"));
    }
    Ok(out)
}

pub fn check_assignment_oracle(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("flow vs exhaustive assignment", 1e-9);
    for _ in 0..instances {
        let n = rng.gen_range(1..=6);
        let dim = rng.gen_range(1..=2);
        let metric = random_metric(rng);
        let eps = dyadic_eps(rng);
        let mu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let nu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let (value, _) = exhaustive_min_assignment(&indicator_costs(&mu, &nu, metric, eps))?;
        let oracle = value / n as f64;
        let flow = depsilon_exact(&mu, &nu, metric, eps)?.cost;
        out.close(flow - oracle, || format!("n {n} dim {dim} {metric} eps {eps}: flow {flow}, oracle {oracle}"));
    }
    Ok(out)
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

pub fn check_transport_lp(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("flow vs transportation LP", 1e-9);
    for _ in 0..instances {
        let (n, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let dim = rng.gen_range(1..=2);
        let metric = random_metric(rng);
        let eps = dyadic_eps(rng);
        let mu = EmpiricalMeasure::new(dyadic_points(rng, n, dim), random_weights(rng, n))?;
        let nu = EmpiricalMeasure::new(dyadic_points(rng, m, dim), random_weights(rng, m))?;
        let oracle = small_transport_lp(mu.weights(), nu.weights(), &indicator_costs(&mu, &nu, metric, eps))?;
        let flow = depsilon_exact(&mu, &nu, metric, eps)?.cost;
        out.close(flow - oracle, || format!("{n}x{m} dim {dim} {metric} eps {eps}: flow {flow}, lp {oracle}"));
    }
    Ok(out)
}

/// Largest gap between order statistics of equal-size samples.
pub fn max_sorted_gap(x: &[f64], y: &[f64]) -> f64 {
    let (mut a, mut b) = (x.to_vec(), y.to_vec());
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

pub fn check_quantile_criterion(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("zero cost iff sorted gap <= 2ε", 0.0);
    for _ in 0..instances {
        let n = rng.gen_range(1..=12);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let gap = max_sorted_gap(&x, &y);
        // Half the draws sit exactly on the threshold.
        let eps = match rng.gen_range(0..3) {
            0 => gap / 2.0,
            1 => rng.gen_range(0.0..gap.max(1e-3)),
            _ => rng.gen_range(0.0..2.0),
        };
        let cost = depsilon_exact(
            &EmpiricalMeasure::uniform_1d(&x)?,
            &EmpiricalMeasure::uniform_1d(&y)?,
            Metric::Euclidean,
            eps,
        )?
        .cost;
        out.holds((cost == 0.0) == (gap <= eps + eps), || format!("n {n} eps {eps} gap {gap}: cost {cost}"));
    }
    Ok(out)
}

pub fn check_certificates(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("certificate marginals and duality", 1e-9);
    for _ in 0..instances {
        let (n, m) = (rng.gen_range(1..=20), rng.gen_range(1..=20));
        let dim = rng.gen_range(1..=3);
        let metric = random_metric(rng);
        let eps = dyadic_eps(rng);
        let mu = EmpiricalMeasure::new(dyadic_points(rng, n, dim), random_weights(rng, n))?;
        let nu = EmpiricalMeasure::new(dyadic_points(rng, m, dim), random_weights(rng, m))?;
        let cert = depsilon_exact(&mu, &nu, metric, eps)?;
        let chk = cert.check(&mu, &nu)?;
        let dual = chk.dual.unwrap_or(f64::NAN);
        let err = chk.marginal_error.max((chk.moved_far - cert.cost).abs()).max((dual - cert.cost).abs());
        out.close(err, || format!("{n}x{m} dim {dim} {metric} eps {eps}: cost {}, {chk:?}", cert.cost));
    }
    Ok(out)
}

pub fn check_sweep_monotone(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("exact risk nondecreasing in ε", 0.0);
    let eps: Vec<f64> = (0..=16).map(|k| f64::from(k) / 8.0).collect();
    let opts = ExactOptions { witness: false, ..ExactOptions::default() };
    for _ in 0..instances {
        let (n, dim) = (rng.gen_range(1..=15), rng.gen_range(1..=3));
        let metric = random_metric(rng);
        let mu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let nu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let certs = ExactSolver::new(&mu, &nu, metric)?.sweep(&eps, &opts)?;
        let ok = certs.windows(2).all(|w| w[0].risk() <= w[1].risk());
        out.holds(ok, || format!("n {n} dim {dim} {metric}: nonmonotone sweep"));
    }
    Ok(out)
}

/// Closed-form solution for family pairs, with the measures it refers to.
pub enum AnalyticCase {
    Line { name: &'static str, p0: UnivariateFamily<f64>, p1: UnivariateFamily<f64> },
    Iso { p0: IsoGaussian<f64>, p1: IsoGaussian<f64> },
}

impl AnalyticCase {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Line { name, .. } => name,
            Self::Iso { .. } => "gaussian-iso",
        }
    }

    pub fn solve(&self, eps: f64) -> Result<AnalyticSolution<f64>> {
        match self {
            Self::Iso { p0, p1 } => gaussian_iso_ddim(p0, p1, eps, Metric::Euclidean),
            Self::Line { name, p0, p1 } => match (*name, *p0, *p1) {
                (
                    "gaussian-equal-var",
                    UnivariateFamily::Gaussian { mu: a, sigma },
                    UnivariateFamily::Gaussian { mu: b, .. },
                ) => gaussian_equal_var(a, b, sigma, eps),
                (
                    "gaussian-same-mean",
                    UnivariateFamily::Gaussian { sigma: s0, .. },
                    UnivariateFamily::Gaussian { sigma: s1, .. },
                ) => gaussian_same_mean(s0, s1, eps),
                (
                    "gaussian-general",
                    UnivariateFamily::Gaussian { mu: a, sigma: s0 },
                    UnivariateFamily::Gaussian { mu: b, sigma: s1 },
                ) => gaussian_general(a, s0, b, s1, eps),
                ("uniform", UnivariateFamily::Uniform { a, b }, UnivariateFamily::Uniform { a: c, b: d }) => {
                    uniform_pair((a, b), (c, d), eps)
                }
                _ => triangular_pair(p0, p1, eps),
            },
        }
    }

    /// `(strassen gap at the returned classifier, risk of the returned
    /// classifier)`.
    pub fn closure(&self, sol: &AnalyticSolution<f64>, eps: f64) -> Result<(f64, f64)> {
        fn eval(
            p0: &impl SetMass<f64>,
            p1: &impl SetMass<f64>,
            sol: &AnalyticSolution<f64>,
            eps: f64,
        ) -> Result<(f64, f64)> {
            let gap = if sol.decides == 0 {
                strassen_gap(p0, p1, &sol.classifier, Metric::Euclidean, eps)?
            } else {
                strassen_gap(p1, p0, &sol.classifier, Metric::Euclidean, eps)?
            };
            Ok((gap, region_risk(p0, p1, &sol.decide_one(), Metric::Euclidean, eps)?))
        }
        match self {
            Self::Line { p0, p1, .. } => eval(p0, p1, sol, eps),
            Self::Iso { p0, p1 } => eval(p0, p1, sol, eps),
        }
    }

    /// The one-dimensional pair whose `D_ε` equals this case's.
    pub fn line_pair(&self) -> Result<(UnivariateFamily<f64>, UnivariateFamily<f64>)> {
        match self {
            Self::Line { p0, p1, .. } => Ok((*p0, *p1)),
            Self::Iso { p0, p1 } => {
                let dist = Metric::Euclidean.distance(p0.mu(), p1.mu())?;
                Ok((UnivariateFamily::gaussian(0.0, p0.sigma())?, UnivariateFamily::gaussian(dist, p1.sigma())?))
            }
        }
    }
}

/// One random draw for each of the six analytic families.
pub fn random_analytic_cases(rng: &mut ChaCha8Rng) -> Result<Vec<AnalyticCase>> {
    let g = UnivariateFamily::gaussian;
    let sigma = rng.gen_range(0.3..2.0);
    let dim = rng.gen_range(2..=5);
    let mu0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mu1: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (a, c) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let (w0, w1): (f64, f64) = (rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0));
    Ok(vec![
        AnalyticCase::Line { name: "gaussian-equal-var", p0: g(a, sigma)?, p1: g(c, sigma)? },
        AnalyticCase::Iso { p0: IsoGaussian::new(mu0, sigma)?, p1: IsoGaussian::new(mu1, sigma)? },
        AnalyticCase::Line { name: "gaussian-same-mean", p0: g(0.0, w0.max(w1))?, p1: g(0.0, w0.min(w1) * 0.99)? },
        AnalyticCase::Line { name: "gaussian-general", p0: g(a, w0)?, p1: g(c, w1)? },
        AnalyticCase::Line {
            name: "uniform",
            p0: UnivariateFamily::uniform(a, a + w0)?,
            p1: UnivariateFamily::uniform(c, c + w1)?,
        },
        AnalyticCase::Line {
            name: "triangular",
            p0: UnivariateFamily::triangular(a, w0)?,
            p1: UnivariateFamily::triangular(c, w1)?,
        },
    ])
}

pub fn check_analytic_closure(rng: &mut ChaCha8Rng, draws: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("closed forms: strassen gap and classifier risk", 1e-9);
    for _ in 0..draws {
        let eps = rng.gen_range(0.0..1.5);
        for case in random_analytic_cases(rng)? {
            let sol = case.solve(eps)?;
            let (gap, risk) = case.closure(&sol, eps)?;
            let err = (gap.max(0.0) - sol.depsilon).abs().max((risk - sol.risk).abs());
            out.close(err, || {
                format!("{} eps {eps}: D {} gap {gap}, risk {} vs {risk}", case.name(), sol.depsilon, sol.risk)
            });
        }
    }
    Ok(out)
}

/// Grid error constant: `|grid D_ε - closed form| <= GRID_C / n`.
pub const GRID_C: f64 = 16.0;

pub fn check_grid_agreement(rng: &mut ChaCha8Rng, draws: usize, n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("closed forms vs discretized exact solve", GRID_C / n as f64);
    let eps: Vec<f64> = (0..10).map(|k| 0.1 * f64::from(k)).collect();
    for _ in 0..draws {
        for case in random_analytic_cases(rng)? {
            let (f, g) = case.line_pair()?;
            let grid = grid_depsilon(&f, &g, &eps, n, 1.0 - 1e-9)?;
            for (&e, &d) in eps.iter().zip(&grid) {
                let cf = case.solve(e)?.depsilon;
                out.close(d - cf, || format!("{} eps {e}: grid {d}, closed form {cf}", case.name()));
            }
        }
    }
    Ok(out)
}

pub fn check_mixtures(rng: &mut ChaCha8Rng, instances: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("mixture bound: reduction and mode order", 0.0);
    for _ in 0..instances {
        let (n, dim) = (rng.gen_range(1..=6), rng.gen_range(1..=3));
        let metric = random_metric(rng);
        let eps = dyadic_eps(rng);
        let mu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let nu = EmpiricalMeasure::uniform(dyadic_points(rng, n, dim))?;
        let exact = risk_from_depsilon(depsilon_exact_with(&mu, &nu, metric, eps, &ExactOptions::default())?.cost)?;
        let zero = mixture_risk_lb(
            &MixtureSpec::new(mu.clone(), 0.0)?,
            &MixtureSpec::new(nu.clone(), 0.0)?,
            metric,
            eps,
            MatchingMode::Tight,
        )?;
        out.holds(zero.risk_lb.to_bits() == exact.to_bits(), || format!("σ = 0: {} vs exact {exact}", zero.risk_lb));
        let sigma = rng.gen_range(0.05..1.0);
        let (s0, s1) = (MixtureSpec::new(mu, sigma)?, MixtureSpec::new(nu, sigma)?);
        let tight = mixture_risk_lb(&s0, &s1, metric, eps, MatchingMode::Tight)?.risk_lb;
        let emp = mixture_risk_lb(&s0, &s1, metric, eps, MatchingMode::Empirical)?.risk_lb;
        out.holds(tight >= emp, || format!("σ {sigma} eps {eps}: tight {tight} < empirical {emp}"));
    }
    Ok(out)
}

/// Runs every check with its own seeded stream.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let stream = |k: u64| ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k));
    let checks = vec![
        check_point_masses(&mut stream(1), 10)?,
        check_assignment_oracle(&mut stream(2), cfg.assignment_instances)?,
        check_transport_lp(&mut stream(3), cfg.lp_instances)?,
        check_quantile_criterion(&mut stream(4), cfg.quantile_instances)?,
        check_certificates(&mut stream(5), cfg.certificate_instances)?,
        check_sweep_monotone(&mut stream(6), cfg.certificate_instances)?,
        check_analytic_closure(&mut stream(7), cfg.analytic_draws)?,
        check_mixtures(&mut stream(8), cfg.mixture_instances)?,
        check_grid_agreement(&mut stream(9), cfg.grid_draws, cfg.grid_n)?,
    ];
    Ok(VerifyReport { seed: cfg.seed, checks })
}

/// Checks on user-supplied class pairs: certificate consistency, sweep
/// monotonicity, and the exhaustive oracle when both classes are tiny.
pub fn verify_pair(
    mu: &EmpiricalMeasure<f64>,
    nu: &EmpiricalMeasure<f64>,
    metric: Metric,
    eps: &[f64],
) -> Result<Vec<CheckOutcome>> {
    let mut certs_ok = CheckOutcome::new("certificate marginals and duality", 1e-9);
    let mut mono = CheckOutcome::new("exact risk nondecreasing in ε", 0.0);
    let mut oracle = CheckOutcome::new("flow vs exhaustive assignment", 1e-9);
    let solver = ExactSolver::new(mu, nu, metric)?;
    let certs = solver.sweep(eps, &ExactOptions::default())?;
    let small = mu.len() == nu.len()
        && mu.len() <= crate::oracles::assignment::ASSIGNMENT_CAP
        && mu.is_uniform()
        && nu.is_uniform();
    for (&e, cert) in eps.iter().zip(&certs) {
        let chk = cert.check(mu, nu)?;
        let dual = chk.dual.unwrap_or(f64::NAN);
        let err = chk.marginal_error.max((chk.moved_far - cert.cost).abs()).max((dual - cert.cost).abs());
        certs_ok.close(err, || format!("eps {e}: cost {}, {chk:?}", cert.cost));
        if small {
            let (v, _) = exhaustive_min_assignment(&indicator_costs(mu, nu, metric, e))?;
            oracle.close(cert.cost - v / mu.len() as f64, || {
                format!("eps {e}: flow {}, oracle {}", cert.cost, v / mu.len() as f64)
            });
        }
    }
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&a, &b| eps[a].total_cmp(&eps[b]));
    mono.holds(order.windows(2).all(|w| certs[w[0]].risk() <= certs[w[1]].risk()), || "nonmonotone sweep".into());
    let mut out = vec![certs_ok, mono];
    if small {
        out.push(oracle);
    }
    Ok(out)
}
