//! Acceptance suite: one test per criterion. Each prints a single
//! `criterion NN PASS|FAIL` line with its measured error and elapsed time,
//! then asserts. Tolerances and time budgets are pinned as constants.

use std::time::{Duration, Instant};

use advrisk::analytic::{
    gaussian_equal_var, gaussian_general, gaussian_iso_ddim, gaussian_same_mean, motivating_example, triangular_pair,
    uniform_pair,
};
use advrisk::discrete::{depsilon_exact, risk_from_depsilon, wasserstein_p, wp_lower_bound, ExactOptions, ExactSolver};
use advrisk::loss::{convex_lower_bound, deviation_bound, lipschitz_upper_bound, loss_bounds, QuadraticToy};
use advrisk::mixture::{mixture_risk_lb, mixture_risk_sweep};
use advrisk::oracles::grid::discretize_on;
use advrisk::oracles::verify::{indicator_costs, max_sorted_gap, random_analytic_cases, AnalyticCase};
use advrisk::oracles::{exhaustive_min_assignment, grid_depsilon, small_transport_lp};
use advrisk::region::region_risk;
use advrisk::{
    classifier_risk, BinaryProblem, EmpiricalMeasure, IntervalSet, IsoGaussian, MatchingMode, Metric, MixtureSpec,
    Region, UnivariateFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

const CLOSURE_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-9;
const GRID_N: usize = 4001;
const GRID_TOL: f64 = 2e-3;
const GRID_COVERAGE: f64 = 1.0 - 1e-7;
const BAND_TOL: f64 = 1e-8;
const DENSITY_TOL: f64 = 1e-9;
const RANGE_TOL: f64 = 1e-9;
const WP_TOL: f64 = 1e-9;
const MIXTURE_GRID_TOL: f64 = 2e-3;
/// Resolution of the numerical minimizer that measures the toy's risk: the
/// minimum value is accurate to rounding, its argmin only to about the square
/// root of machine precision.
const MEASURED_RISK_TOL: f64 = 1e-12;
const MEASURED_ARGMIN_TOL: f64 = 1e-6;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn report(n: u32, name: &str, pass: bool, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let pass = pass && elapsed <= budget;
    println!(
        "criterion {n:02} {} {name}: {detail} ({:.2?} of {:.0?})",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(pass, "criterion {n} failed: {detail}, elapsed {elapsed:.2?}");
}

fn metric(rng: &mut ChaCha8Rng) -> Metric {
    if rng.gen_bool(0.5) {
        Metric::Euclidean
    } else {
        Metric::Chebyshev
    }
}

fn dyadic_points(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| f64::from(rng.gen_range(0..=16u32)) / 4.0).collect()).collect()
}

fn dyadic_eps(rng: &mut ChaCha8Rng) -> f64 {
    f64::from(rng.gen_range(0..=12u32)) / 8.0
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

fn nondecreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

#[test]
fn criterion_01_point_mass_remark() {
    let start = Instant::now();
    let mut rng = rng(1);
    let mut bad = Vec::new();
    for _ in 0..10 {
        let eps: f64 = rng.gen_range(0.01..10.0);
        let d0 = EmpiricalMeasure::uniform_1d(&[0.0]).unwrap();
        let near = depsilon_exact(&d0, &EmpiricalMeasure::uniform_1d(&[2.0 * eps]).unwrap(), Metric::Euclidean, eps)
            .unwrap()
            .cost;
        let far = depsilon_exact(&d0, &EmpiricalMeasure::uniform_1d(&[4.0 * eps]).unwrap(), Metric::Euclidean, eps)
            .unwrap()
            .cost;
        if near != 0.0 || far != 1.0 {
            bad.push(format!("eps {eps}: {near}, {far}"));
        }
    }
    report(
        1,
        "point masses",
        bad.is_empty(),
        &format!("10 draws, exact; failures {bad:?}"),
        start,
        Duration::from_secs(1),
    );
}

fn closure_1d(case: &AnalyticCase, eps: f64) -> (f64, f64) {
    let sol = case.solve(eps).unwrap();
    let (gap, region) = case.closure(&sol, eps).unwrap();
    let risk = match case {
        AnalyticCase::Line { p0, p1, .. } => {
            let problem = BinaryProblem::new(*p0, *p1).unwrap();
            match sol.decide_one() {
                Region::Intervals { set: a } => classifier_risk(&problem, &a, eps).unwrap(),
                other => region_risk(p0, p1, &other, Metric::Euclidean, eps).unwrap(),
            }
        }
        AnalyticCase::Iso { .. } => region,
    };
    ((gap.max(0.0) - sol.depsilon).abs(), (risk - sol.risk).abs())
}

#[test]
fn criterion_02_duality_closure() {
    let start = Instant::now();
    let mut rng = rng(2);
    let (mut gap_err, mut risk_err, mut count) = (0.0f64, 0.0f64, 0);
    for _ in 0..100 {
        let eps = rng.gen_range(0.0..1.5);
        for case in random_analytic_cases(&mut rng).unwrap() {
            let (g, r) = closure_1d(&case, eps);
            gap_err = gap_err.max(g);
            risk_err = risk_err.max(r);
            count += 1;
        }
    }
    report(
        2,
        "duality closure",
        count == 600 && gap_err <= CLOSURE_TOL && risk_err <= CLOSURE_TOL,
        &format!("{count} solves over 6 families, max |gap - D| {gap_err:.2e}, max |risk - R| {risk_err:.2e}, tol {CLOSURE_TOL:e}"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_03_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = rng(3);
    let mut assign_err = 0.0f64;
    for _ in 0..1000 {
        let (n, dim) = (rng.gen_range(1..=6), rng.gen_range(1..=2));
        let (m, eps) = (metric(&mut rng), dyadic_eps(&mut rng));
        let mu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let nu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let (v, _) = exhaustive_min_assignment(&indicator_costs(&mu, &nu, m, eps)).unwrap();
        assign_err = assign_err.max((depsilon_exact(&mu, &nu, m, eps).unwrap().cost - v / n as f64).abs());
    }
    let mut lp_err = 0.0f64;
    for _ in 0..200 {
        let (n, k, dim) = (rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=2));
        let (m, eps) = (metric(&mut rng), dyadic_eps(&mut rng));
        let mu = EmpiricalMeasure::new(dyadic_points(&mut rng, n, dim), weights(&mut rng, n)).unwrap();
        let nu = EmpiricalMeasure::new(dyadic_points(&mut rng, k, dim), weights(&mut rng, k)).unwrap();
        let lp = small_transport_lp(mu.weights(), nu.weights(), &indicator_costs(&mu, &nu, m, eps)).unwrap();
        lp_err = lp_err.max((depsilon_exact(&mu, &nu, m, eps).unwrap().cost - lp).abs());
    }
    report(
        3,
        "oracle equivalence",
        assign_err <= ORACLE_TOL && lp_err <= ORACLE_TOL,
        &format!("1000 assignment max err {assign_err:.2e}, 200 transport max err {lp_err:.2e}, tol {ORACLE_TOL:e}"),
        start,
        Duration::from_secs(30),
    );
}

type ClosedForm = Box<dyn Fn(f64) -> f64>;

/// Fixed representatives of the six families, as their one-dimensional
/// pairs; the isotropic case reduces to the line through the two means.
fn grid_cases() -> Vec<(&'static str, UnivariateFamily, UnivariateFamily, ClosedForm)> {
    let g = |m, s| UnivariateFamily::gaussian(m, s).unwrap();
    let iso0 = IsoGaussian::new(vec![0.0, 0.0, 0.0], 0.8).unwrap();
    let iso1 = IsoGaussian::new(vec![1.0, -1.0, 0.5], 0.8).unwrap();
    let dist = Metric::Euclidean.distance(iso0.mu(), iso1.mu()).unwrap();
    let t0 = UnivariateFamily::triangular(0.0, 1.0).unwrap();
    let t1 = UnivariateFamily::triangular(0.5, 2.0).unwrap();
    vec![
        (
            "gaussian-equal-var",
            g(0.0, 1.0),
            g(2.0, 1.0),
            Box::new(|e| gaussian_equal_var(0.0, 2.0, 1.0, e).unwrap().depsilon),
        ),
        (
            "gaussian-iso",
            g(0.0, 0.8),
            g(dist, 0.8),
            Box::new(move |e| gaussian_iso_ddim(&iso0, &iso1, e, Metric::Euclidean).unwrap().depsilon),
        ),
        (
            "gaussian-same-mean",
            g(0.0, 1.0),
            g(0.0, 0.5),
            Box::new(|e| gaussian_same_mean(1.0, 0.5, e).unwrap().depsilon),
        ),
        (
            "gaussian-general",
            g(0.0, 1.0),
            g(1.0, 0.5),
            Box::new(|e| gaussian_general(0.0, 1.0, 1.0, 0.5, e).unwrap().depsilon),
        ),
        (
            "uniform",
            UnivariateFamily::uniform(0.0, 1.0).unwrap(),
            UnivariateFamily::uniform(0.5, 3.0).unwrap(),
            Box::new(|e| uniform_pair((0.0, 1.0), (0.5, 3.0), e).unwrap().depsilon),
        ),
        ("triangular", t0, t1, Box::new(move |e| triangular_pair(&t0, &t1, e).unwrap().depsilon)),
    ]
}

#[test]
fn criterion_04_discretization_convergence() {
    let start = Instant::now();
    let eps: Vec<f64> = (0..20).map(|k| 0.05 * f64::from(k)).collect();
    let mut worst = Vec::new();
    let mut max_err = 0.0f64;
    for (name, f, g, closed) in grid_cases() {
        let grid = grid_depsilon(&f, &g, &eps, GRID_N, GRID_COVERAGE).unwrap();
        let err = eps.iter().zip(&grid).map(|(&e, &d)| (d - closed(e)).abs()).fold(0.0, f64::max);
        max_err = max_err.max(err);
        worst.push(format!("{name} {err:.2e}"));
    }
    report(
        4,
        "grid convergence",
        max_err <= GRID_TOL,
        &format!(
            "n {GRID_N}, 20 eps, max gap {max_err:.2e} (measured C = gap * n = {:.2}), tol {GRID_TOL:e}; {}",
            max_err * GRID_N as f64,
            worst.join(", ")
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_05_centered_band() {
    let start = Instant::now();
    let (s0, s1, eps): (f64, f64, f64) = (1.0, 0.5, 0.3);
    let (w, _) = motivating_example(s0, s1, eps).unwrap();
    let m = gaussian_same_mean(s0, s1, eps).unwrap().boundary("m").unwrap();
    let phi = |x: f64, s: f64| (-(x / s).powi(2) / 2.0).exp() / (s * (2.0 * std::f64::consts::PI).sqrt());
    let band = (w - m).abs();
    let density = (phi(w - eps, s1) - phi(w + eps, s0)).abs();
    report(
        5,
        "centered band",
        band <= BAND_TOL && density <= DENSITY_TOL,
        &format!("w {w:.12}, |w - m| {band:.2e} (tol {BAND_TOL:e}), |phi1(w-eps) - phi0(w+eps)| {density:.2e} (tol {DENSITY_TOL:e})"),
        start,
        Duration::from_secs(1),
    );
}

/// Risk curve on an ascending sweep: range against its first value and
/// monotonicity, exact comparisons plus `RANGE_TOL` on the range.
fn curve_ok(risks: &[f64]) -> bool {
    let r0 = risks[0];
    nondecreasing(risks) && risks.iter().all(|&r| r >= r0 - RANGE_TOL && r <= 0.5 + RANGE_TOL)
}

#[test]
fn criterion_06_monotone_and_in_range() {
    let start = Instant::now();
    let mut rng = rng(6);
    let sweep: Vec<f64> = (0..=24).map(|k| f64::from(k) / 12.0).collect();
    let positive: Vec<f64> = sweep.iter().map(|&e| e + 1.0 / 64.0).collect();
    let mut failures: Vec<String> = Vec::new();
    let mut curves = 0;
    let mut check = |name: &str, risks: Vec<f64>| {
        curves += 1;
        if !curve_ok(&risks) {
            failures.push(format!("{name}: {risks:?}"));
        }
    };
    for _ in 0..50 {
        let (n, dim, m) = (rng.gen_range(1..=12), rng.gen_range(1..=3), metric(&mut rng));
        let mu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let nu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let opts = ExactOptions { witness: false, ..ExactOptions::default() };
        let exact = ExactSolver::new(&mu, &nu, m).unwrap().sweep(&sweep, &opts).unwrap();
        check("exact", exact.iter().map(|c| c.risk()).collect());
        for p in [1.0, 2.0] {
            let w = wasserstein_p(&mu, &nu, Metric::Euclidean, p).unwrap();
            check("wp", positive.iter().map(|&e| wp_lower_bound(w, e, p).unwrap()).collect());
        }
        for mode in [MatchingMode::Tight, MatchingMode::Empirical] {
            let sigma = rng.gen_range(0.0..1.0);
            let (a, b) = (MixtureSpec::new(mu.clone(), sigma).unwrap(), MixtureSpec::new(nu.clone(), sigma).unwrap());
            let bounds = mixture_risk_sweep(&a, &b, m, &sweep, mode).unwrap();
            check(&format!("mixture {mode} sigma {sigma}"), bounds.iter().map(|r| r.risk_lb).collect());
        }
        for case in random_analytic_cases(&mut rng).unwrap() {
            check(case.name(), sweep.iter().map(|&e| case.solve(e).unwrap().risk).collect());
        }
    }
    report(
        6,
        "monotone and in range",
        failures.is_empty(),
        &format!("{curves} curves of 25 eps (exact, W_p, mixture, 6 closed forms); failures {failures:?}"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_07_wp_dominance() {
    let start = Instant::now();
    let mut rng = rng(7);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100 {
        let (n, k, dim) = (rng.gen_range(1..=20), rng.gen_range(1..=20), rng.gen_range(1..=3));
        let pts =
            |rng: &mut ChaCha8Rng, n| (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
        let mu = EmpiricalMeasure::new(pts(&mut rng, n), weights(&mut rng, n)).unwrap();
        let nu = EmpiricalMeasure::new(pts(&mut rng, k), weights(&mut rng, k)).unwrap();
        let eps = rng.gen_range(0.01..2.0);
        let risk = depsilon_exact(&mu, &nu, Metric::Euclidean, eps).unwrap().risk();
        for p in [1.0, 2.0] {
            let bound = wp_lower_bound(wasserstein_p(&mu, &nu, Metric::Euclidean, p).unwrap(), eps, p).unwrap();
            worst = worst.max(bound - risk);
        }
    }
    report(
        7,
        "W_p dominance",
        worst <= WP_TOL,
        &format!("100 pairs, p in {{1, 2}}, max (bound - risk) {worst:.2e}, tol {WP_TOL:e}"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_08_quantile_criterion() {
    let start = Instant::now();
    let mut rng = rng(8);
    let (mut bad, mut on_threshold) = (Vec::new(), 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let gap = max_sorted_gap(&x, &y);
        let eps = match rng.gen_range(0..3) {
            0 => {
                on_threshold += 1;
                gap / 2.0
            }
            1 => rng.gen_range(0.0..gap.max(1e-3)),
            _ => rng.gen_range(0.0..2.0),
        };
        let cost = depsilon_exact(
            &EmpiricalMeasure::uniform_1d(&x).unwrap(),
            &EmpiricalMeasure::uniform_1d(&y).unwrap(),
            Metric::Euclidean,
            eps,
        )
        .unwrap()
        .cost;
        if (cost == 0.0) != (gap <= 2.0 * eps) {
            bad.push(format!("n {n} eps {eps} gap {gap} cost {cost}"));
        }
    }
    report(
        8,
        "quantile criterion",
        bad.is_empty(),
        &format!("200 pairs ({on_threshold} exactly on the threshold), exact; failures {bad:?}"),
        start,
        Duration::from_secs(10),
    );
}

/// Mixture risk by discretizing both mixtures on a shared grid and solving
/// exactly; `GRID_N` cells over the centres padded by 8σ.
fn grid_mixture_risk(a: &MixtureSpec<f64>, b: &MixtureSpec<f64>, eps: f64) -> f64 {
    let centres: Vec<f64> = a.centers().points().chain(b.centers().points()).map(|p| p[0]).collect();
    let pad = 8.0 * a.sigma();
    let lo = centres.iter().copied().fold(f64::INFINITY, f64::min) - pad;
    let hi = centres.iter().copied().fold(f64::NEG_INFINITY, f64::max) + pad;
    let ga = discretize_on(a, lo, hi, GRID_N).unwrap().to_empirical().unwrap();
    let gb = discretize_on(b, lo, hi, GRID_N).unwrap().to_empirical().unwrap();
    depsilon_exact(&ga, &gb, Metric::Euclidean, eps).unwrap().risk()
}

#[test]
fn criterion_09_mixture_reduction_and_validity() {
    let start = Instant::now();
    let mut rng = rng(9);
    let mut bit_failures = 0;
    let mut order_failures = 0;
    for _ in 0..200 {
        let (n, dim, m, eps) = (rng.gen_range(1..=6), rng.gen_range(1..=3), metric(&mut rng), dyadic_eps(&mut rng));
        let mu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let nu = EmpiricalMeasure::uniform(dyadic_points(&mut rng, n, dim)).unwrap();
        let exact = risk_from_depsilon(depsilon_exact(&mu, &nu, m, eps).unwrap().cost).unwrap();
        for mode in [MatchingMode::Tight, MatchingMode::Empirical] {
            let zero = mixture_risk_lb(
                &MixtureSpec::new(mu.clone(), 0.0).unwrap(),
                &MixtureSpec::new(nu.clone(), 0.0).unwrap(),
                m,
                eps,
                mode,
            )
            .unwrap();
            bit_failures += usize::from(zero.risk_lb.to_bits() != exact.to_bits());
        }
        let sigma = rng.gen_range(0.05..1.5);
        let (a, b) = (MixtureSpec::new(mu, sigma).unwrap(), MixtureSpec::new(nu, sigma).unwrap());
        let tight = mixture_risk_lb(&a, &b, m, eps, MatchingMode::Tight).unwrap().risk_lb;
        let emp = mixture_risk_lb(&a, &b, m, eps, MatchingMode::Empirical).unwrap().risk_lb;
        order_failures += usize::from(tight < emp);
    }
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let centres = |rng: &mut ChaCha8Rng| (0..n).map(|_| vec![rng.gen_range(-2.0..2.0)]).collect::<Vec<_>>();
        let sigma = rng.gen_range(0.2..1.0);
        let a = MixtureSpec::new(EmpiricalMeasure::uniform(centres(&mut rng)).unwrap(), sigma).unwrap();
        let b = MixtureSpec::new(EmpiricalMeasure::uniform(centres(&mut rng)).unwrap(), sigma).unwrap();
        let eps = rng.gen_range(0.0..1.0);
        for mode in [MatchingMode::Tight, MatchingMode::Empirical] {
            let bound = mixture_risk_lb(&a, &b, Metric::Euclidean, eps, mode).unwrap().risk_lb;
            excess = excess.max(bound - grid_mixture_risk(&a, &b, eps));
        }
    }
    report(
        9,
        "mixture reduction and validity",
        bit_failures == 0 && order_failures == 0 && excess <= MIXTURE_GRID_TOL,
        &format!(
            "sigma = 0 bit mismatches {bit_failures}/400, tight < empirical {order_failures}/200, \
             40 d = 1 mixtures: max (bound - grid risk) {excess:.2e}, tol {MIXTURE_GRID_TOL:e}"
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_10_separated_clusters() {
    let start = Instant::now();
    let mut rng = rng(10);
    let (n, dim) = (1000, 64);
    let cluster = |rng: &mut ChaCha8Rng, shift: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| {
                (0..dim)
                    .map(|k| {
                        let z: f64 = StandardNormal.sample(rng);
                        0.1 * z + if k == 0 { shift } else { 0.0 }
                    })
                    .collect()
            })
            .collect()
    };
    let mu = EmpiricalMeasure::uniform(cluster(&mut rng, 0.0)).unwrap();
    let nu = EmpiricalMeasure::uniform(cluster(&mut rng, 3.0)).unwrap();
    let opts = ExactOptions { witness: false, ..ExactOptions::default() };
    let mut lines = Vec::new();
    let mut pass = true;
    for m in [Metric::Euclidean, Metric::Chebyshev] {
        let dmin =
            mu.points().flat_map(|x| nu.points().map(move |y| m.distance(x, y).unwrap())).fold(f64::INFINITY, f64::min);
        let below = [0.0, 0.25, 0.5, 0.9, 1.0 - 1e-9].map(|f| f * dmin / 2.0);
        let above = [1.0 + 1e-9, 1.1, 1.5, 3.0].map(|f| f * dmin / 2.0);
        let eps: Vec<f64> = below.iter().chain(&above).copied().collect();
        let risks: Vec<f64> =
            ExactSolver::new(&mu, &nu, m).unwrap().sweep(&eps, &opts).unwrap().iter().map(|c| c.risk()).collect();
        let ok = risks[..below.len()].iter().all(|&r| r == 0.0)
            && risks[below.len()..].iter().all(|&r| r > 0.0)
            && nondecreasing(&risks);
        pass &= ok;
        lines.push(format!("{m}: min cross distance {dmin:.4}, risks {risks:?}"));
    }
    report(
        10,
        "separated clusters",
        pass,
        &format!("2x{n} points, d {dim}; zero below half the min cross distance, positive above; {}", lines.join("; ")),
        start,
        Duration::from_secs(60),
    );
}

/// Adversarial risk of the toy at `w`, from its data: each atom is moved to
/// the end of `[x - ε, x + ε]` farther from `w` (the loss is convex in `x`).
fn toy_adversarial_risk(w: f64, eps: f64) -> f64 {
    let worst = |x: f64| 0.5 * ((x - eps - w).powi(2)).max((x + eps - w).powi(2));
    0.7 * worst(0.0) + 0.3 * worst(1.0)
}

/// Golden-section minimum of a unimodal function on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-12 {
        let (c, d) = (b - r * (b - a), a + r * (b - a));
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let w = 0.5 * (a + b);
    (w, f(w))
}

#[test]
fn criterion_11_loss_sandwich() {
    let start = Instant::now();
    let toy = QuadraticToy;
    let (w0, _) = golden_min(|w| toy_adversarial_risk(w, 0.0), -1.0, 2.0);
    let mut bad = Vec::new();
    let mut deviation_checked = 0;
    for k in 0..20 {
        let eps = QuadraticToy::MAX_EPS * f64::from(k) / 19.0;
        let (w, risk) = golden_min(|w| toy_adversarial_risk(w, eps), -1.0, 2.0);
        let inputs = toy.inputs(eps);
        let (lo, hi) = (convex_lower_bound(&inputs).unwrap(), lipschitz_upper_bound(&inputs).unwrap());
        if !(lo - MEASURED_RISK_TOL <= risk && risk <= hi + MEASURED_RISK_TOL) {
            bad.push(format!("eps {eps}: {lo} <= {risk} <= {hi} fails"));
        }
        if !loss_bounds(&inputs).unwrap().deviation_warning {
            deviation_checked += 1;
            let dev = deviation_bound(&inputs).unwrap();
            if (w - w0).abs() > dev + MEASURED_ARGMIN_TOL {
                bad.push(format!("eps {eps}: |w_eps - w_0| = {} > {dev}", (w - w0).abs()));
            }
        }
    }
    report(
        11,
        "loss sandwich",
        bad.is_empty() && deviation_checked > 0,
        &format!(
            "20 eps in [0, {}], deviation checked at {deviation_checked}, measurement tol {MEASURED_RISK_TOL:e} / {MEASURED_ARGMIN_TOL:e}; failures {bad:?}",
            QuadraticToy::MAX_EPS
        ),
        start,
        Duration::from_secs(1),
    );
}

fn dyadic_set(rng: &mut ChaCha8Rng) -> IntervalSet<f64> {
    let k = rng.gen_range(0..=5);
    let pairs: Vec<(f64, f64)> = (0..k)
        .map(|_| {
            let lo = f64::from(rng.gen_range(-256..=256)) / 64.0;
            (lo, lo + f64::from(rng.gen_range(0..=128)) / 64.0)
        })
        .collect();
    IntervalSet::from_pairs(&pairs).unwrap()
}

#[test]
fn criterion_12_interval_lemmas() {
    let start = Instant::now();
    let mut rng = rng(12);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let a = dyadic_set(&mut rng);
        let e = f64::from(rng.gen_range(0..=64)) / 64.0;
        let (thick, thin) = (a.expand(e).unwrap(), a.thin(e).unwrap());
        let laws = [
            ("A in A^e", a.is_subset_of(&thick)),
            ("A^-e in A", thin.is_subset_of(&a)),
            ("A in (A^e)^-e", a.is_subset_of(&thick.thin(e).unwrap())),
            ("(A^-e)^e in A", thin.expand(e).unwrap().is_subset_of(&a)),
            ("(A^e)^e = A^2e", thick.expand(e).unwrap() == a.expand(2.0 * e).unwrap()),
            ("(A^-e)^-e = A^-2e", thin.thin(e).unwrap() == a.thin(2.0 * e).unwrap()),
        ];
        for (law, holds) in laws {
            if !holds {
                bad.push(format!("{law} fails for {a} at eps {e}"));
            }
        }
    }
    report(
        12,
        "interval lemmas",
        bad.is_empty(),
        &format!("200 dyadic sets, 6 laws, exact; failures {bad:?}"),
        start,
        Duration::from_secs(1),
    );
}
