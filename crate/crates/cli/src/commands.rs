//! Subcommand implementations. Each returns a report; `main` prints it.

use std::path::{Path, PathBuf};

use advrisk::analytic::{
    gaussian_equal_var, gaussian_general, gaussian_iso_ddim, gaussian_same_mean, triangular_pair, uniform_pair,
};
use advrisk::discrete::{wasserstein_p, wp_lower_bound, ExactOptions, ExactSolver, Witness};
use advrisk::ingest::{
    class_pair, load_delimited, load_idx_images, load_points, DelimitedOptions, LabeledDataset, SourceFormat,
};
use advrisk::loss::{loss_bounds, LossBoundInputs, QuadraticToy};
use advrisk::mixture::{mixture_risk_sweep, sigma_star, MixtureSpec};
use advrisk::oracles::{run_verify, verify_pair, CheckOutcome, VerifyConfig};
use advrisk::report::{parse_sweep, RiskReport, RiskRow};
use advrisk::{
    classifier_risk, AnalyticSolution, BinaryProblem, ClassModel, Error, IntervalSet, IsoGaussian, Measure, Metric,
    UnivariateFamily,
};
use rayon::prelude::*;

use crate::args::{DataArgs, EpsArgs, ExactArgs, Family, LossArgs, MixtureArgs, RiskofArgs, VerifyArgs, WpArgs};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

impl EpsArgs {
    /// Budgets in increasing order.
    pub fn values(&self) -> Result<Vec<f64>> {
        let spec = self
            .eps
            .as_deref()
            .or(self.eps_sweep.as_deref())
            .ok_or_else(|| CliError::input("--eps or --eps-sweep is required"))?;
        if self.eps.is_some() && spec.matches(':').count() > 0 {
            return Err(CliError::input("--eps takes values; use --eps-sweep for start:stop:steps"));
        }
        let mut v = parse_sweep(spec)?;
        if let Some(e) = v.iter().find(|e| **e < 0.0) {
            return Err(Error::NegativeEps(*e).into());
        }
        v.sort_by(f64::total_cmp);
        Ok(v)
    }
}

fn at<T>(path: &Path, r: advrisk::Result<T>) -> Result<T> {
    r.map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn delimiter(c: char) -> Result<u8> {
    u8::try_from(c).map_err(|_| CliError::input(format!("delimiter `{c}` is not a single byte")))
}

fn parse_classes(s: Option<&str>) -> Result<(i64, i64)> {
    let s = s.ok_or_else(|| CliError::input("--classes A,B is required"))?;
    let bad = || CliError::input(format!("--classes expects two integer labels `A,B`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl DataArgs {
    pub fn load(&self) -> Result<(Measure, Measure)> {
        let (ds, a, b) = if let (Some(pa), Some(pb)) = (&self.class_a, &self.class_b) {
            let d = delimiter(self.delimiter)?;
            let (xa, xb) = (at(pa, load_points(pa, d, self.header))?, at(pb, load_points(pb, d, self.header))?);
            if self.n_per_class.is_none() {
                return Ok((Measure::uniform(xa)?, Measure::uniform(xb)?));
            }
            let labels = [vec![0; xa.len()], vec![1; xb.len()]].concat();
            let rows = xa.into_iter().chain(xb).collect();
            (LabeledDataset::new(rows, labels, pa.clone(), SourceFormat::Delimited)?, 0, 1)
        } else if let Some(path) = &self.data {
            let (a, b) = parse_classes(self.classes.as_deref())?;
            let opts = DelimitedOptions {
                label_column: self.label_column,
                delimiter: delimiter(self.delimiter)?,
                has_header: self.header,
            };
            (at(path, load_delimited(path, &opts))?, a, b)
        } else if let (Some(im), Some(lb)) = (&self.idx_images, &self.idx_labels) {
            let (a, b) = parse_classes(self.classes.as_deref())?;
            (at(im, load_idx_images(im, lb))?, a, b)
        } else {
            return Err(CliError::input(
                "give --class-a/--class-b, --data with --classes, or --idx-images/--idx-labels",
            ));
        };
        let pair = class_pair(&ds, a, b, self.n_per_class, self.seed)?;
        Ok((pair.class0, pair.class1))
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Internal(e.to_string()))
}

fn describe_witness(w: Option<&Witness<f64>>, n: usize) -> String {
    match w {
        None => String::new(),
        Some(Witness::Intervals { set }) => set.to_string(),
        Some(Witness::Halfspace { halfspace }) => halfspace.to_string(),
        Some(Witness::Atoms { indices }) if indices.len() <= 16 => {
            let list: Vec<String> = indices.iter().map(usize::to_string).collect();
            format!("atoms[{}]", list.join(" "))
        }
        Some(Witness::Atoms { indices }) => format!("atoms[{} of {n}]", indices.len()),
    }
}

pub fn exact(args: &ExactArgs, jobs: usize) -> Result<RiskReport> {
    let (mu, nu) = args.data.load()?;
    let eps = args.eps.values()?;
    let solver = ExactSolver::new(&mu, &nu, args.metric)?;
    let opts = ExactOptions { strategy: args.strategy.into(), ..ExactOptions::default() };
    let certs = pool(jobs)?.install(|| eps.par_iter().map(|&e| solver.solve_with(e, &opts)).collect::<Vec<_>>());
    let mut report = RiskReport::new("exact");
    for (&e, cert) in eps.iter().zip(certs) {
        let cert = cert?;
        let mut row = RiskRow::new("exact-empirical", args.metric.name(), e);
        row.depsilon = Some(cert.cost);
        row.risk = Some(cert.risk());
        row.classifier = describe_witness(cert.witness.as_ref(), mu.len());
        row.degenerate = cert.cost == 0.0;
        report.rows.push(row);
        if args.certificates {
            report.certificates.push(serde_json::to_value(&cert).map_err(|e| CliError::Internal(e.to_string()))?);
        }
    }
    Ok(report)
}

fn solution_row(method: &str, metric: Metric, eps: f64, sol: &AnalyticSolution<f64>) -> RiskRow {
    let mut row = RiskRow::new(method, metric.name(), eps);
    row.depsilon = Some(sol.depsilon);
    row.risk = Some(sol.risk);
    row.classifier = sol.decide_one().to_string();
    row.degenerate = sol.degenerate;
    for (k, v) in &sol.boundaries {
        row.diagnostics.insert(k.clone(), *v);
    }
    row.diagnostic("clamped", sol.clamped)
}

fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::input(format!("`{t}` is not a number"))))
        .collect()
}

/// `N(0, σ0²)` vs `N(0, σ1²)` in either order.
fn same_mean(s0: f64, s1: f64, eps: f64) -> advrisk::Result<AnalyticSolution<f64>> {
    if s0 == s1 {
        return gaussian_equal_var(0.0, 0.0, s0, eps);
    }
    if s0 > s1 {
        return gaussian_same_mean(s0, s1, eps);
    }
    let mut sol = gaussian_same_mean(s1, s0, eps)?;
    sol.decides = 1 - sol.decides;
    Ok(sol)
}

/// Closed-form solver for one family instance, as a function of ε.
type ClosedForm = Box<dyn Fn(f64) -> advrisk::Result<AnalyticSolution<f64>> + Sync>;

pub fn analytic(family: &Family, jobs: usize) -> Result<(RiskReport, &crate::args::OutputArgs)> {
    let (name, common, metric, solve): (&str, _, Metric, ClosedForm) = match family {
        Family::GaussianEqualVar { mu0, mu1, sigma, common } => {
            let (a, b, s) = (*mu0, *mu1, *sigma);
            ("gaussian-equal-var", common, Metric::Euclidean, Box::new(move |e| gaussian_equal_var(a, b, s, e)))
        }
        Family::GaussianIso { mu0, mu1, sigma, metric, common } => {
            let p0 = IsoGaussian::new(parse_vector(mu0)?, *sigma)?;
            let p1 = IsoGaussian::new(parse_vector(mu1)?, *sigma)?;
            let m = *metric;
            ("gaussian-iso", common, m, Box::new(move |e| gaussian_iso_ddim(&p0, &p1, e, m)))
        }
        Family::GaussianSameMean { sigma0, sigma1, common } => {
            let (s0, s1) = (*sigma0, *sigma1);
            ("gaussian-same-mean", common, Metric::Euclidean, Box::new(move |e| same_mean(s0, s1, e)))
        }
        Family::GaussianGeneral { mu0, sigma0, mu1, sigma1, common } => {
            let (a, s0, b, s1) = (*mu0, *sigma0, *mu1, *sigma1);
            ("gaussian-general", common, Metric::Euclidean, Box::new(move |e| gaussian_general(a, s0, b, s1, e)))
        }
        Family::Uniform { a0, b0, a1, b1, common } => {
            let (i, j) = ((*a0, *b0), (*a1, *b1));
            UnivariateFamily::uniform(i.0, i.1)?;
            UnivariateFamily::uniform(j.0, j.1)?;
            ("uniform", common, Metric::Euclidean, Box::new(move |e| uniform_pair(i, j, e)))
        }
        Family::Triangular { c0, w0, c1, w1, common } => {
            let (f, g) = (UnivariateFamily::triangular(*c0, *w0)?, UnivariateFamily::triangular(*c1, *w1)?);
            ("triangular", common, Metric::Euclidean, Box::new(move |e| triangular_pair(&f, &g, e)))
        }
    };
    let eps = common.eps.values()?;
    let sols = pool(jobs)?.install(|| eps.par_iter().map(|&e| solve(e)).collect::<Vec<_>>());
    let mut report = RiskReport::new(format!("analytic {name}"));
    let method = format!("analytic-{name}");
    for (&e, sol) in eps.iter().zip(sols) {
        report.rows.push(solution_row(&method, metric, e, &sol?));
    }
    Ok((report, &common.output))
}

pub fn mixture(args: &MixtureArgs, jobs: usize) -> Result<RiskReport> {
    let (mu, nu) = args.data.load()?;
    let eps = args.eps.values()?;
    let mut sigmas = Vec::new();
    if let Some(s) = &args.sigma {
        sigmas.extend(parse_vector(s)?);
    }
    let star = match &args.sigma_star {
        Some(k) => {
            let star = sigma_star(&mu, &nu, args.metric)?;
            sigmas.extend(parse_vector(k)?.into_iter().map(|k| k * star));
            Some(star)
        }
        None => None,
    };
    if let Some(s) = sigmas.iter().find(|s| !s.is_finite() || **s < 0.0) {
        return Err(CliError::input(format!("sigma must be finite and nonnegative, got {s}")));
    }
    let results = pool(jobs)?.install(|| {
        sigmas
            .par_iter()
            .map(|&s| {
                let (s0, s1) = (MixtureSpec::new(mu.clone(), s)?, MixtureSpec::new(nu.clone(), s)?);
                mixture_risk_sweep(&s0, &s1, args.metric, &eps, args.mode)
            })
            .collect::<Vec<_>>()
    });
    let mut per_sigma = Vec::with_capacity(sigmas.len());
    for r in results {
        per_sigma.push(r?);
    }
    let jobs_list: Vec<(usize, usize)> = (0..eps.len()).flat_map(|i| (0..sigmas.len()).map(move |k| (i, k))).collect();
    let mut report = RiskReport::new("mixture");
    for (i, k) in jobs_list {
        let (e, s, r) = (eps[i], sigmas[k], &per_sigma[k][i]);
        let mut row = RiskRow::new("mixture-bound", args.metric.name(), e);
        row.sigma = Some(s);
        row.depsilon = Some(r.depsilon_ub);
        row.risk = Some(r.risk_lb);
        row.degenerate = r.depsilon_ub == 0.0;
        row = row.diagnostic("fallback", f64::from(u8::from(r.fallback)));
        row = row.diagnostic("carried", f64::from(u8::from(r.carried)));
        if let Some(star) = star {
            row = row.diagnostic("sigma_star", star);
        }
        report.rows.push(row);
    }
    Ok(report)
}

pub fn wp(args: &WpArgs) -> Result<RiskReport> {
    let (mu, nu) = args.data.load()?;
    let eps = args.eps.values()?;
    let w = wasserstein_p(&mu, &nu, args.metric, args.p)?;
    let mut report = RiskReport::new("wp");
    for &e in &eps {
        let mut row = RiskRow::new("wp-bound", args.metric.name(), e);
        row.depsilon = Some(w);
        if e > 0.0 {
            let bound = wp_lower_bound(w, e, args.p)?;
            let raw = 0.5 * (1.0 - (w / (2.0 * e)).powf(args.p));
            row.risk = Some(bound);
            row.degenerate = bound == 0.5;
            row = row.diagnostic("clamped", f64::from(u8::from(raw < 0.0)));
        }
        report.rows.push(row.diagnostic("p", args.p));
    }
    Ok(report)
}

pub fn lossbounds(args: &LossArgs) -> Result<RiskReport> {
    let eps = args.eps.values()?;
    let toy = QuadraticToy;
    if args.toy {
        if let Some(e) = eps.iter().find(|e| **e > QuadraticToy::MAX_EPS) {
            return Err(CliError::input(format!(
                "the toy closed forms hold for eps <= {}, got {e}",
                QuadraticToy::MAX_EPS
            )));
        }
    }
    let mut report = RiskReport::new("lossbounds");
    for &e in &eps {
        let inputs = if args.toy {
            toy.inputs(e)
        } else {
            LossBoundInputs {
                r0: args.r0.ok_or_else(|| CliError::input("--r0 is required"))?,
                grad_dual_norm_exp: args.grad_exp,
                lipschitz: args.lipschitz,
                hessian_min_eig: args.hessian_min_eig,
                eps: e,
            }
        };
        let b = loss_bounds(&inputs)?;
        let mut rows = Vec::new();
        for (method, value) in
            [("loss-bound-lower", b.lower), ("loss-bound-upper", b.upper), ("loss-deviation-bound", b.deviation)]
        {
            if let Some(v) = value {
                let mut row = RiskRow::new(method, "", e);
                row.risk = Some(v);
                rows.push(row.diagnostic("deviation_warning", f64::from(u8::from(b.deviation_warning))));
            }
        }
        if args.toy {
            let mut row = RiskRow::new("loss-toy-exact", "", e);
            row.risk = Some(toy.optimal_risk(e));
            rows.push(
                row.diagnostic("w_star", toy.w_star(e))
                    .diagnostic("deviation", (toy.w_star(e) - toy.w_star(0.0)).abs()),
            );
        }
        report.rows.extend(rows);
    }
    Ok(report)
}

fn class_model(spec: &str) -> Result<ClassModel<f64>> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| CliError::input(format!("class `{spec}` lacks `kind:`")))?;
    if kind == "file" {
        let rows = at(Path::new(rest), load_points(Path::new(rest), b',', false))?;
        if rows[0].len() != 1 {
            return Err(CliError::input(format!("{rest}: interval classifiers need one value per row")));
        }
        return Ok(Measure::uniform(rows)?.into());
    }
    let v = parse_vector(rest)?;
    let [a, b] = v[..] else {
        return Err(CliError::input(format!("class `{spec}` needs two parameters")));
    };
    Ok(match kind {
        "gaussian" => UnivariateFamily::gaussian(a, b)?,
        "uniform" => UnivariateFamily::uniform(a, b)?,
        "triangular" => UnivariateFamily::triangular(a, b)?,
        _ => return Err(CliError::input(format!("unknown class kind `{kind}`"))),
    }
    .into())
}

pub fn riskof(args: &RiskofArgs) -> Result<RiskReport> {
    let problem = BinaryProblem::new(class_model(&args.class0)?, class_model(&args.class1)?)?;
    let set = IntervalSet::<f64>::parse(&args.set)?;
    let mut report = RiskReport::new("riskof");
    for e in args.eps.values()? {
        let mut row = RiskRow::new("classifier-risk", Metric::Euclidean.name(), e);
        row.risk = Some(classifier_risk(&problem, &set, e)?);
        row.classifier = set.to_string();
        row.degenerate = set.is_empty() || set.is_full();
        report.rows.push(row);
    }
    Ok(report)
}

/// `NAME_a.csv` files with a matching `NAME_b.csv`, sorted by name.
fn corpus_pairs(dir: &Path) -> Result<Vec<(String, PathBuf, PathBuf)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(Error::from)? {
        let path = entry.map_err(Error::from)?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        if let Some(stem) = name.strip_suffix("_a.csv") {
            let b = dir.join(format!("{stem}_b.csv"));
            if b.exists() {
                out.push((stem.to_string(), path.clone(), b));
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> Result<Vec<CheckOutcome>> {
    if !args.scale.is_finite() || args.scale <= 0.0 {
        return Err(CliError::input(format!("--scale must be positive, got {}", args.scale)));
    }
    let base = VerifyConfig { seed: args.seed, ..VerifyConfig::default() };
    let scale = |n: usize| ((n as f64 * args.scale).ceil() as usize).max(1);
    let cfg = VerifyConfig {
        assignment_instances: scale(base.assignment_instances),
        lp_instances: scale(base.lp_instances),
        quantile_instances: scale(base.quantile_instances),
        certificate_instances: scale(base.certificate_instances),
        analytic_draws: scale(base.analytic_draws),
        mixture_instances: scale(base.mixture_instances),
        grid_draws: scale(base.grid_draws),
        ..base
    };
    let mut checks = run_verify(&cfg)?.checks;
    if let Some(dir) = &args.corpus {
        let eps = parse_sweep(&args.corpus_eps)?;
        let pairs = corpus_pairs(dir)?;
        if pairs.is_empty() {
            return Err(CliError::input(format!("{}: no NAME_a.csv / NAME_b.csv pairs", dir.display())));
        }
        for (name, a, b) in pairs {
            let (mu, nu) = (
                Measure::uniform(at(&a, load_points(&a, b',', false))?)?,
                Measure::uniform(at(&b, load_points(&b, b',', false))?)?,
            );
            for metric in [Metric::Euclidean, Metric::Chebyshev] {
                for mut c in verify_pair(&mu, &nu, metric, &eps)? {
                    c.name = format!("{name} ({metric}): {}", c.name);
                    checks.push(c);
                }
            }
        }
    }
    Ok(checks)
}
