//! Exact D_ε between finite measures.
//!
//! With the 0-1 cost `1{d > 2ε}`, optimal transport reduces to routing as
//! much mass as possible along admissible pairs (`d <= 2ε`); the cost is the
//! mass left over. Three interchangeable solvers compute that maximum:
//! a line sweep in one dimension, Hopcroft–Karp for uniform equal-count
//! inputs, and Dinic max-flow otherwise. All of them test admissibility
//! through [`Metric::key`], so they agree on ties.

use serde::{Deserialize, Serialize};

use crate::discrete::flow::BipartiteFlow;
use crate::discrete::line::line_transport;
use crate::discrete::matching::{hopcroft_karp, konig_reachable};
use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::metric::Metric;
use crate::region::Halfspace;
use crate::scalar::{pmin, Scalar};

/// Pairwise keys are cached when `n * m` stays below this many entries.
pub const KEY_CACHE_CAP: usize = 1 << 22;

const MAX_SCALE: i64 = 1 << 40;

/// Which maximum-transport solver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Line sweep in one dimension, matching for uniform equal counts,
    /// max-flow otherwise.
    #[default]
    Auto,
    Flow,
    Matching,
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub strategy: Strategy,
    /// Skip pairs whose first coordinates already differ by more than 2ε.
    /// Never changes the result.
    pub prefilter: bool,
    /// Build a dual witness set.
    pub witness: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self { strategy: Strategy::Auto, prefilter: true, witness: true }
    }
}

/// Dual witness for the transport cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness<T> {
    /// Set `B` on the line with `μ(B^{-ε}) - ν(B^ε) = D_ε`.
    Intervals { set: IntervalSet<T> },
    /// Halfspace `H` with `μ(H^{-ε}) - ν(H^ε)` as the certified gap.
    Halfspace { halfspace: Halfspace<T> },
    /// Source atoms `S` with `μ(S) - ν(S^{2ε}) = D_ε`.
    Atoms { indices: Vec<usize> },
}

/// One entry of a coupling: `mass` moved from source `from` to target `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transfer<T> {
    pub from: usize,
    pub to: usize,
    pub mass: T,
}

/// D_ε together with an optimal coupling and a matching dual witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportCertificate<T> {
    /// Mass that cannot be moved within `2ε`; a fraction of unit mass for
    /// probability inputs.
    pub cost: T,
    /// Full coupling of the two measures: admissible pairs first, then the
    /// leftover mass paired in index order.
    pub coupling: Vec<Transfer<T>>,
    pub witness: Option<Witness<T>>,
    pub eps: T,
    pub metric: Metric,
    pub solver: Strategy,
}

/// Result of [`TransportCertificate::check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateCheck<T> {
    /// Largest marginal violation.
    pub marginal_error: T,
    /// Coupling mass on pairs farther apart than `2ε`.
    pub moved_far: T,
    /// Dual value of the witness, if any.
    pub dual: Option<T>,
}

/// Admissibility predicate used by every exact solver. In one dimension both
/// metrics are `|x - y|`; the Chebyshev key avoids squaring there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Admissible<T> {
    metric: Metric,
    radius_key: T,
}

impl<T: Scalar> Admissible<T> {
    pub(crate) fn new(metric: Metric, dim: usize, eps: T) -> Self {
        let metric = if dim == 1 { Metric::Chebyshev } else { metric };
        Self { metric, radius_key: metric.radius_key(eps + eps) }
    }

    pub(crate) fn key(&self, x: &[T], y: &[T]) -> T {
        self.metric.key(x, y)
    }

    pub(crate) fn test_key(&self, key: T) -> bool {
        key <= self.radius_key
    }

    pub(crate) fn test(&self, x: &[T], y: &[T]) -> bool {
        self.test_key(self.key(x, y))
    }

    /// Lower bound on the key from the first coordinate alone.
    fn first_coord_key(&self, x0: T, y0: T) -> T {
        self.metric.key(&[x0], &[y0])
    }
}

enum Capacities {
    /// Weights are `supply[i] / denom`, `demand[j] / denom` exactly.
    Scaled {
        supply: Vec<i64>,
        demand: Vec<i64>,
        denom: i64,
    },
    Native,
}

fn scale_weights<T: Scalar>(a: &[T], b: &[T]) -> Option<Capacities> {
    let mut ratios = Vec::with_capacity(a.len() + b.len());
    let mut denom: i64 = 1;
    for &w in a.iter().chain(b) {
        let (p, q) = w.to_ratio()?;
        let g = gcd(denom, q);
        denom = denom.checked_mul(q / g)?;
        if denom > MAX_SCALE {
            return None;
        }
        ratios.push((p, q));
    }
    let scaled: Vec<i64> = ratios.iter().map(|&(p, q)| p * (denom / q)).collect();
    let (supply, demand) = scaled.split_at(a.len());
    let sa: i64 = supply.iter().sum();
    let sb: i64 = demand.iter().sum();
    (sa == sb).then(|| Capacities::Scaled { supply: supply.to_vec(), demand: demand.to_vec(), denom })
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Flow-level outcome in capacity units `C`, indexed by original atoms.
struct RawFlow<C> {
    value: C,
    flows: Vec<(usize, usize, C)>,
    reach_src: Vec<bool>,
}

/// Prepared exact solver for one pair of measures; reusable across budgets
/// and safe to share between threads.
pub struct ExactSolver<'a, T: Scalar> {
    mu: &'a EmpiricalMeasure<T>,
    nu: &'a EmpiricalMeasure<T>,
    metric: Metric,
    caps: Capacities,
    /// Sorted orders for the line sweep (one dimension only).
    order_x: Vec<usize>,
    order_y: Vec<usize>,
    /// Targets sorted by first coordinate (prefilter).
    order_y0: Vec<usize>,
    keys: Option<Vec<T>>,
}

impl<'a, T: Scalar> ExactSolver<'a, T> {
    pub fn new(mu: &'a EmpiricalMeasure<T>, nu: &'a EmpiricalMeasure<T>, metric: Metric) -> Result<Self> {
        if mu.dim() != nu.dim() {
            return Err(Error::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
        }
        if mu.is_empty() || nu.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        let tol = T::lit(1e-9);
        for m in [mu, nu] {
            if (m.total_mass() - T::one()).abs() > tol {
                return Err(Error::MassMismatch(m.total_mass().to_f64_lossy(), 1.0));
            }
        }
        if (mu.total_mass() - nu.total_mass()).abs() > tol {
            return Err(Error::MassMismatch(mu.total_mass().to_f64_lossy(), nu.total_mass().to_f64_lossy()));
        }
        let caps = scale_weights(mu.weights(), nu.weights()).unwrap_or(Capacities::Native);
        let dim = mu.dim();
        let by_first = |m: &EmpiricalMeasure<T>| {
            let mut idx: Vec<usize> = (0..m.len()).collect();
            idx.sort_by(|&a, &b| {
                m.point(a)[0].partial_cmp(&m.point(b)[0]).expect("finite coordinates").then(a.cmp(&b))
            });
            idx
        };
        let order_y0 = by_first(nu);
        let (order_x, order_y) = if dim == 1 { (by_first(mu), order_y0.clone()) } else { (Vec::new(), Vec::new()) };
        let keys = (dim > 1 && mu.len().saturating_mul(nu.len()) <= KEY_CACHE_CAP).then(|| {
            let adm = Admissible::new(metric, dim, T::zero());
            let mut k = Vec::with_capacity(mu.len() * nu.len());
            for x in mu.points() {
                for y in nu.points() {
                    k.push(adm.key(x, y));
                }
            }
            k
        });
        Ok(Self { mu, nu, metric, caps, order_x, order_y, order_y0, keys })
    }

    pub fn mu(&self) -> &EmpiricalMeasure<T> {
        self.mu
    }

    pub fn nu(&self) -> &EmpiricalMeasure<T> {
        self.nu
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    fn uniform_equal_counts(&self) -> bool {
        self.mu.len() == self.nu.len() && self.mu.is_uniform() && self.nu.is_uniform()
    }

    fn resolve(&self, strategy: Strategy) -> Result<Strategy> {
        match strategy {
            Strategy::Auto => Ok(if self.mu.dim() == 1 {
                Strategy::Line
            } else if self.uniform_equal_counts() {
                Strategy::Matching
            } else {
                Strategy::Flow
            }),
            Strategy::Line if self.mu.dim() != 1 => {
                Err(Error::Unsupported("line sweep needs one-dimensional measures".into()))
            }
            Strategy::Matching if !self.uniform_equal_counts() => {
                Err(Error::Unsupported("matching needs uniform weights and equal counts".into()))
            }
            s => Ok(s),
        }
    }

    /// Admissible targets of every source, each list in increasing index order.
    fn adjacency(&self, adm: &Admissible<T>, prefilter: bool) -> Vec<Vec<usize>> {
        let m = self.nu.len();
        let y0: Vec<T> = self.order_y0.iter().map(|&j| self.nu.point(j)[0]).collect();
        let mut adj = Vec::with_capacity(self.mu.len());
        for (i, x) in self.mu.points().enumerate() {
            let test = |j: usize| match &self.keys {
                Some(k) => adm.test_key(k[i * m + j]),
                None => adm.test(x, self.nu.point(j)),
            };
            let mut row: Vec<usize> = if prefilter {
                let (lo, hi) = first_coord_window(adm, x[0], &y0);
                let mut cand: Vec<usize> = self.order_y0[lo..hi].to_vec();
                cand.sort_unstable();
                cand.into_iter().filter(|&j| test(j)).collect()
            } else {
                (0..m).filter(|&j| test(j)).collect()
            };
            row.shrink_to_fit();
            adj.push(row);
        }
        adj
    }

    /// `[lo, hi)` blocks of sorted target positions for each sorted source.
    fn line_ranges(&self, adm: &Admissible<T>) -> Vec<(usize, usize)> {
        let ys: Vec<T> = self.order_y.iter().map(|&j| self.nu.point(j)[0]).collect();
        self.order_x.iter().map(|&i| first_coord_window(adm, self.mu.point(i)[0], &ys)).collect()
    }

    fn run<C: Scalar>(
        &self,
        strategy: Strategy,
        adm: &Admissible<T>,
        prefilter: bool,
        supply: &[C],
        demand: &[C],
    ) -> RawFlow<C> {
        match strategy {
            Strategy::Line => {
                let sx: Vec<C> = self.order_x.iter().map(|&i| supply[i]).collect();
                let sy: Vec<C> = self.order_y.iter().map(|&j| demand[j]).collect();
                let ranges = self.line_ranges(adm);
                let sol = line_transport(&sx, &sy, &ranges);
                let mut reach_src = vec![false; supply.len()];
                for (p, &r) in sol.reach_src.iter().enumerate() {
                    reach_src[self.order_x[p]] = r;
                }
                let mut flows: Vec<(usize, usize, C)> =
                    sol.flows.into_iter().map(|(p, q, f)| (self.order_x[p], self.order_y[q], f)).collect();
                flows.sort_by_key(|&(p, q, _)| (p, q));
                RawFlow { value: sol.value, flows, reach_src }
            }
            Strategy::Matching => {
                let adj = self.adjacency(adm, prefilter);
                let m = hopcroft_karp(self.nu.len(), &adj);
                let (reach_src, _) = konig_reachable(self.nu.len(), &adj, &m);
                let flows =
                    m.match_left.iter().enumerate().filter_map(|(i, mj)| mj.map(|j| (i, j, supply[i]))).collect();
                let value = (0..m.size).fold(C::zero(), |acc, _| acc + supply[0]);
                RawFlow { value, flows, reach_src }
            }
            _ => {
                let adj = self.adjacency(adm, prefilter);
                let edges = adj.iter().enumerate().flat_map(|(i, row)| row.iter().map(move |&j| (i, j)));
                let sol = BipartiteFlow::new(supply, demand, edges).solve();
                RawFlow { value: sol.value, flows: sol.flows, reach_src: sol.reachable_sources }
            }
        }
    }

    pub fn solve(&self, eps: T) -> Result<TransportCertificate<T>> {
        self.solve_with(eps, &ExactOptions::default())
    }

    pub fn solve_with(&self, eps: T, opts: &ExactOptions) -> Result<TransportCertificate<T>> {
        if !(eps >= T::zero()) || !eps.is_finite_value() {
            return Err(Error::NegativeEps(eps.to_f64_lossy()));
        }
        let strategy = self.resolve(opts.strategy)?;
        let adm = Admissible::new(self.metric, self.mu.dim(), eps);
        let (cost, coupling, reach_src) = match &self.caps {
            Capacities::Scaled { supply, demand, denom } => {
                let raw = self.run(strategy, &adm, opts.prefilter, supply, demand);
                let d = T::from_i64(*denom).expect("scale fits the scalar type");
                let to_t = |c: i64| T::from_i64(c).expect("capacity fits the scalar type") / d;
                let total: i64 = supply.iter().sum();
                let coupling = complete(supply, demand, &raw.flows)
                    .into_iter()
                    .map(|(i, j, c)| Transfer { from: i, to: j, mass: to_t(c) })
                    .collect();
                (to_t(total - raw.value), coupling, raw.reach_src)
            }
            Capacities::Native => {
                let (supply, demand) = (self.mu.weights(), self.nu.weights());
                let raw = self.run(strategy, &adm, opts.prefilter, supply, demand);
                let mut cost = self.mu.total_mass() - raw.value;
                if cost <= T::feasibility_tol() * T::from_count(supply.len() + demand.len()) {
                    cost = T::zero();
                }
                let coupling = complete(supply, demand, &raw.flows)
                    .into_iter()
                    .map(|(i, j, c)| Transfer { from: i, to: j, mass: c })
                    .collect();
                (cost, coupling, raw.reach_src)
            }
        };
        let witness = opts.witness.then(|| self.witness(&adm, eps, &reach_src));
        Ok(TransportCertificate { cost, coupling, witness, eps, metric: self.metric, solver: strategy })
    }

    /// Solves every budget in order.
    pub fn sweep(&self, eps: &[T], opts: &ExactOptions) -> Result<Vec<TransportCertificate<T>>> {
        eps.iter().map(|&e| self.solve_with(e, opts)).collect()
    }

    fn witness(&self, adm: &Admissible<T>, eps: T, reach_src: &[bool]) -> Witness<T> {
        let s: Vec<usize> = (0..reach_src.len()).filter(|&i| reach_src[i]).collect();
        if self.mu.dim() != 1 {
            return Witness::Atoms { indices: s };
        }
        // Margin: half the smallest excess distance from the witness atoms to
        // any inadmissible target, so that B^ε picks up exactly N(S).
        let r = eps + eps;
        let mut margin: Option<T> = None;
        for &i in &s {
            let x = self.mu.point(i)[0];
            for y in self.nu.points() {
                if !adm.test(&[x], y) {
                    let excess = (x - y[0]).abs() - r;
                    margin = Some(match margin {
                        None => excess,
                        Some(m) => pmin(m, excess),
                    });
                }
            }
        }
        let margin = margin.map(|m| m / (T::one() + T::one())).unwrap_or_else(T::one);
        let radius = eps + margin;
        let pairs: Vec<(T, T)> = s
            .iter()
            .map(|&i| {
                let x = self.mu.point(i)[0];
                (x - radius, x + radius)
            })
            .collect();
        Witness::Intervals { set: IntervalSet::from_pairs(&pairs).expect("radius is nonnegative") }
    }
}

/// `[lo, hi)` positions of sorted values `ys` whose first-coordinate key to
/// `x0` is admissible. The block is contiguous because the key is monotone
/// in `|x0 - y0|` under rounding.
fn first_coord_window<T: Scalar>(adm: &Admissible<T>, x0: T, ys: &[T]) -> (usize, usize) {
    let lo = ys.partition_point(|&y| y < x0 && !adm.test_key(adm.first_coord_key(x0, y)));
    let hi = ys.partition_point(|&y| y <= x0 || adm.test_key(adm.first_coord_key(x0, y)));
    (lo, hi.max(lo))
}

/// Adds the leftover mass, paired northwest-corner style in index order,
/// to the admissible flows.
fn complete<C: Scalar>(supply: &[C], demand: &[C], flows: &[(usize, usize, C)]) -> Vec<(usize, usize, C)> {
    let tol = C::feasibility_tol();
    let mut rem_s = supply.to_vec();
    let mut rem_d = demand.to_vec();
    for &(i, j, f) in flows {
        rem_s[i] = rem_s[i] - f;
        rem_d[j] = rem_d[j] - f;
    }
    let mut out = flows.to_vec();
    let (mut i, mut j) = (0, 0);
    while i < rem_s.len() && j < rem_d.len() {
        if rem_s[i] <= tol {
            i += 1;
            continue;
        }
        if rem_d[j] <= tol {
            j += 1;
            continue;
        }
        let f = pmin(rem_s[i], rem_d[j]);
        out.push((i, j, f));
        rem_s[i] = rem_s[i] - f;
        rem_d[j] = rem_d[j] - f;
    }
    out
}

/// Exact D_ε certificate with default options.
pub fn depsilon_exact<T: Scalar>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    metric: Metric,
    eps: T,
) -> Result<TransportCertificate<T>> {
    ExactSolver::new(mu, nu, metric)?.solve(eps)
}

pub fn depsilon_exact_with<T: Scalar>(
    mu: &EmpiricalMeasure<T>,
    nu: &EmpiricalMeasure<T>,
    metric: Metric,
    eps: T,
    opts: &ExactOptions,
) -> Result<TransportCertificate<T>> {
    ExactSolver::new(mu, nu, metric)?.solve_with(eps, opts)
}

impl<T: Scalar> TransportCertificate<T> {
    /// Optimal adversarial risk `(1 - cost) / 2`.
    pub fn risk(&self) -> T {
        (T::one() - self.cost) / (T::one() + T::one())
    }

    /// Recomputes marginals, the mass moved beyond `2ε`, and the witness
    /// value against the measures the certificate was computed for.
    pub fn check(&self, mu: &EmpiricalMeasure<T>, nu: &EmpiricalMeasure<T>) -> Result<CertificateCheck<T>> {
        let mut out_mass = vec![T::zero(); mu.len()];
        let mut in_mass = vec![T::zero(); nu.len()];
        let adm = Admissible::new(self.metric, mu.dim(), self.eps);
        let mut moved_far = T::zero();
        for t in &self.coupling {
            if t.from >= mu.len() || t.to >= nu.len() || t.mass < T::zero() {
                return Err(Error::InvalidParameter(format!("bad coupling entry ({}, {})", t.from, t.to)));
            }
            out_mass[t.from] = out_mass[t.from] + t.mass;
            in_mass[t.to] = in_mass[t.to] + t.mass;
            if !adm.test(mu.point(t.from), nu.point(t.to)) {
                moved_far = moved_far + t.mass;
            }
        }
        let mut marginal_error = T::zero();
        for (i, &m) in out_mass.iter().enumerate() {
            marginal_error = crate::scalar::pmax(marginal_error, (m - mu.weight(i)).abs());
        }
        for (j, &m) in in_mass.iter().enumerate() {
            marginal_error = crate::scalar::pmax(marginal_error, (m - nu.weight(j)).abs());
        }
        let dual = match &self.witness {
            Some(w) => Some(crate::discrete::duality::witness_gap(mu, nu, self.metric, self.eps, w)?),
            None => None,
        };
        Ok(CertificateCheck { marginal_error, moved_far, dual })
    }
}
