//! Optimal adversarial risk for balanced binary classification.
//!
//! Under an `ε`-bounded adversary the optimal 0-1 risk equals
//! `½ (1 - D_ε(p0, p1))`, where `D_ε` is optimal transport with the cost
//! `1{d(x, x') > 2ε}`. This crate computes `D_ε` exactly for finite
//! measures ([`discrete`]), in closed form for parametric families
//! ([`analytic`]), as a lower bound for Gaussian mixtures ([`mixture`]),
//! and bounds continuous-loss risks ([`loss`]). [`oracles`] holds the
//! brute-force references every solver is checked against.
//!
//! Numeric code is generic over [`scalar::Scalar`] (exact types such as
//! rationals) or [`scalar::Real`] (floats); the aliases below fix `f64`.

// `!(x >= y)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod discrete;
pub mod error;
pub mod ingest;
pub mod interval;
pub mod loss;
pub mod measures;
pub mod mixture;
pub mod oracles;
pub mod region;
pub mod report;
pub mod scalar;

pub use analytic::{solve_family_pair, solve_problem, AnalyticSolution};
pub use discrete::{
    depsilon_exact, depsilon_exact_with, risk_from_depsilon, strassen_gap, wasserstein_p, wp_lower_bound, ExactOptions,
    ExactSolver, Strategy, TransportCertificate, Witness,
};
pub use error::{Error, Result};
pub use interval::{classifier_risk, Interval, IntervalSet};
pub use measures::{BinaryProblem, ClassModel, EmpiricalMeasure, IsoGaussian, Metric, UnivariateFamily};
pub use mixture::{mixture_risk_lb, mixture_risk_sweep, MatchingMode, MixtureSpec};
pub use region::{region_risk, Halfspace, Region, SetMass};
pub use scalar::{Real, Scalar};

/// Finite measure with `f64` atoms and weights.
pub type Measure = EmpiricalMeasure<f64>;
/// Exact transport certificate over `f64`.
pub type Certificate = TransportCertificate<f64>;
/// Exact transport certificate over 64-bit rationals.
pub type RationalCertificate = TransportCertificate<num_rational::Rational64>;
/// Closed-form solution over `f64`.
pub type Solution = AnalyticSolution<f64>;
/// Finite union of closed intervals over `f64`.
pub type Intervals = IntervalSet<f64>;
