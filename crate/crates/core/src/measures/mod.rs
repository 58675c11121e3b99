//! Measures, metrics and the scalar special functions shared by all solvers.

pub mod empirical;
pub mod family;
pub mod gaussian;
pub mod metric;
pub mod problem;
pub mod special;

pub use empirical::EmpiricalMeasure;
pub use family::{Distribution1d, UnivariateFamily};
pub use gaussian::IsoGaussian;
pub use metric::{distance, Metric};
pub use problem::{BinaryProblem, ClassModel};
pub use special::{phi_cdf, phi_pdf, phi_quantile, q_tail};
