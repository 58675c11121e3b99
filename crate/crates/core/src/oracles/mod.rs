//! Brute-force references kept small enough to be exact, plus the
//! cross-check suite built on them.

pub mod assignment;
pub mod grid;
pub mod quadrature;
pub mod transport_lp;
pub mod verify;

pub use assignment::exhaustive_min_assignment;
pub use grid::{discretize, discretize_on, discretize_pair, grid_depsilon, uncovered_mass, GridMeasure};
pub use quadrature::integrate;
pub use transport_lp::small_transport_lp;
pub use verify::{run_verify, verify_pair, CheckOutcome, VerifyConfig, VerifyReport};
