//! Exact-rational truncated power series: ring operations, exp/log,
//! reversion, and eta/theta generators.
//!
//! Nothing in this module rounds; identity checks built on it report exact
//! zero residuals.

mod eta;
mod series;

pub use eta::{eta_product, theta_series, ThetaKind};
pub use series::{series_arith, RationalSeries, SeriesOp};

/// Exact rational scalar used for every series coefficient.
pub use rug::Rational;
