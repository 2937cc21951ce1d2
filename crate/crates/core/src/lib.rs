//! Periods of the Dwork/Fermat quartic pencil and the Legendre family,
//! modular q-expansions, finite-field zeta factors, and critical L-values
//! of the weight-3 newform `eta(4z)^6`.
//!
//! Modules:
//! - [`qseries`]: exact rational power series
//! - [`hyperfun`]: multiprecision special functions
//! - [`pfode`]: Fuchsian operators and analytic continuation
//! - [`periods`]: period objects and the identity registry
//! - [`arith`]: point counts and zeta factors
//! - [`deligne`]: L-values, Deligne periods, rational ratios
//! - [`report`]: serializable verification reports

pub mod arith;
pub mod deligne;
pub mod error;
pub mod hyperfun;
pub mod periods;
pub mod pfode;
pub mod qseries;
pub mod report;

pub use error::{ArithError, DeligneError, NumericError, OdeError, PeriodError, SeriesError};
