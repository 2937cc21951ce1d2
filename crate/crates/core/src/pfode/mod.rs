//! Fuchsian differential operators: exact annihilation checks on series,
//! Frobenius bases at maximally unipotent points, symmetric squares, and
//! multiprecision analytic continuation along polygonal paths.

mod continuation;
mod frobenius;
mod logseries;
mod operator;
mod poly;

pub use continuation::{continue_solution, error_digits, local_taylor, ContinuationPath, SolutionFrame};
pub use frobenius::frobenius_basis;
pub use logseries::{eval_series, LogSeries};
pub use operator::FuchsianOperator;
pub use poly::Poly;

use crate::error::{OdeError, PeriodError};
use crate::hyperfun::PrecComplex;
use crate::periods::legendre_frame;

/// `tau = varpi_1 / varpi_0` at the end of `path`, starting from the
/// Legendre periods at the path's first waypoint (which must lie in the
/// series disk) and continuing with the Legendre operator.
pub fn tau_at(lambda_target: &PrecComplex, path: &ContinuationPath) -> Result<PrecComplex, PeriodError> {
    let gap = (path.end() - lambda_target).abs().to_f64();
    if gap > 1e-20 {
        return Err(OdeError::InvalidPath("path does not end at the target".into()).into());
    }
    let frame = legendre_frame(path.start())?;
    let end = if path.waypoints.len() < 2 {
        frame
    } else {
        continue_solution(&FuchsianOperator::legendre(), path, &frame)?
    };
    Ok(end.value(1) / end.value(0))
}
