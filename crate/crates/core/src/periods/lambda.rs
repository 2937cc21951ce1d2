//! The modular lambda function as an exact q-series.

use rug::Rational;

use super::legendre::{h_series, varpi0_series};
use crate::error::SeriesError;
use crate::qseries::RationalSeries;

/// `q(lambda) = (lambda/16) exp(h/varpi_0)` to `O(lambda^(order+1))`,
/// where `q = exp(pi i tau)`.
pub fn q_of_lambda_series(order: usize) -> Result<RationalSeries, SeriesError> {
    let h = h_series(order);
    let v0 = varpi0_series(order + 1);
    let e = h.div(&v0)?.truncate(order).exp()?;
    Ok(e.scale(&Rational::from((1, 16))).shift(&Rational::from(1)))
}

/// `lambda(q) = 16q - 128q^2 + 704q^3 - ...` to `O(q^(order+1))`, obtained by
/// reverting [`q_of_lambda_series`]. The result is normalized (offset 1).
pub fn lambda_q_series(order: usize) -> Result<RationalSeries, SeriesError> {
    q_of_lambda_series(order)?.revert()
}
