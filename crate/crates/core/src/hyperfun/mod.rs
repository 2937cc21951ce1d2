//! Multiprecision special functions: 2F1, theta constants, Dedekind eta,
//! exact harmonic sums, and tanh-sinh quadrature.
//!
//! Reals are MPFR floats ([`PrecFloat`]); complex values are
//! [`PrecComplex`]. The working precision of every evaluation is the
//! precision of its arguments.

mod complex;
mod harmonic;
mod hyp2f1;
mod precision;
mod quad;
mod theta;

pub use complex::PrecComplex;
pub use harmonic::{harmonic_sums, harmonic_table};
pub use hyp2f1::{hyp2f1, hyp2f1_coefficients, hyp2f1_series, DIRECT_SERIES_RADIUS};
pub use precision::{
    bits_for_digits, log10_abs, parse_float, pi, pow10, to_decimal, PrecFloat, Precision,
};
pub use quad::{tanh_sinh, QuadResult};
pub use theta::{eta_value, euler_product, nome, nome_bold, theta_const, theta_const_tau};
