//! Critical L-values of `eta(4z)^6`, Deligne periods of the Fermat quartic
//! motive and the rationality of their ratios.

mod lvalue;
mod motive;
mod ratios;

pub use lvalue::{eta46_on_axis, fricke_residual, lvalue, lvalue_with, LMethod, LValueResult, MAX_DIGITS};
pub use motive::{
    deligne_periods, lambda_two_nome, theta3_fourth_at_lambda_two, varpi0_two_squared, DelignePeriodSet,
    LAMBDA_TWO_PATH,
};
pub use ratios::{rationalize, verify_ratios, Check, DeligneReport, DENOMINATOR_BOUND, FRICKE_POINTS};
