//! Period objects of the Legendre and Dwork families, the quadratic map
//! between them, the modular lambda function, and the identity registry.
//!
//! Nome conventions follow [`crate::hyperfun`]: Legendre and theta
//! expansions use `q = exp(pi i tau)`, while `eta` and the BPS function use
//! the bold nome `q^2`.

mod dwork;
mod identities;
mod lambda;
mod legendre;
mod quadratic;
mod triple;

pub use dwork::{dwork_coefficient, dwork_log_solutions, dwork_periods, w0_series, DworkPeriods, DWORK_PSI4_MIN};
pub use identities::{
    check_identity, check_identity_at, default_points, delta_theta_residual, w_pi_residual, IDENTITIES,
};
pub use lambda::{lambda_q_series, q_of_lambda_series};
pub use legendre::{h_series, legendre_frame, legendre_periods, varpi0_series, LegendrePeriods};
pub use quadratic::{qt1_sides, qt2_sides, qt3_sides, quad_map, t_of_lambda_series, QuadMap};
pub use triple::{bps_series, pi0_series, pi_triple, PiTriple};
