//! Finite-field point counts and zeta factors for the Legendre fibers and
//! the Fermat quartic.

mod count;
mod zeta;

pub use count::{
    ap_legendre, ap_minimal_model, bp_eta, chi16, count_legendre, eta46_coefficients,
    fermat_quartic_count, is_prime, odd_primes_up_to, quadratic_character_table, CountResult,
    Variety, FERMAT_BOUND,
};
pub use zeta::{
    elliptic_root_moduli, reciprocal_root_moduli, zeta_record, zeta_table, zeta_tsv, Quadratic,
    ZetaRecord, ZetaTable,
};
