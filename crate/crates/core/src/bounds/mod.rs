//! Chebyshev polynomials, the Coppersmith–Rivlin envelope and the explicit
//! error lower bounds for search with `t` promised solutions and for
//! one-sided amplification.

mod chebyshev;
mod derivation;
mod extremal;

pub use chebyshev::{
    chebyshev, chebyshev_closed, chebyshev_growth_bound, chebyshev_recurrence, ln_chebyshev_above_one,
    ln_chebyshev_growth_bound, relative_gap,
};
pub use derivation::{
    amplification_error_bound, coppersmith_rivlin_envelope, envelope_factor, error_lower_bound,
    ln_amplification_error_bound, ln_search_error_bound, log2_error_at_power, queries_for_error,
    queries_for_search_error, queries_per_halving_limit, search_error_bound, search_exponent,
    simplification_gap, single_solution_exponent, BoundDerivation, CRConstants,
};
pub use extremal::{extremal_check, ExtremalCheck, EXTREMAL_SLACK};
