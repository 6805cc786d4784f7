//! Acceptance polynomials of query networks and the minimum-error LP.

pub mod exact;
mod lp;
mod multilinear;
pub mod simplex;
mod univariate;

pub use lp::{min_error_lp, min_error_lp_with, violation, LpCertificate, LpResiduals, ZeroMode, LP_MAX_N};
pub use multilinear::{extract_multilinear, symmetrize, MultilinearPoly, MAX_EXTRACT_VARS};
pub use univariate::{chebyshev_derivative, clenshaw, effective_degree, UnivariatePoly, CONTINUUM_GRID};
