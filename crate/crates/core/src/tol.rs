//! Shared numerical tolerances.

/// State-level comparisons (norms, amplitudes, distances).
pub const STATE: f64 = 1e-9;
/// Scalar-level comparisons (probabilities, closed forms).
pub const SCALAR: f64 = 1e-12;
/// Agreement between a polynomial's value table and its coefficient form.
pub const POLY_TABLE: f64 = 1e-8;
/// Constraint satisfaction of LP witnesses.
pub const LP_WITNESS: f64 = 1e-7;
/// Coefficient threshold for multilinear degree.
pub const MULTILINEAR_DEGREE: f64 = 1e-9;
/// Coefficient threshold for the effective degree of a univariate polynomial.
pub const EFFECTIVE_DEGREE: f64 = 1e-7;
