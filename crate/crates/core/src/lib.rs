//! Exact simulation and polynomial-method tooling for the quantum black-box
//! query model.
//!
//! * [`simcore`] simulates query networks (dense and sparse state vectors).
//! * [`algorithms`] builds Grover search, the comparison and clean-up gadgets,
//!   and the ordered-search reduction.
//! * [`polymethod`] extracts acceptance polynomials and solves the
//!   minimum-error linear program.
//! * [`bounds`] evaluates the Chebyshev machinery and the explicit error
//!   lower bounds.
//! * [`lab`] is the experiment harness behind the `querylab` binary.

pub mod algorithms;
pub mod bounds;
pub mod error;
pub mod lab;
pub mod polymethod;
pub mod simcore;
pub mod tol;

pub use error::{LabError, Result};
