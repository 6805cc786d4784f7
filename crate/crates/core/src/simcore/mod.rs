//! Exact state-vector simulation of query networks.
//!
//! Qubit `q` is bit `q` of the basis index. The output bit of every built-in
//! network is qubit 0.

mod gate;
mod network;
mod oracle;
mod sparse;
mod state;

pub use gate::{unitarity_defect, Gate, Predicate, MAX_MATRIX_QUBITS};
pub use network::{
    acceptance_probability, apply_oracle, run_network, run_network_sparse, Layer, NetworkBuilder,
    OracleLayout, QueryNetwork, Register,
};
pub use oracle::BitOracle;
pub use sparse::{SparseState, MAX_SPARSE_QUBITS};
pub use state::{euclidean_distance, MeasurementOutcome, StateVector, MAX_DENSE_QUBITS};

/// Random single-qubit unitary from three Euler angles.
pub fn euler_unitary(alpha: f64, beta: f64, gamma: f64) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    vec![
        e(-(alpha + gamma) / 2.0) * c,
        -e(-(alpha - gamma) / 2.0) * s,
        e((alpha - gamma) / 2.0) * s,
        e((alpha + gamma) / 2.0) * c,
    ]
}
