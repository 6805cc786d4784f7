use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::sparse::SparseState;
use super::state::StateVector;
use crate::error::{structural, Result};
use crate::tol;

/// Largest dense matrix gate, in qubits.
pub const MAX_MATRIX_QUBITS: usize = 14;

/// Named classical predicate on basis indices.
#[derive(Clone)]
pub struct Predicate {
    name: String,
    f: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl Predicate {
    pub fn new(name: impl Into<String>, f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        Predicate {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, basis: u64) -> bool {
        (self.f)(basis)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate({})", self.name)
    }
}

/// Fixed (oracle-free) gates.
#[derive(Clone, Debug)]
pub enum Gate {
    H(usize),
    X(usize),
    /// Flips `target` when every control is 1; one control is a CNOT.
    Mcx { controls: Vec<usize>, target: usize },
    /// Inversion about the mean, `2|s⟩⟨s| − I`, on the listed qubits.
    Diffusion(Vec<usize>),
    /// Dense matrix, row-major; `qubits[0]` is the least significant local bit.
    Matrix { qubits: Vec<usize>, matrix: Vec<Complex64> },
    /// Flips `target` when the predicate holds on the index with `target` cleared.
    XorIf { target: usize, predicate: Predicate },
    /// Multiplies by −1 where the predicate holds.
    PhaseIf(Predicate),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Mcx {
            controls: vec![control],
            target,
        }
    }

    /// Dense gate; rejects non-unitary matrices (`‖U†U − I‖_max > 1e−9`).
    pub fn matrix(qubits: Vec<usize>, matrix: Vec<Complex64>) -> Result<Gate> {
        let k = qubits.len();
        if k == 0 || k > MAX_MATRIX_QUBITS {
            return Err(structural(format!("matrix gate on {k} qubits")));
        }
        let dim = 1usize << k;
        if matrix.len() != dim * dim {
            return Err(structural(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                dim * dim
            )));
        }
        let dev = unitarity_defect(&matrix, dim);
        if dev > tol::STATE {
            return Err(structural(format!("matrix is not unitary (defect {dev:e})")));
        }
        Ok(Gate::Matrix { qubits, matrix })
    }

    /// Qubits the gate reads or writes explicitly (predicates may read more).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Mcx { controls, target } => {
                let mut v = controls.clone();
                v.push(*target);
                v
            }
            Gate::Diffusion(qs) | Gate::Matrix { qubits: qs, .. } => qs.clone(),
            Gate::XorIf { target, .. } => vec![*target],
            Gate::PhaseIf(_) => vec![],
        }
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Matrix { qubits, matrix } => {
                let dim = 1usize << qubits.len();
                let mut inv = vec![Complex64::new(0.0, 0.0); dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        inv[c * dim + r] = matrix[r * dim + c].conj();
                    }
                }
                Gate::Matrix {
                    qubits: qubits.clone(),
                    matrix: inv,
                }
            }
            other => other.clone(),
        }
    }

    pub(crate) fn apply_dense(&self, state: &mut StateVector) {
        let amps = state.amps_mut();
        match self {
            Gate::H(q) => {
                let bit = 1usize << q;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for k in 0..amps.len() {
                    if k & bit == 0 {
                        let (a, b) = (amps[k], amps[k | bit]);
                        amps[k] = (a + b) * s;
                        amps[k | bit] = (a - b) * s;
                    }
                }
            }
            Gate::X(q) => {
                let bit = 1usize << q;
                for k in 0..amps.len() {
                    if k & bit == 0 {
                        amps.swap(k, k | bit);
                    }
                }
            }
            Gate::Mcx { controls, target } => {
                let cmask: usize = controls.iter().map(|&c| 1usize << c).sum();
                let bit = 1usize << target;
                for k in 0..amps.len() {
                    if k & bit == 0 && k & cmask == cmask {
                        amps.swap(k, k | bit);
                    }
                }
            }
            Gate::Diffusion(qs) => {
                let offsets = local_offsets(qs);
                let mask: usize = qs.iter().map(|&q| 1usize << q).sum();
                let inv = 1.0 / offsets.len() as f64;
                for base in 0..amps.len() {
                    if base & mask != 0 {
                        continue;
                    }
                    let mean: Complex64 = offsets.iter().map(|&o| amps[base | o]).sum::<Complex64>() * inv;
                    for &o in &offsets {
                        amps[base | o] = mean * 2.0 - amps[base | o];
                    }
                }
            }
            Gate::Matrix { qubits, matrix } => {
                let offsets = local_offsets(qubits);
                let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
                let dim = offsets.len();
                let mut local = vec![Complex64::new(0.0, 0.0); dim];
                for base in 0..amps.len() {
                    if base & mask != 0 {
                        continue;
                    }
                    for (s, &o) in offsets.iter().enumerate() {
                        local[s] = amps[base | o];
                    }
                    for (r, &o) in offsets.iter().enumerate() {
                        amps[base | o] = (0..dim).map(|c| matrix[r * dim + c] * local[c]).sum();
                    }
                }
            }
            Gate::XorIf { target, predicate } => {
                let bit = 1usize << target;
                for k in 0..amps.len() {
                    if k & bit == 0 && predicate.eval(k as u64) {
                        amps.swap(k, k | bit);
                    }
                }
            }
            Gate::PhaseIf(predicate) => {
                for (k, a) in amps.iter_mut().enumerate() {
                    if predicate.eval(k as u64) {
                        *a = -*a;
                    }
                }
            }
        }
    }

    pub(crate) fn apply_sparse(&self, state: &mut SparseState) {
        match self {
            Gate::H(q) => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                state.apply_local(&[*q], &|v: &[Complex64]| vec![(v[0] + v[1]) * s, (v[0] - v[1]) * s]);
            }
            Gate::X(q) => {
                let bit = 1u64 << q;
                state.map_indices(|k| k ^ bit);
            }
            Gate::Mcx { controls, target } => {
                let cmask: u64 = controls.iter().map(|&c| 1u64 << c).sum();
                let bit = 1u64 << target;
                state.map_indices(|k| if k & cmask == cmask { k ^ bit } else { k });
            }
            Gate::Diffusion(qs) => {
                state.apply_local(qs, &|v: &[Complex64]| {
                    let mean = v.iter().sum::<Complex64>() / v.len() as f64;
                    v.iter().map(|&a| mean * 2.0 - a).collect()
                });
            }
            Gate::Matrix { qubits, matrix } => {
                let dim = 1usize << qubits.len();
                state.apply_local(qubits, &|v: &[Complex64]| {
                    (0..dim)
                        .map(|r| (0..dim).map(|c| matrix[r * dim + c] * v[c]).sum())
                        .collect()
                });
            }
            Gate::XorIf { target, predicate } => {
                let bit = 1u64 << target;
                state.map_indices(|k| if predicate.eval(k & !bit) { k ^ bit } else { k });
            }
            Gate::PhaseIf(predicate) => {
                state.map_amplitudes(|k, a| if predicate.eval(k) { -a } else { a });
            }
        }
    }
}

/// Basis offsets of every local value of the register `qs`.
fn local_offsets(qs: &[usize]) -> Vec<usize> {
    (0..1usize << qs.len())
        .map(|s| {
            qs.iter()
                .enumerate()
                .map(|(b, &q)| ((s >> b) & 1) << q)
                .sum()
        })
        .collect()
}

/// `max |(U†U − I)_{rc}|`.
pub fn unitarity_defect(matrix: &[Complex64], dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            let dot: Complex64 = (0..dim).map(|k| matrix[k * dim + r].conj() * matrix[k * dim + c]).sum();
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}
