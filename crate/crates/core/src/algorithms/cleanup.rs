//! Turning an approximate answer into a clean one: compute, copy the answer
//! bit, uncompute.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{structural, Result};
use crate::simcore::{BitOracle, Gate, NetworkBuilder, QueryNetwork, Register, SparseState};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualNorm {
    pub j: u64,
    pub b: bool,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CleanWrapReport {
    /// `max_j P(answer ≠ x_j)` of the inner network.
    pub inner_error: f64,
    /// `‖C̃|j, b, 0̄⟩ − |j, b ⊕ x_j, 0̄⟩‖` for every input.
    pub residuals: Vec<ResidualNorm>,
    pub max_residual: f64,
    /// `√(2 · inner_error)`.
    pub bound: f64,
    pub inner_queries: usize,
    pub queries: usize,
}

/// `C̃ = A⁻¹ · CNOT(answer → b) · A` with a fresh output qubit `b`.
#[derive(Clone, Debug)]
pub struct CleanWrap {
    pub network: QueryNetwork,
    pub j: Register,
    pub b: usize,
    pub report: CleanWrapReport,
}

impl CleanWrap {
    pub fn input(&self, j: u64, b: bool) -> u64 {
        self.j.with_value(0, j) | (b as u64) << self.b
    }

    /// `C̃|j, b, 0̄⟩ − |j, b ⊕ x_j, 0̄⟩` for every `(j, b)`, in the order of the report.
    pub fn residual_vectors(&self, y: &BitOracle, target: &dyn Fn(u64) -> bool) -> Result<Vec<SparseState>> {
        let m = self.network.num_qubits();
        let mut out = Vec::new();
        for j in 0..1u64 << self.j.width() {
            for b in [false, true] {
                let got = self.network.apply_sparse(y, SparseState::basis(m, self.input(j, b))?)?;
                let ideal = SparseState::basis(m, self.input(j, b ^ target(j)))?;
                out.push(got.add_scaled(&ideal, Complex64::new(-1.0, 0.0)));
            }
        }
        Ok(out)
    }
}

/// Wraps `inner` (whose output qubit is the answer) so that it computes
/// `|j, b, 0̄⟩ → |j, b ⊕ x_j, 0̄⟩` approximately, and measures the result on
/// `y` against `target(j) = x_j`.
///
/// Fails with a structural error when `inner` changes the register named
/// `j_register` on some basis input.
pub fn clean_wrap(
    inner: &QueryNetwork,
    j_register: &str,
    y: &BitOracle,
    target: &dyn Fn(u64) -> bool,
) -> Result<CleanWrap> {
    let j = inner
        .register(j_register)
        .ok_or_else(|| structural(format!("no register named {j_register:?}")))?
        .clone();
    let answer = inner.output_qubit();
    if j.qubits.contains(&answer) {
        return Err(structural("answer bit lies inside the index register"));
    }
    let mut inner_error: f64 = 0.0;
    for jv in 0..1u64 << j.width() {
        let out = inner.apply_sparse(y, SparseState::basis(inner.num_qubits(), j.with_value(0, jv))?)?;
        if out.entries().iter().any(|&(k, _)| j.value(k) != jv) {
            return Err(structural(format!("inner network modifies {j_register} on input {jv}")));
        }
        let p1 = out.probability_one(answer);
        inner_error = inner_error.max(if target(jv) { 1.0 - p1 } else { p1 });
    }

    let mut b = NetworkBuilder::from_network(inner);
    let end = b.layers_len();
    let out = b.qubit("b");
    b.gate(Gate::cnot(answer, out));
    b.uncompute(0, end);
    let network = b.build(out)?;
    let mut wrap = CleanWrap {
        network,
        j,
        b: out,
        report: CleanWrapReport {
            inner_error,
            residuals: Vec::new(),
            max_residual: 0.0,
            bound: (2.0 * inner_error).sqrt(),
            inner_queries: inner.query_count(),
            queries: 2 * inner.query_count(),
        },
    };
    let vectors = wrap.residual_vectors(y, target)?;
    let labels = (0..1u64 << wrap.j.width()).flat_map(|jv| [(jv, false), (jv, true)]);
    wrap.report.residuals = labels
        .zip(&vectors)
        .map(|((jv, bv), w)| ResidualNorm { j: jv, b: bv, norm: w.norm() })
        .collect();
    wrap.report.max_residual = wrap.report.residuals.iter().map(|r| r.norm).fold(0.0, f64::max);
    Ok(wrap)
}

/// Gram matrix `G[k][l] = ⟨W_k|W_l⟩` of the residual vectors of a gate on
/// its basis inputs; row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualGram {
    pub dim: usize,
    pub matrix: Vec<Complex64>,
}

impl ResidualGram {
    pub fn new(dim: usize, matrix: Vec<Complex64>) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(structural(format!("{} entries for a {dim}×{dim} Gram matrix", matrix.len())));
        }
        Ok(Self { dim, matrix })
    }

    pub fn from_residuals(residuals: &[SparseState]) -> Self {
        let dim = residuals.len();
        let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            for l in k..dim {
                let g = residuals[k].inner(&residuals[l]);
                matrix[k * dim + l] = g;
                matrix[l * dim + k] = g.conj();
            }
        }
        Self { dim, matrix }
    }

    /// Residuals of `approx` against `exact`, column by column.
    pub fn from_columns(exact: &[SparseState], approx: &[SparseState]) -> Result<Self> {
        if exact.len() != approx.len() {
            return Err(structural("column counts differ"));
        }
        let w: Vec<SparseState> = approx
            .iter()
            .zip(exact)
            .map(|(a, e)| a.add_scaled(e, Complex64::new(-1.0, 0.0)))
            .collect();
        Ok(Self::from_residuals(&w))
    }

    /// `max_k ‖W_k‖`.
    pub fn epsilon(&self) -> f64 {
        (0..self.dim)
            .map(|k| self.matrix[k * self.dim + k].re.max(0.0).sqrt())
            .fold(0.0, f64::max)
    }

    /// `‖Σ_k α_k W_k‖`.
    pub fn deviation(&self, alpha: &[Complex64]) -> f64 {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..self.dim {
            for l in 0..self.dim {
                s += alpha[k].conj() * self.matrix[k * self.dim + l] * alpha[l];
            }
        }
        s.re.max(0.0).sqrt()
    }

    /// Largest `‖Σ α_k W_k‖` over unit `α`: square root of the top
    /// eigenvalue, by power iteration.
    pub fn max_deviation(&self) -> f64 {
        let d = self.dim;
        let mut v: Vec<Complex64> = (0..d).map(|k| Complex64::new(1.0 + 0.01 * k as f64, 0.0)).collect();
        let mut lambda = 0.0;
        for _ in 0..500 {
            let w: Vec<Complex64> = (0..d)
                .map(|r| (0..d).map(|c| self.matrix[r * d + c] * v[c]).sum())
                .collect();
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            v = w.into_iter().map(|z| z / norm).collect();
            lambda = norm;
        }
        lambda.sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuperpositionReport {
    pub trials: usize,
    /// Worst residual on a basis input.
    pub epsilon: f64,
    pub max_distance: f64,
    /// `max_distance / epsilon` (0 when `epsilon = 0`).
    pub max_ratio: f64,
    /// Largest ratio over all inputs, from the spectrum of the Gram matrix.
    pub worst_ratio: f64,
    /// `max_distance ≤ √2 · epsilon`.
    pub holds: bool,
}

fn random_unit(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Distance between `C̃|φ⟩` and `C|φ⟩` for random unit `φ` in the span of
/// the basis inputs, given the Gram matrix of the residuals.
pub fn superposition_check(gram: &ResidualGram, trials: usize, seed: u64) -> SuperpositionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let epsilon = gram.epsilon();
    let max_distance = (0..trials)
        .map(|_| gram.deviation(&random_unit(gram.dim, &mut rng)))
        .fold(0.0, f64::max);
    let ratio = |x: f64| if epsilon > 0.0 { x / epsilon } else { 0.0 };
    SuperpositionReport {
        trials,
        epsilon,
        max_distance,
        max_ratio: ratio(max_distance),
        worst_ratio: ratio(gram.max_deviation()),
        holds: max_distance <= std::f64::consts::SQRT_2 * epsilon * (1.0 + 1e-9) + 1e-12,
    }
}

/// [`superposition_check`] from the images of the basis inputs under the
/// exact gate `C` and the approximation `C̃`.
pub fn superposition_error_bound_check(
    exact: &[SparseState],
    approx: &[SparseState],
    trials: usize,
    seed: u64,
) -> Result<SuperpositionReport> {
    Ok(superposition_check(&ResidualGram::from_columns(exact, approx)?, trials, seed))
}
