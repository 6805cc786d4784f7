use crate::error::{structural, Result};
use crate::simcore::{acceptance_probability, BitOracle, Gate, NetworkBuilder, QueryNetwork};

/// Label of the final oracle placement that checks the candidate.
pub const VERIFY_LABEL: &str = "verify";
pub const ITERATION_LABEL: &str = "grover";

pub(crate) fn log2_exact(n_items: usize) -> Result<usize> {
    if n_items == 0 || !n_items.is_power_of_two() {
        return Err(structural(format!("N = {n_items} is not a power of two")));
    }
    Ok(n_items.trailing_zeros() as usize)
}

/// `iterations` Grover iterations followed by one verification query.
///
/// Qubit 0 is the answer bit and the output; qubits `1..=log N` hold the
/// index. The answer bit sits in `|−⟩` during the iterations so each query
/// acts as a phase flip, and is reset to `|0⟩` before the verification query
/// writes `x_j` into it. The network makes `iterations + 1` queries.
pub fn grover_network(n_items: usize, iterations: usize) -> Result<QueryNetwork> {
    let n = log2_exact(n_items)?;
    let mut b = NetworkBuilder::new();
    let ans = b.qubit("answer");
    let idx = b.alloc("index", n);
    b.gate(Gate::X(ans)).gate(Gate::H(ans)).h_all(&idx);
    for _ in 0..iterations {
        b.query(&idx, ans, Some(ITERATION_LABEL));
        if n > 0 {
            b.gate(Gate::Diffusion(idx.qubits.clone()));
        }
    }
    b.gate(Gate::H(ans)).gate(Gate::X(ans));
    b.query(&idx, ans, Some(VERIFY_LABEL));
    b.build(ans)
}

/// `sin²((2T+1)·arcsin√(t/N))`, or 0 when `t = 0`.
pub fn grover_acceptance(n_items: usize, t: usize, iterations: usize) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let theta = (t as f64 / n_items as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Error on the promise `|X| ∈ {0, t}`: `1 − acceptance` at weight `t`
/// (weight 0 is always rejected).
pub fn grover_error(n_items: usize, t: usize, iterations: usize) -> f64 {
    if t == 0 {
        0.0
    } else {
        1.0 - grover_acceptance(n_items, t, iterations)
    }
}

/// Error on the promise `|X| = 0` or `|X| ≥ t`: worst case over weights `t..=N`.
pub fn grover_promise_error(n_items: usize, t: usize, iterations: usize) -> f64 {
    (t.max(1)..=n_items)
        .map(|k| grover_error(n_items, k, iterations))
        .fold(0.0, f64::max)
}

/// Acceptance on the representatives `1^k 0^{N−k}` for `k = 0..=N`.
///
/// For networks invariant under permutations of the index (such as Grover
/// search) this equals the weight-class average without enumerating `2^N`
/// inputs.
pub fn symmetric_profile(net: &QueryNetwork, n_items: usize) -> Result<Vec<f64>> {
    (0..=n_items)
        .map(|k| {
            let x = BitOracle::new((0..n_items).map(|j| j < k).collect())?;
            acceptance_probability(net, &x)
        })
        .collect()
}
