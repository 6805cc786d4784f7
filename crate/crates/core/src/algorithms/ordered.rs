use serde::Serialize;

use super::grover::log2_exact;
use crate::error::{domain, Result};
use crate::simcore::{BitOracle, Gate, NetworkBuilder, QueryNetwork, Register};

/// The pair of inputs attached to a hidden position `i`.
///
/// `x_j = [j ≤ i]` is the ordered list; `Y` holds the `log N` bits of `i`,
/// most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedInstance {
    pub n_items: usize,
    pub i: u64,
    pub x: BitOracle,
    pub y: BitOracle,
}

impl OrderedInstance {
    pub fn new(n_items: usize, i: u64) -> Result<Self> {
        let n = log2_exact(n_items)?;
        if n == 0 {
            return Err(domain("ordered search needs N ≥ 2"));
        }
        if i >= n_items as u64 {
            return Err(domain(format!("i = {i} outside 0..{n_items}")));
        }
        Ok(Self {
            n_items,
            i,
            x: BitOracle::new((0..n_items as u64).map(|j| j <= i).collect())?,
            y: BitOracle::from_integer(i, n)?,
        })
    }

    pub fn log_n(&self) -> usize {
        self.n_items.trailing_zeros() as usize
    }

    /// `x_j`, computed from `i` rather than read from the list.
    pub fn target(&self, j: u64) -> bool {
        j <= self.i
    }

    /// Parity of the position `i`.
    pub fn parity(&self) -> bool {
        self.i & 1 == 1
    }
}

/// Places one comparison gate: `target ^= [J ≤ i]` for the value in `J`.
pub trait ComparisonGate {
    fn place(&mut self, b: &mut NetworkBuilder, j: &Register, target: usize) -> Result<()>;
}

/// The exact comparison: a single query to `X`.
pub struct ListQuery;

impl ComparisonGate for ListQuery {
    fn place(&mut self, b: &mut NetworkBuilder, j: &Register, target: usize) -> Result<()> {
        b.query(j, target, Some("compare"));
        Ok(())
    }
}

/// Appends the binary search for `i` on registers `J` and `R` (both `log N`
/// wide). Bit `k` of `R` is settled from the most significant down: `J` is
/// loaded with the settled prefix plus `2^k`, the comparison writes into
/// `R_k`, and `J` is cleared again.
pub fn push_binary_search(
    b: &mut NetworkBuilder,
    j: &Register,
    r: &Register,
    gate: &mut dyn ComparisonGate,
) -> Result<()> {
    let n = j.width();
    for k in (0..n).rev() {
        let load = |b: &mut NetworkBuilder| {
            for m in k + 1..n {
                b.gate(Gate::cnot(r.qubits[m], j.qubits[m]));
            }
            b.gate(Gate::X(j.qubits[k]));
        };
        load(b);
        gate.place(b, j, r.qubits[k])?;
        load(b);
    }
    Ok(())
}

/// Network `S` on `J` (qubits `0..log N`) and `R` (the next `log N`);
/// `S|0̄⟩ = |0, i⟩` with `log N` queries to `X`.
pub fn binary_search_network(n_items: usize) -> Result<QueryNetwork> {
    let n = log2_exact(n_items)?;
    if n == 0 {
        return Err(domain("ordered search needs N ≥ 2"));
    }
    let mut b = NetworkBuilder::new();
    let j = b.alloc("J", n);
    let r = b.alloc("R", n);
    push_binary_search(&mut b, &j, &r, &mut ListQuery)?;
    b.build(r.qubits[0])
}
