use serde::Serialize;

use super::gate::Gate;
use super::oracle::BitOracle;
use super::sparse::{SparseState, MAX_SPARSE_QUBITS};
use super::state::{StateVector, MAX_DENSE_QUBITS};
use crate::error::{structural, Result};

/// Named group of qubits; `qubits[0]` is the least significant bit of its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<usize>,
}

impl Register {
    pub fn width(&self) -> usize {
        self.qubits.len()
    }

    pub fn mask(&self) -> u64 {
        self.qubits.iter().map(|&q| 1u64 << q).sum()
    }

    /// Value held by the register in basis state `basis`.
    pub fn value(&self, basis: u64) -> u64 {
        self.qubits
            .iter()
            .enumerate()
            .map(|(b, &q)| (basis >> q & 1) << b)
            .sum()
    }

    /// `basis` with the register overwritten by `value`.
    pub fn with_value(&self, basis: u64, value: u64) -> u64 {
        self.qubits
            .iter()
            .enumerate()
            .fold(basis & !self.mask(), |acc, (b, &q)| acc | (value >> b & 1) << q)
    }
}

/// Where an oracle gate reads its index and writes its answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleLayout {
    pub index: Vec<usize>,
    pub answer: usize,
}

impl OracleLayout {
    fn max_qubit(&self) -> usize {
        self.index.iter().copied().chain([self.answer]).max().unwrap_or(0)
    }

    fn index_value(&self, basis: u64) -> u64 {
        self.index
            .iter()
            .enumerate()
            .map(|(b, &q)| (basis >> q & 1) << b)
            .sum()
    }

    fn check_disjoint(&self) -> Result<()> {
        if self.index.contains(&self.answer) {
            return Err(structural("oracle answer bit overlaps its index register"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Layer {
    Gate(Gate),
    Query { layout: OracleLayout, label: Option<String> },
}

/// `A = U_T O U_{T−1} … O U_0` as a flat list of gates and oracle placements.
#[derive(Clone, Debug)]
pub struct QueryNetwork {
    num_qubits: usize,
    layers: Vec<Layer>,
    registers: Vec<Register>,
    output: usize,
}

impl QueryNetwork {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn output_qubit(&self) -> usize {
        self.output
    }

    pub fn query_count(&self) -> usize {
        self.layers
            .iter()
            .filter(|l| matches!(l, Layer::Query { .. }))
            .count()
    }

    /// Labels of the oracle placements, in order.
    pub fn query_labels(&self) -> Vec<Option<&str>> {
        self.layers
            .iter()
            .filter_map(|l| match l {
                Layer::Query { label, .. } => Some(label.as_deref()),
                Layer::Gate(_) => None,
            })
            .collect()
    }

    /// `A⁻¹`, with the same registers and output bit.
    pub fn inverse(&self) -> QueryNetwork {
        QueryNetwork {
            num_qubits: self.num_qubits,
            layers: self
                .layers
                .iter()
                .rev()
                .map(|l| match l {
                    Layer::Gate(g) => Layer::Gate(g.inverse()),
                    q => q.clone(),
                })
                .collect(),
            registers: self.registers.clone(),
            output: self.output,
        }
    }

    pub fn with_output(mut self, output: usize) -> Result<QueryNetwork> {
        if output >= self.num_qubits {
            return Err(structural(format!("output qubit {output} out of range")));
        }
        self.output = output;
        Ok(self)
    }

    /// Runs the layers on an arbitrary dense input.
    pub fn apply(&self, oracle: &BitOracle, mut state: StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.num_qubits {
            return Err(structural(format!(
                "network on {} qubits applied to a {}-qubit state",
                self.num_qubits,
                state.num_qubits()
            )));
        }
        for layer in &self.layers {
            match layer {
                Layer::Gate(g) => g.apply_dense(&mut state),
                Layer::Query { layout, .. } => query_dense(&mut state, oracle, layout),
            }
        }
        Ok(state)
    }

    /// Runs the layers on an arbitrary sparse input.
    pub fn apply_sparse(&self, oracle: &BitOracle, mut state: SparseState) -> Result<SparseState> {
        if state.num_qubits() != self.num_qubits {
            return Err(structural(format!(
                "network on {} qubits applied to a {}-qubit state",
                self.num_qubits,
                state.num_qubits()
            )));
        }
        for layer in &self.layers {
            match layer {
                Layer::Gate(g) => g.apply_sparse(&mut state),
                Layer::Query { layout, .. } => {
                    let bit = 1u64 << layout.answer;
                    state.map_indices(|k| {
                        if oracle.query(layout.index_value(k)) {
                            k ^ bit
                        } else {
                            k
                        }
                    });
                }
            }
        }
        Ok(state)
    }
}

fn query_dense(state: &mut StateVector, oracle: &BitOracle, layout: &OracleLayout) {
    let bit = 1usize << layout.answer;
    let amps = state.amps_mut();
    for k in 0..amps.len() {
        if k & bit == 0 && oracle.query(layout.index_value(k as u64)) {
            amps.swap(k, k | bit);
        }
    }
}

/// `|j, b, w⟩ → |j, b ⊕ x_j, w⟩` on the qubits named by `layout`.
pub fn apply_oracle(state: &StateVector, oracle: &BitOracle, layout: &OracleLayout) -> Result<StateVector> {
    layout.check_disjoint()?;
    if layout.max_qubit() >= state.num_qubits() {
        return Err(structural(format!(
            "oracle layout reaches qubit {} of a {}-qubit state",
            layout.max_qubit(),
            state.num_qubits()
        )));
    }
    let mut out = state.clone();
    query_dense(&mut out, oracle, layout);
    Ok(out)
}

/// `A|0̄⟩`.
pub fn run_network(net: &QueryNetwork, oracle: &BitOracle) -> Result<StateVector> {
    net.apply(oracle, StateVector::zero(net.num_qubits)?)
}

/// `A|0̄⟩` on the sparse simulator.
pub fn run_network_sparse(net: &QueryNetwork, oracle: &BitOracle) -> Result<SparseState> {
    net.apply_sparse(oracle, SparseState::zero(net.num_qubits)?)
}

/// Exact probability that the output bit of `A|0̄⟩` reads 1.
pub fn acceptance_probability(net: &QueryNetwork, oracle: &BitOracle) -> Result<f64> {
    if net.num_qubits <= MAX_DENSE_QUBITS {
        run_network(net, oracle)?.probability_one(net.output)
    } else {
        Ok(run_network_sparse(net, oracle)?.probability_one(net.output))
    }
}

/// Incremental construction of a [`QueryNetwork`].
#[derive(Clone, Debug, Default)]
pub struct NetworkBuilder {
    num_qubits: usize,
    layers: Vec<Layer>,
    registers: Vec<Register>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Continues from the layers and registers of `net`.
    pub fn from_network(net: &QueryNetwork) -> Self {
        Self {
            num_qubits: net.num_qubits,
            layers: net.layers.clone(),
            registers: net.registers.clone(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Allocates `width` fresh qubits above all existing ones.
    pub fn alloc(&mut self, name: impl Into<String>, width: usize) -> Register {
        let reg = Register {
            name: name.into(),
            qubits: (self.num_qubits..self.num_qubits + width).collect(),
        };
        self.num_qubits += width;
        self.registers.push(reg.clone());
        reg
    }

    pub fn qubit(&mut self, name: impl Into<String>) -> usize {
        self.alloc(name, 1).qubits[0]
    }

    pub fn gate(&mut self, g: Gate) -> &mut Self {
        self.layers.push(Layer::Gate(g));
        self
    }

    pub fn h_all(&mut self, reg: &Register) -> &mut Self {
        for &q in &reg.qubits {
            self.gate(Gate::H(q));
        }
        self
    }

    pub fn query(&mut self, index: &Register, answer: usize, label: Option<&str>) -> &mut Self {
        self.layers.push(Layer::Query {
            layout: OracleLayout {
                index: index.qubits.clone(),
                answer,
            },
            label: label.map(str::to_owned),
        });
        self
    }

    pub fn layers_len(&self) -> usize {
        self.layers.len()
    }

    /// Appends the inverse of the layers in `from..to`, in reverse order.
    pub fn uncompute(&mut self, from: usize, to: usize) -> &mut Self {
        let inv: Vec<Layer> = self.layers[from..to]
            .iter()
            .rev()
            .map(|l| match l {
                Layer::Gate(g) => Layer::Gate(g.inverse()),
                q => q.clone(),
            })
            .collect();
        self.layers.extend(inv);
        self
    }

    pub fn extend(&mut self, layers: impl IntoIterator<Item = Layer>) -> &mut Self {
        self.layers.extend(layers);
        self
    }

    /// Validates qubit indices and oracle layouts.
    pub fn build(self, output: usize) -> Result<QueryNetwork> {
        let m = self.num_qubits;
        if m == 0 || m > MAX_SPARSE_QUBITS {
            return Err(structural(format!("network on {m} qubits")));
        }
        let check = |q: usize| {
            if q >= m {
                Err(structural(format!("qubit {q} outside a {m}-qubit network")))
            } else {
                Ok(())
            }
        };
        check(output)?;
        for layer in &self.layers {
            match layer {
                Layer::Gate(g) => {
                    let qs = g.qubits();
                    for (i, &q) in qs.iter().enumerate() {
                        check(q)?;
                        if qs[..i].contains(&q) {
                            return Err(structural(format!("gate repeats qubit {q}")));
                        }
                    }
                }
                Layer::Query { layout, .. } => {
                    layout.check_disjoint()?;
                    check(layout.max_qubit())?;
                }
            }
        }
        Ok(QueryNetwork {
            num_qubits: m,
            layers: self.layers,
            registers: self.registers,
            output,
        })
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// qubit 0 = answer, qubits 1..=2 = index.
    fn layout2() -> OracleLayout {
        OracleLayout {
            index: vec![1, 2],
            answer: 0,
        }
    }

    #[test]
    fn oracle_examples() {
        let x = BitOracle::parse("0110").unwrap();
        let s = StateVector::basis(3, 2 << 1).unwrap();
        let out = apply_oracle(&s, &x, &layout2()).unwrap();
        assert_eq!(out.amplitudes()[(2 << 1) | 1], c(1.0));

        let zeros = BitOracle::parse("0000").unwrap();
        let u = StateVector::normalized(3, (0..8).map(|k| c(k as f64 + 1.0)).collect()).unwrap();
        assert_eq!(apply_oracle(&u, &zeros, &layout2()).unwrap(), u);

        let x = BitOracle::parse("0001").unwrap();
        let uni = StateVector::normalized(3, (0..8).map(|k| c(if k & 1 == 0 { 1.0 } else { 0.0 })).collect()).unwrap();
        let out = apply_oracle(&uni, &x, &layout2()).unwrap();
        for j in 0..4u64 {
            let b = (j == 3) as u64;
            assert!((out.amplitudes()[(j << 1 | b) as usize] - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn oracle_layout_too_wide() {
        let s = StateVector::zero(2).unwrap();
        let x = BitOracle::parse("01").unwrap();
        assert!(apply_oracle(&s, &x, &layout2()).is_err());
        let bad = OracleLayout {
            index: vec![0],
            answer: 0,
        };
        assert!(apply_oracle(&s, &x, &bad).is_err());
    }

    #[test]
    fn identity_and_single_query_networks() {
        let mut b = NetworkBuilder::new();
        b.alloc("w", 2);
        let net = b.build(0).unwrap();
        let x = BitOracle::parse("1").unwrap();
        assert_eq!(net.query_count(), 0);
        assert_eq!(run_network(&net, &x).unwrap(), StateVector::zero(2).unwrap());
        assert_eq!(acceptance_probability(&net, &x).unwrap(), 0.0);

        let mut b = NetworkBuilder::new();
        let ans = b.qubit("b");
        let idx = b.alloc("j", 2);
        b.query(&idx, ans, None);
        let net = b.build(ans).unwrap();
        let x = BitOracle::parse("1000").unwrap();
        assert_eq!(run_network(&net, &x).unwrap(), StateVector::basis(3, 1).unwrap());
    }

    #[test]
    fn builder_rejects_bad_qubits() {
        let mut b = NetworkBuilder::new();
        b.alloc("w", 1);
        b.gate(Gate::H(3));
        assert!(b.build(0).is_err());
        let mut b = NetworkBuilder::new();
        b.alloc("w", 2);
        b.gate(Gate::cnot(1, 1));
        assert!(b.build(0).is_err());
    }

    #[test]
    fn register_values() {
        let r = Register {
            name: "r".into(),
            qubits: vec![3, 1],
        };
        assert_eq!(r.value(0b1000), 1);
        assert_eq!(r.value(0b0010), 2);
        assert_eq!(r.with_value(0b1111, 0), 0b0101);
        assert_eq!(r.with_value(0, 3), 0b1010);
    }
}
