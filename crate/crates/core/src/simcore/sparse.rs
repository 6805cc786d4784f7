use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{structural, Result};

/// Amplitude list sorted by basis index, for registers too wide for a dense
/// vector but with small reachable support.
///
/// Only exact zeros are dropped, so results match the dense simulator up to
/// floating-point summation order.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    num_qubits: usize,
    entries: Vec<(u64, Complex64)>,
}

pub const MAX_SPARSE_QUBITS: usize = 64;

impl SparseState {
    pub fn basis(num_qubits: usize, index: u64) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_SPARSE_QUBITS {
            return Err(structural(format!("{num_qubits} qubits unsupported")));
        }
        if num_qubits < 64 && index >> num_qubits != 0 {
            return Err(structural(format!("basis index {index} out of range")));
        }
        Ok(SparseState {
            num_qubits,
            entries: vec![(index, Complex64::new(1.0, 0.0))],
        })
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Builds from unsorted, possibly repeated entries (repeats are summed).
    pub fn from_entries(num_qubits: usize, entries: Vec<(u64, Complex64)>) -> Self {
        let mut s = SparseState {
            num_qubits,
            entries,
        };
        s.canonicalize();
        s
    }

    pub fn from_dense(state: &StateVector) -> Self {
        let entries = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != Complex64::new(0.0, 0.0))
            .map(|(k, &a)| (k as u64, a))
            .collect();
        SparseState {
            num_qubits: state.num_qubits(),
            entries,
        }
    }

    pub fn to_dense(&self) -> Result<StateVector> {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << self.num_qubits];
        for &(k, a) in &self.entries {
            amps[k as usize] = a;
        }
        StateVector::new(self.num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn entries(&self) -> &[(u64, Complex64)] {
        &self.entries
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.1.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self|other⟩` by merge join.
    pub fn inner(&self, other: &SparseState) -> Complex64 {
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex64::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ka, a) = self.entries[i];
            let (kb, b) = other.entries[j];
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a.conj() * b;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `self + scale · other` (unnormalized).
    pub fn add_scaled(&self, other: &SparseState, scale: Complex64) -> SparseState {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&(k, a)| (k, a * scale)));
        SparseState::from_entries(self.num_qubits.max(other.num_qubits), entries)
    }

    pub fn probability_one(&self, qubit: usize) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.0 >> qubit & 1 == 1)
            .map(|e| e.1.norm_sqr())
            .sum::<f64>()
            .clamp(0.0, 1.0)
    }

    /// Keeps only basis states whose `qubit` equals `value` (no renormalization).
    pub fn project(&self, qubit: usize, value: bool) -> SparseState {
        SparseState {
            num_qubits: self.num_qubits,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|e| (e.0 >> qubit & 1 == 1) == value)
                .collect(),
        }
    }

    /// Keeps basis states on which `keep` holds (no renormalization).
    pub fn filter(&self, keep: impl Fn(u64) -> bool) -> SparseState {
        SparseState {
            num_qubits: self.num_qubits,
            entries: self.entries.iter().copied().filter(|e| keep(e.0)).collect(),
        }
    }

    pub(crate) fn map_indices(&mut self, f: impl Fn(u64) -> u64) {
        for e in &mut self.entries {
            e.0 = f(e.0);
        }
        self.canonicalize();
    }

    pub(crate) fn map_amplitudes(&mut self, f: impl Fn(u64, Complex64) -> Complex64) {
        for e in &mut self.entries {
            e.1 = f(e.0, e.1);
        }
    }

    pub(crate) fn replace_entries(&mut self, entries: Vec<(u64, Complex64)>) {
        self.entries = entries;
        self.canonicalize();
    }

    /// Applies `matrix` (row-major, `2^k × 2^k`) to the qubits `local`,
    /// with `local[0]` the least significant local bit.
    pub(crate) fn apply_local(&mut self, local: &[usize], matrix: &dyn Fn(&[Complex64]) -> Vec<Complex64>) {
        let mask: u64 = local.iter().map(|&q| 1u64 << q).sum();
        let dim = 1usize << local.len();
        let deposit = |s: usize| -> u64 {
            local
                .iter()
                .enumerate()
                .map(|(b, &q)| ((s as u64 >> b) & 1) << q)
                .sum()
        };
        let extract = |k: u64| -> usize {
            local
                .iter()
                .enumerate()
                .map(|(b, &q)| ((k >> q & 1) as usize) << b)
                .sum()
        };
        let mut entries = std::mem::take(&mut self.entries);
        entries.sort_by_key(|e| e.0 & !mask);
        let mut out = Vec::with_capacity(entries.len() * 2);
        let mut start = 0;
        let mut local_vec = vec![Complex64::new(0.0, 0.0); dim];
        while start < entries.len() {
            let rest = entries[start].0 & !mask;
            let mut end = start;
            local_vec.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
            while end < entries.len() && entries[end].0 & !mask == rest {
                local_vec[extract(entries[end].0)] = entries[end].1;
                end += 1;
            }
            for (s, a) in matrix(&local_vec).into_iter().enumerate() {
                if a != Complex64::new(0.0, 0.0) {
                    out.push((rest | deposit(s), a));
                }
            }
            start = end;
        }
        self.replace_entries(out);
    }

    /// Sorts by index and sums repeated indices in a fixed order.
    fn canonicalize(&mut self) {
        self.entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(u64, Complex64)> = Vec::with_capacity(self.entries.len());
        for &(k, a) in &self.entries {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += a,
                _ => merged.push((k, a)),
            }
        }
        merged.retain(|e| e.1 != Complex64::new(0.0, 0.0));
        self.entries = merged;
    }
}
