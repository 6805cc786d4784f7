use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{domain, structural, LabError, Result};
use crate::tol;

/// Largest register the dense simulator will allocate.
pub const MAX_DENSE_QUBITS: usize = 24;

/// Normalized amplitudes over `num_qubits` qubits; basis index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Exact outcome statistics of measuring one qubit in the computational basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasurementOutcome {
    pub qubit: usize,
    pub probability_one: f64,
    /// Post-measurement rule applied by [`StateVector::sample_qubit`].
    pub collapse: &'static str,
}

pub(crate) const COLLAPSE_RULE: &str =
    "projective computational-basis measurement; surviving branch renormalized";

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(structural("state needs at least one qubit"));
    }
    if num_qubits > MAX_DENSE_QUBITS {
        return Err(LabError::Limit {
            what: "dense qubits",
            value: num_qubits as u64,
            max: MAX_DENSE_QUBITS as u64,
        });
    }
    Ok(())
}

impl StateVector {
    /// Checks length `2^m` and normalization within the state tolerance.
    pub fn new(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_width(num_qubits)?;
        if amps.len() != 1 << num_qubits {
            return Err(structural(format!(
                "{} amplitudes for {num_qubits} qubits",
                amps.len()
            )));
        }
        let s = StateVector { num_qubits, amps };
        if (s.norm() - 1.0).abs() > tol::STATE {
            return Err(domain(format!("state has norm {}", s.norm())));
        }
        Ok(s)
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(num_qubits: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(domain("cannot normalize the zero vector"));
        }
        amps.iter_mut().for_each(|a| *a /= n);
        Self::new(num_qubits, amps)
    }

    pub fn basis(num_qubits: usize, index: u64) -> Result<Self> {
        check_width(num_qubits)?;
        if index >> num_qubits != 0 {
            return Err(structural(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// `|0...0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.same_dim(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn same_dim(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(structural(format!(
                "dimension mismatch: {} vs {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    pub fn probability_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.num_qubits {
            return Err(structural(format!("qubit {qubit} out of range")));
        }
        let p: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| k >> qubit & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p.clamp(0.0, 1.0))
    }

    pub fn measure(&self, qubit: usize) -> Result<MeasurementOutcome> {
        Ok(MeasurementOutcome {
            qubit,
            probability_one: self.probability_one(qubit)?,
            collapse: COLLAPSE_RULE,
        })
    }

    /// Samples one qubit and returns the outcome with the collapsed state.
    pub fn sample_qubit<R: Rng>(&self, qubit: usize, rng: &mut R) -> Result<(bool, StateVector)> {
        let p1 = self.probability_one(qubit)?;
        let bit = rng.gen::<f64>() < p1;
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                if (k >> qubit & 1 == 1) == bit {
                    a
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((bit, StateVector::normalized(self.num_qubits, amps)?))
    }

    /// Probabilities of every basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// `‖s1 − s2‖₂`.
pub fn euclidean_distance(s1: &StateVector, s2: &StateVector) -> Result<f64> {
    s1.same_dim(s2)?;
    Ok(s1
        .amps
        .iter()
        .zip(&s2.amps)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn distance_examples() {
        let zero = StateVector::basis(1, 0).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        let plus = StateVector::normalized(1, vec![c(1.0), c(1.0)]).unwrap();
        assert_eq!(euclidean_distance(&zero, &zero).unwrap(), 0.0);
        assert!((euclidean_distance(&zero, &one).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let expect = (2.0 - 2f64.sqrt()).sqrt();
        assert!((euclidean_distance(&zero, &plus).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn dimension_checks() {
        let a = StateVector::zero(1).unwrap();
        let b = StateVector::zero(2).unwrap();
        assert!(matches!(
            euclidean_distance(&a, &b),
            Err(LabError::Structural(_))
        ));
        assert!(StateVector::new(2, vec![c(1.0); 3]).is_err());
        assert!(StateVector::new(1, vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::zero(MAX_DENSE_QUBITS + 1).is_err());
    }

    #[test]
    fn measurement_is_exact() {
        let s = StateVector::normalized(2, vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert!((s.probability_one(0).unwrap() - 0.5).abs() < 1e-15);
        assert!(s.measure(2).is_err());
    }

    #[test]
    fn sampling_collapses() {
        use rand::SeedableRng;
        let s = StateVector::normalized(2, vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (bit, post) = s.sample_qubit(0, &mut rng).unwrap();
        let k = if bit { 3 } else { 0 };
        assert!((post.amplitudes()[k].norm() - 1.0).abs() < 1e-12);
    }
}
