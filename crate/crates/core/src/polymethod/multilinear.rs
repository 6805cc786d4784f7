use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::univariate::UnivariatePoly;
use crate::error::{LabError, Result};
use crate::simcore::{acceptance_probability, BitOracle, QueryNetwork};
use crate::tol;

/// Largest number of variables [`extract_multilinear`] will enumerate.
pub const MAX_EXTRACT_VARS: usize = 14;

/// `P(X) = Σ_S c_S Π_{j∈S} x_j`, with `S` stored as a bit mask.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearPoly {
    n: usize,
    coefficients: Vec<f64>,
}

impl MultilinearPoly {
    /// Möbius inversion of a value table indexed by input mask.
    pub fn from_values(n: usize, values: &[f64]) -> Result<Self> {
        if n > MAX_EXTRACT_VARS {
            return Err(LabError::Limit {
                what: "multilinear variables",
                value: n as u64,
                max: MAX_EXTRACT_VARS as u64,
            });
        }
        if values.len() != 1 << n {
            return Err(crate::error::structural(format!(
                "{} values for {n} variables",
                values.len()
            )));
        }
        let mut c = values.to_vec();
        for bit in 0..n {
            let b = 1 << bit;
            for mask in 0..c.len() {
                if mask & b != 0 {
                    c[mask] -= c[mask ^ b];
                }
            }
        }
        Ok(MultilinearPoly { n, coefficients: c })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, subset: u64) -> f64 {
        self.coefficients[subset as usize]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `P(X)` for the input whose mask has bit `j` equal to `x_j`.
    pub fn evaluate(&self, input: u64) -> f64 {
        // sum over all submasks of the input
        let mut acc = self.coefficients[0];
        let mut sub = input;
        while sub != 0 {
            acc += self.coefficients[sub as usize];
            sub = (sub - 1) & input;
        }
        acc
    }

    /// Largest `|S|` with `|c_S| > 1e−9`.
    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > tol::MULTILINEAR_DEGREE)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Average of `P` over each Hamming-weight class, `k = 0..=n`.
    pub fn weight_averages(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n + 1];
        let mut counts = vec![0usize; self.n + 1];
        for mask in 0..1u64 << self.n {
            let k = mask.count_ones() as usize;
            sums[k] += self.evaluate(mask);
            counts[k] += 1;
        }
        sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect()
    }
}

#[derive(Serialize)]
struct Term {
    subset: Vec<usize>,
    coefficient: f64,
}

impl Serialize for MultilinearPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            n: usize,
            degree: usize,
            terms: Vec<Term>,
        }
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > tol::MULTILINEAR_DEGREE)
            .map(|(mask, &coefficient)| Term {
                subset: (0..self.n).filter(|j| mask >> j & 1 == 1).collect(),
                coefficient,
            })
            .collect();
        View {
            n: self.n,
            degree: self.degree(),
            terms,
        }
        .serialize(s)
    }
}

/// Acceptance probability on every oracle `X ∈ {0,1}^n`, then Möbius inversion.
pub fn extract_multilinear(net: &QueryNetwork, n: usize) -> Result<MultilinearPoly> {
    if n == 0 || n > MAX_EXTRACT_VARS {
        return Err(LabError::Limit {
            what: "oracle length for extraction",
            value: n as u64,
            max: MAX_EXTRACT_VARS as u64,
        });
    }
    let values = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| acceptance_probability(net, &BitOracle::from_mask(n, mask)?))
        .collect::<Result<Vec<f64>>>()?;
    MultilinearPoly::from_values(n, &values)
}

/// Weight-class averages `Q(k)` fitted by the unique interpolant of degree ≤ n.
pub fn symmetrize(p: &MultilinearPoly) -> Result<UnivariatePoly> {
    if p.n == 0 {
        return Err(crate::error::domain("symmetrization needs at least one variable"));
    }
    UnivariatePoly::interpolate(&p.weight_averages())
}
