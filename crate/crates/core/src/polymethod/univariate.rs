use serde::{Deserialize, Serialize};

use super::exact::{self, Q};
use crate::error::{domain, Result};

/// Points of the uniform grid used for continuum maxima.
pub const CONTINUUM_GRID: usize = 10_000;

/// Polynomial on `[0, n]` in the Chebyshev basis `T_m(2x/n − 1)`, with its
/// values at the integers `0..=n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivariatePoly {
    pub n: usize,
    pub coefficients: Vec<f64>,
    pub values: Vec<f64>,
}

impl UnivariatePoly {
    pub fn from_coefficients(n: usize, coefficients: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(domain("polynomial domain [0, n] needs n ≥ 1"));
        }
        if coefficients.is_empty() {
            return Err(domain("polynomial needs at least one coefficient"));
        }
        let mut p = UnivariatePoly {
            n,
            coefficients,
            values: vec![],
        };
        p.values = (0..=n).map(|k| p.eval(k as f64)).collect();
        Ok(p)
    }

    /// The unique polynomial of degree ≤ n through `values[k]` at `k = 0..=n`.
    ///
    /// Solved in exact rational arithmetic from the exact binary values of
    /// the inputs, so conditioning of the equispaced system costs nothing.
    pub fn interpolate(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(domain("interpolation needs at least two points"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(domain("interpolation values must be finite"));
        }
        let n = values.len() - 1;
        let a: Vec<Vec<Q>> = (0..=n).map(|k| exact::chebyshev_row(n, &exact::grid_point(k, n))).collect();
        let b: Vec<Q> = values.iter().map(|&v| exact::from_f64(v)).collect();
        let c = exact::solve(a, b).expect("Chebyshev grid system is nonsingular");
        Ok(UnivariatePoly {
            n,
            coefficients: c.iter().map(exact::to_f64).collect(),
            values: values.to_vec(),
        })
    }

    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Maps `x ∈ [0, n]` to the Chebyshev variable `y ∈ [−1, 1]`.
    pub fn to_unit(&self, x: f64) -> f64 {
        2.0 * x / self.n as f64 - 1.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        clenshaw(&self.coefficients, self.to_unit(x))
    }

    /// Largest disagreement between the value table and the coefficients.
    pub fn table_defect(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (v - self.eval(k as f64)).abs())
            .fold(0.0, f64::max)
    }

    /// Minimum and maximum over the real interval `[lo, hi] ⊆ [0, n]`:
    /// a uniform grid plus every critical point located by bisection.
    pub fn extrema(&self, lo: f64, hi: f64) -> (f64, f64) {
        let deriv = chebyshev_derivative(&self.coefficients);
        let (ylo, yhi) = (self.to_unit(lo), self.to_unit(hi));
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut visit = |y: f64| {
            let v = clenshaw(&self.coefficients, y);
            min = min.min(v);
            max = max.max(v);
        };
        let steps = CONTINUUM_GRID - 1;
        let mut prev_y = ylo;
        let mut prev_d = clenshaw(&deriv, ylo);
        visit(ylo);
        for i in 1..=steps {
            let y = if i == steps {
                yhi
            } else {
                ylo + (yhi - ylo) * i as f64 / steps as f64
            };
            visit(y);
            let d = clenshaw(&deriv, y);
            if prev_d == 0.0 {
                visit(prev_y);
            } else if prev_d.signum() != d.signum() && d != 0.0 {
                visit(bisect(&deriv, prev_y, y));
            }
            prev_y = y;
            prev_d = d;
        }
        (min, max)
    }

    /// `max |p(x)|` over the real interval `[lo, hi]`.
    pub fn sup_abs(&self, lo: f64, hi: f64) -> f64 {
        let (min, max) = self.extrema(lo, hi);
        min.abs().max(max.abs())
    }
}

/// `Σ c_m T_m(y)`.
pub fn clenshaw(coefficients: &[f64], y: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coefficients.iter().skip(1).rev() {
        let b0 = 2.0 * y * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    y * b1 - b2 + coefficients.first().copied().unwrap_or(0.0)
}

/// Coefficients of `d/dy Σ c_m T_m(y)`.
pub fn chebyshev_derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n + 1];
    for k in (0..n - 1).rev() {
        d[k] = d[k + 2] + 2.0 * (k + 1) as f64 * c[k + 1];
    }
    d[0] /= 2.0;
    d.truncate(n - 1);
    d
}

fn bisect(c: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = clenshaw(c, a);
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        let fm = clenshaw(c, m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Largest index of a coefficient with magnitude above `tol`.
pub fn effective_degree(q: &UnivariatePoly, tol: f64) -> usize {
    q.coefficients
        .iter()
        .rposition(|c| c.abs() > tol)
        .unwrap_or(0)
}
