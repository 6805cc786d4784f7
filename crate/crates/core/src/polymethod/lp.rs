//! Minimum achievable error of a degree-`d` acceptance polynomial.
//!
//! Variables are the Chebyshev coefficients `c_0..c_d` of `q` on `[0, N]`
//! and `ε`; constraints sit at the integers `0..=N`:
//!
//! * `q(0) = 0` (or `0 ≤ q(0) ≤ ε` in relaxed mode),
//! * `1 − ε ≤ q(k) ≤ 1` for `k = t..=N`,
//! * `0 ≤ q(k) ≤ 1` for `k = 1..t`.
//!
//! The problem is solved through its dual, which has only `d + 2` equality
//! rows, with the exact rational simplex.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exact::{self, int, Q};
use super::simplex::{self, LpOutcome};
use super::univariate::UnivariatePoly;
use crate::error::{domain, LabError, Result};

/// Largest list length accepted by the LP.
pub const LP_MAX_N: usize = 64;

/// Treatment of the constraint at `|X| = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroMode {
    /// `q(0) = 0`.
    #[default]
    Strict,
    /// `0 ≤ q(0) ≤ ε`.
    Relaxed,
}

impl std::str::FromStr for ZeroMode {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ZeroMode::Strict),
            "relaxed" => Ok(ZeroMode::Relaxed),
            other => Err(domain(format!("unknown mode {other:?} (strict|relaxed)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpResiduals {
    /// Largest constraint violation of the rounded witness.
    pub primal_feasibility: f64,
    /// `|primal − dual|`, exact before rounding.
    pub duality_gap: f64,
    /// Value table vs coefficient disagreement of the witness.
    pub table_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpCertificate {
    pub n: usize,
    pub t: usize,
    pub d: usize,
    pub mode: ZeroMode,
    pub epsilon: f64,
    pub coefficients: Vec<f64>,
    pub residuals: LpResiduals,
    #[serde(skip)]
    pub witness: UnivariatePoly,
}

enum Kind {
    Ge,
    Eq,
}

/// Strict-mode [`min_error_lp_with`].
pub fn min_error_lp(n: usize, t: usize, d: usize) -> Result<LpCertificate> {
    min_error_lp_with(n, t, d, ZeroMode::Strict)
}

/// Degrees above `n` add nothing on the grid `0..=n` and are clamped to `n`.
pub fn min_error_lp_with(n: usize, t: usize, d: usize, mode: ZeroMode) -> Result<LpCertificate> {
    if n == 0 || t == 0 || t > n {
        return Err(domain(format!("need 1 ≤ t ≤ N, got N={n}, t={t}")));
    }
    if n > LP_MAX_N {
        return Err(LabError::Limit {
            what: "LP list length",
            value: n as u64,
            max: LP_MAX_N as u64,
        });
    }
    let deg = d.min(n);
    let vars = deg + 2;
    let eps_var = deg + 1;
    let with_eps = |row: &[Q], sign: i64| {
        let mut g = row.to_vec();
        g.push(int(sign));
        g
    };
    let neg = |row: &[Q]| row.iter().map(|v| -v.clone()).collect::<Vec<_>>();

    let mut constraints: Vec<(Vec<Q>, Q, Kind)> = Vec::new();
    for k in 0..=n {
        let row = exact::chebyshev_row(deg, &exact::grid_point(k, n));
        if k == 0 {
            match mode {
                ZeroMode::Strict => constraints.push((with_eps(&row, 0), Q::zero(), Kind::Eq)),
                ZeroMode::Relaxed => {
                    constraints.push((with_eps(&row, 0), Q::zero(), Kind::Ge));
                    constraints.push((with_eps(&neg(&row), 1), Q::zero(), Kind::Ge));
                }
            }
        } else if k >= t {
            constraints.push((with_eps(&neg(&row), 0), int(-1), Kind::Ge));
            constraints.push((with_eps(&row, 1), int(1), Kind::Ge));
        } else {
            constraints.push((with_eps(&row, 0), Q::zero(), Kind::Ge));
            constraints.push((with_eps(&neg(&row), 0), int(-1), Kind::Ge));
        }
    }

    // Dual in standard form: one column per `≥` row (two for equalities),
    // one equality row per primal variable.
    let mut columns: Vec<Vec<Q>> = Vec::new();
    let mut costs: Vec<Q> = Vec::new();
    for (g, h, kind) in &constraints {
        columns.push(g.clone());
        costs.push(-h.clone());
        if let Kind::Eq = kind {
            columns.push(neg(g));
            costs.push(h.clone());
        }
    }
    let a: Vec<Vec<Q>> = (0..vars).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    let b: Vec<Q> = (0..vars).map(|r| if r == eps_var { int(1) } else { Q::zero() }).collect();

    let sol = match simplex::solve(&a, &b, &costs) {
        LpOutcome::Optimal(sol) => sol,
        other => {
            return Err(LabError::Numerical(format!(
                "dual LP ended as {other:?} for N={n}, t={t}, d={d}"
            )))
        }
    };
    let eps_exact = -sol.objective.clone();
    let z: Vec<Q> = sol.duals.iter().map(|p| -p.clone()).collect();
    let gap = (&z[eps_var] - &eps_exact).abs();

    let coefficients: Vec<f64> = z[..=deg].iter().map(exact::to_f64).collect();
    let epsilon = exact::to_f64(&eps_exact);
    let witness = UnivariatePoly::from_coefficients(n, coefficients.clone())?;
    let primal_feasibility = violation(&witness, t, epsilon, mode);
    Ok(LpCertificate {
        n,
        t,
        d,
        mode,
        epsilon,
        coefficients,
        residuals: LpResiduals {
            primal_feasibility,
            duality_gap: exact::to_f64(&gap),
            table_defect: witness.table_defect(),
        },
        witness,
    })
}

/// Largest violation of the constraint system by `q` at level `epsilon`.
pub fn violation(q: &UnivariatePoly, t: usize, epsilon: f64, mode: ZeroMode) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, &v) in q.values.iter().enumerate() {
        let (lo, hi) = if k == 0 {
            match mode {
                ZeroMode::Strict => (0.0, 0.0),
                ZeroMode::Relaxed => (0.0, epsilon),
            }
        } else if k >= t {
            (1.0 - epsilon, 1.0)
        } else {
            (0.0, 1.0)
        };
        worst = worst.max(lo - v).max(v - hi);
    }
    worst
}
