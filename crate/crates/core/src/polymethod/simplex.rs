//! Dense two-phase simplex in exact rational arithmetic.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Bland's rule keeps
//! degenerate problems from cycling.

use num_traits::{One, Signed, Zero};

use super::exact::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub x: Vec<Q>,
    pub objective: Q,
    /// Simplex multipliers `π = c_B B⁻¹`; optimal for the dual `max π·b, πA ≤ c`.
    pub duals: Vec<Q>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn reduced_costs(&self, cost: &[Q]) -> Vec<Q> {
        let mut red: Vec<Q> = cost.to_vec();
        for (r, &bc) in self.basis.iter().enumerate() {
            if cost[bc].is_zero() {
                continue;
            }
            for (c, v) in red.iter_mut().enumerate() {
                if !self.rows[r][c].is_zero() {
                    *v -= &cost[bc] * &self.rows[r][c];
                }
            }
        }
        red
    }

    /// Runs Bland's rule over columns `0..allowed`; false when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> bool {
        loop {
            let red = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&c| red[c].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Solves `min c·x, A x = b, x ≥ 0`.
pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let sign = |v: &Q| if flip { -v.clone() } else { v.clone() };
        let mut r: Vec<Q> = row.iter().map(sign).collect();
        r.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        r.push(sign(&b[i]));
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
        pivots: 0,
    };

    let phase1: Vec<Q> = (0..width).map(|k| if k < n { Q::zero() } else { Q::one() }).collect();
    t.optimize(&phase1, width);
    let infeasibility: Q = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bc)| bc >= n)
        .map(|(r, _)| t.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // that keep one are redundant and stay pinned at zero.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(c) = (0..n).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, c);
            }
        }
    }

    let mut cost: Vec<Q> = c.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &bc) in t.basis.iter().enumerate() {
        if bc < n {
            x[bc] = t.rhs(r).clone();
        }
    }
    let objective: Q = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    // Column n + i of the tableau is B⁻¹ e_i (up to the sign flip of row i).
    let duals = (0..m)
        .map(|i| {
            let s: Q = t
                .basis
                .iter()
                .enumerate()
                .map(|(r, &bc)| &cost[bc] * &t.rows[r][n + i])
                .sum();
            if b[i].is_negative() {
                -s
            } else {
                s
            }
        })
        .collect();
    LpOutcome::Optimal(Solution {
        x,
        objective,
        duals,
        pivots: t.pivots,
    })
}
