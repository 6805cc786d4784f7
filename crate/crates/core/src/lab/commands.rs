use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::config::{ExperimentConfig, MAX_DEGREE_N, MAX_SWEEP_N};
use super::networks::{builtin_network, Builtin};
use super::report::{Invariant, Report, Row};
use crate::algorithms::{
    grover_error, grover_network, grover_promise_error, ordered_search_reduction, superposition_check,
    symmetric_profile, CTilde, ComparatorKind, OrderedInstance, ReductionConfig,
};
use crate::bounds::{
    amplification_error_bound, error_lower_bound, ln_amplification_error_bound, queries_for_error,
    queries_per_halving_limit, search_exponent, simplification_gap, single_solution_exponent, BoundDerivation,
    CRConstants,
};
use crate::error::{domain, Result};
use crate::polymethod::{
    effective_degree, extract_multilinear, min_error_lp, min_error_lp_with, symmetrize, UnivariatePoly, LP_MAX_N,
    MAX_EXTRACT_VARS,
};
use crate::simcore::{acceptance_probability, BitOracle, QueryNetwork};
use crate::tol;

/// Slack of the sandwich `grover ≥ lp − 1e−7`.
pub const SANDWICH_SLACK: f64 = 1e-7;

fn cr(cfg: &ExperimentConfig) -> Result<CRConstants> {
    CRConstants::new(cfg.a, cfg.b)
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(domain(format!("N = {n} is not a power of two")));
    }
    if n > max {
        return Err(crate::LabError::Limit {
            what: "N",
            value: n as u64,
            max: max as u64,
        });
    }
    Ok(())
}

/// Average acceptance over all `2^N` inputs of each Hamming weight, by direct simulation.
pub fn weight_class_averages(net: &QueryNetwork, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > MAX_EXTRACT_VARS {
        return Err(domain(format!("weight classes over {n} bits")));
    }
    let values = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| acceptance_probability(net, &BitOracle::from_mask(n, mask)?))
        .collect::<Result<Vec<f64>>>()?;
    let mut sums = vec![0.0; n + 1];
    let mut counts = vec![0usize; n + 1];
    for (mask, v) in values.iter().enumerate() {
        let w = mask.count_ones() as usize;
        sums[w] += v;
        counts[w] += 1;
    }
    Ok(sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect())
}

/// Effective degree of the symmetrized acceptance polynomial of Grover search.
pub fn grover_symmetric_degree(n: usize, iterations: usize) -> Result<usize> {
    let net = grover_network(n, iterations)?;
    let q = UnivariatePoly::interpolate(&symmetric_profile(&net, n)?)?;
    Ok(effective_degree(&q, tol::EFFECTIVE_DEGREE))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TradeoffRow {
    pub n: usize,
    pub t: usize,
    /// Grover iterations `T`.
    pub iterations: usize,
    /// Oracle placements, `T + 1`.
    pub queries: usize,
    /// `2 · queries`.
    pub d: usize,
    /// Error at weight exactly `t`.
    pub grover_error: Option<f64>,
    /// Worst error over weights `t..=N`.
    pub grover_promise_error: Option<f64>,
    /// LP optimum at degree `d`.
    pub lp_epsilon: Option<f64>,
    /// LP optimum at degree `2T`.
    pub lp_epsilon_2t: Option<f64>,
    pub lp_primal_feasibility: Option<f64>,
    pub lp_duality_gap: Option<f64>,
    pub bound_epsilon: Option<f64>,
    pub bound_ln_epsilon: Option<f64>,
    pub bound_log2_epsilon: Option<f64>,
    pub effective_degree: Option<usize>,
    /// `grover_promise_error ≥ lp_epsilon − 1e−7`.
    pub sandwich: Option<bool>,
    pub status: String,
}

impl Row for TradeoffRow {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "t",
        "iterations",
        "queries",
        "d",
        "grover_error",
        "grover_promise_error",
        "lp_epsilon",
        "lp_epsilon_2t",
        "lp_primal_feasibility",
        "lp_duality_gap",
        "bound_epsilon",
        "bound_ln_epsilon",
        "bound_log2_epsilon",
        "effective_degree",
        "sandwich",
        "status",
    ];
}

fn tradeoff_row(cfg: &ExperimentConfig, n: usize, t: usize, iterations: usize) -> TradeoffRow {
    let queries = iterations + 1;
    let mut row = TradeoffRow {
        n,
        t,
        iterations,
        queries,
        d: 2 * queries,
        grover_error: None,
        grover_promise_error: None,
        lp_epsilon: None,
        lp_epsilon_2t: None,
        lp_primal_feasibility: None,
        lp_duality_gap: None,
        bound_epsilon: None,
        bound_ln_epsilon: None,
        bound_log2_epsilon: None,
        effective_degree: None,
        sandwich: None,
        status: "ok".into(),
    };
    let fill = |row: &mut TradeoffRow| -> Result<()> {
        check_n(n, MAX_SWEEP_N)?;
        if t == 0 || t > n {
            return Err(domain(format!("need 1 ≤ t ≤ N, got t={t}")));
        }
        row.grover_error = Some(grover_error(n, t, iterations));
        row.grover_promise_error = Some(grover_promise_error(n, t, iterations));
        if n <= LP_MAX_N {
            let lp = min_error_lp_with(n, t, row.d, cfg.mode)?;
            row.lp_epsilon = Some(lp.epsilon);
            row.lp_primal_feasibility = Some(lp.residuals.primal_feasibility);
            row.lp_duality_gap = Some(lp.residuals.duality_gap);
            row.lp_epsilon_2t = Some(min_error_lp_with(n, t, 2 * iterations, cfg.mode)?.epsilon);
            row.sandwich = Some(grover_promise_error(n, t, iterations) >= lp.epsilon - SANDWICH_SLACK);
        }
        if t < n {
            let b = error_lower_bound(n as u64, t as u64, row.d as u64, cr(cfg)?)?;
            row.bound_epsilon = Some(b.epsilon_bound);
            row.bound_ln_epsilon = Some(b.ln_epsilon_bound);
            row.bound_log2_epsilon = Some(b.log2_epsilon_bound);
        }
        if n <= MAX_DEGREE_N {
            row.effective_degree = Some(grover_symmetric_degree(n, iterations)?);
        }
        Ok(())
    };
    if let Err(e) = fill(&mut row) {
        row.status = e.to_string();
    }
    row
}

/// One row per `(N, t, T)` cell of the grid.
pub fn cmd_tradeoff(cfg: &ExperimentConfig) -> Result<Report<TradeoffRow>> {
    cfg.validate()?;
    let ns = cfg.grid_or(&cfg.n_grid, &[16]);
    let ts = cfg.grid_or(&cfg.t_grid, &[1, 2, 4, 8]);
    let iters = cfg.grid_or(&cfg.iter_grid, &[0, 1, 2, 3, 4]);
    let mut cells = Vec::new();
    for &n in &ns {
        for &t in &ts {
            cells.extend(iters.iter().map(|&it| (n, t, it)));
        }
    }
    let rows: Vec<TradeoffRow> = cells.par_iter().map(|&(n, t, it)| tradeoff_row(cfg, n, t, it)).collect();
    let broken: Vec<String> = rows
        .iter()
        .filter(|r| r.sandwich == Some(false))
        .map(|r| format!("N={} t={} T={}", r.n, r.t, r.iterations))
        .collect();
    let invariants = vec![Invariant::new(
        "sandwich: grover_promise_error >= lp_epsilon - 1e-7",
        broken.is_empty(),
        broken.join("; "),
    )];
    let summary = json!({
        "cells": rows.len(),
        "rows_with_errors": rows.iter().filter(|r| r.status != "ok").count(),
    });
    Ok(Report::new("tradeoff", cfg, rows, summary, invariants))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderedRow {
    pub n: usize,
    pub i: u64,
    pub recovery: f64,
    pub most_likely: u64,
    pub deviation: f64,
    pub hybrid_bound: f64,
    pub max_residual: f64,
    pub residual_target: f64,
    pub gadget_verified: bool,
    pub gadget_queries: usize,
    pub total_queries: usize,
    pub parity: bool,
    pub parity_inferred: bool,
    pub parity_success: f64,
    pub ok: bool,
}

impl Row for OrderedRow {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "i",
        "recovery",
        "most_likely",
        "deviation",
        "hybrid_bound",
        "max_residual",
        "residual_target",
        "gadget_verified",
        "gadget_queries",
        "total_queries",
        "parity",
        "parity_inferred",
        "parity_success",
        "ok",
    ];
}

pub fn reduction_config(cfg: &ExperimentConfig) -> ReductionConfig {
    ReductionConfig {
        eta: cfg.eta,
        repetitions: cfg.repetitions,
        query_budget: cfg.query_budget,
        // η = 0 can only be met by the error-free comparison
        comparator: if cfg.eta == 0.0 { ComparatorKind::Exact } else { cfg.comparator },
        ..ReductionConfig::default()
    }
}

/// Ordered search with approximate comparisons, for every `i` at each `N`.
pub fn cmd_ordered(cfg: &ExperimentConfig) -> Result<Report<OrderedRow>> {
    cfg.validate()?;
    let rcfg = reduction_config(cfg);
    let mut rows = Vec::new();
    let mut invariants = Vec::new();
    let mut per_n = Vec::new();
    for n in cfg.grid_or(&cfg.n_grid, &[8, 16]) {
        let name = |s: &str| format!("N={n}: {s}");
        let run = || -> Result<_> {
            check_n(n, 64)?;
            let rep = ordered_search_reduction(n, &rcfg)?;
            let gadget = CTilde::new(n, &rcfg)?;
            let probe = OrderedInstance::new(n, (n / 2) as u64)?;
            let gram = gadget.profile(&probe.y)?.residual_gram();
            let sup = superposition_check(&gram, cfg.trials, cfg.seed);
            Ok((rep, sup))
        };
        let (rep, sup) = match run() {
            Ok(v) => v,
            Err(e) => {
                invariants.push(Invariant::new(&name("run"), false, e.to_string()));
                continue;
            }
        };
        let low: Vec<String> = rep
            .instances
            .iter()
            .filter(|r| r.recovery < rcfg.success_threshold)
            .map(|r| format!("i={} recovery={}", r.i, r.recovery))
            .collect();
        invariants.push(Invariant::new(&name("recovery >= threshold"), low.is_empty(), low.join("; ")));
        invariants.push(Invariant::new(
            &name("deviation <= sqrt2*eta"),
            rep.max_deviation <= rep.deviation_bound + 1e-9,
            format!("max deviation {} vs {}", rep.max_deviation, rep.deviation_bound),
        ));
        invariants.push(Invariant::new(
            &name("deviation <= sum of per-gate deviations"),
            rep.instances.iter().all(|r| r.deviation <= r.hybrid_bound + 1e-9),
            "",
        ));
        let unverified = rep.instances.iter().filter(|r| !r.gadget_verified).count();
        invariants.push(Invariant::new(
            &name("gadget residual <= eta/log N"),
            unverified == 0,
            format!("{unverified} instances above target {}", rep.residual_target),
        ));
        invariants.push(Invariant::new(
            &name("parity of recovered i matches Y"),
            rep.instances
                .iter()
                .filter(|r| r.most_likely == r.i)
                .all(|r| r.parity_inferred == r.parity),
            "",
        ));
        invariants.push(Invariant::new(
            &name("superposition residual <= sqrt2*eps"),
            sup.holds,
            format!("max ratio {}", sup.max_ratio),
        ));
        per_n.push(json!({
            "n": n,
            "comparator": rcfg.comparator,
            "schedule": rep.schedule,
            "copy_queries": rep.copy_queries,
            "gadget_queries": rep.gadget_queries,
            "list_queries": rep.list_queries,
            "total_queries": rep.total_queries,
            "residual_target": rep.residual_target,
            "deviation_bound": rep.deviation_bound,
            "min_recovery": rep.min_recovery,
            "max_deviation": rep.max_deviation,
            "superposition": sup,
        }));
        rows.extend(rep.instances.iter().map(|r| OrderedRow {
            n,
            i: r.i,
            recovery: r.recovery,
            most_likely: r.most_likely,
            deviation: r.deviation,
            hybrid_bound: r.hybrid_bound,
            max_residual: r.max_residual,
            residual_target: rep.residual_target,
            gadget_verified: r.gadget_verified,
            gadget_queries: rep.gadget_queries,
            total_queries: rep.total_queries,
            parity: r.parity,
            parity_inferred: r.parity_inferred,
            parity_success: r.parity_success,
            ok: r.ok,
        }));
    }
    Ok(Report::new("ordered", cfg, rows, json!({ "lists": per_n }), invariants))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityRow {
    pub n: usize,
    pub effective_degree: Option<usize>,
    pub holds: bool,
    pub status: String,
}

impl Row for ParityRow {
    const COLUMNS: &'static [&'static str] = &["n", "effective_degree", "holds", "status"];
}

/// Effective degree of the interpolant of `k mod 2` on `0..=N`.
pub fn parity_degree(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_DEGREE_N {
        return Err(domain(format!("parity interpolation needs 1 ≤ N ≤ {MAX_DEGREE_N}")));
    }
    let values: Vec<f64> = (0..=n).map(|k| (k % 2) as f64).collect();
    Ok(effective_degree(&UnivariatePoly::interpolate(&values)?, tol::EFFECTIVE_DEGREE))
}

pub fn cmd_parity_degree(cfg: &ExperimentConfig) -> Result<Report<ParityRow>> {
    let rows: Vec<ParityRow> = cfg
        .grid_or(&cfg.n_grid, &[1, 2, 4, 8, 16, 32])
        .into_iter()
        .map(|n| match parity_degree(n) {
            Ok(d) => ParityRow {
                n,
                effective_degree: Some(d),
                holds: d == n,
                status: "ok".into(),
            },
            Err(e) => ParityRow {
                n,
                effective_degree: None,
                holds: false,
                status: e.to_string(),
            },
        })
        .collect();
    let bad: Vec<String> = rows.iter().filter(|r| !r.holds).map(|r| format!("N={}", r.n)).collect();
    let inv = vec![Invariant::new("effective degree equals N", bad.is_empty(), bad.join("; "))];
    Ok(Report::new("parity-degree", cfg, rows, json!({}), inv))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplifyRow {
    pub n: usize,
    pub t: usize,
    /// Queries `T` (or repetitions `k` for the classical column).
    pub k: usize,
    pub classical_error: f64,
    /// `min_error_lp(N, N/2, 2T)`.
    pub lp_epsilon: Option<f64>,
    pub lp_log2_inverse: Option<f64>,
    /// Grover with `T` iterations at `t = N/2`.
    pub grover_error: f64,
    pub amplification_bound: Option<f64>,
    pub amplification_ln_bound: Option<f64>,
    pub status: String,
}

impl Row for AmplifyRow {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "t",
        "k",
        "classical_error",
        "lp_epsilon",
        "lp_log2_inverse",
        "grover_error",
        "amplification_bound",
        "amplification_ln_bound",
        "status",
    ];
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// List length used for the queries-per-halving fit; large enough that the
/// linear term dominates.
pub const HALVING_FIT_N: u64 = 1_000_000;
pub const HALVING_FIT_K: [u64; 4] = [500, 1000, 2000, 4000];

pub fn cmd_amplify(cfg: &ExperimentConfig) -> Result<Report<AmplifyRow>> {
    cfg.validate()?;
    let c = cr(cfg)?;
    let ns = cfg.grid_or(&cfg.n_grid, &[8, 16, 32]);
    let cells: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| {
            let ks = if cfg.iter_grid.is_empty() {
                (1..=n / 4).collect()
            } else {
                cfg.iter_grid.clone()
            };
            ks.into_iter().map(move |k| (n, k))
        })
        .collect();
    let rows: Vec<AmplifyRow> = cells
        .par_iter()
        .map(|&(n, k)| {
            let classical_error = (0..k).fold(1.0, |e, _| e * 0.5);
            let mut row = AmplifyRow {
                n,
                t: n / 2,
                k,
                classical_error,
                lp_epsilon: None,
                lp_log2_inverse: None,
                grover_error: f64::NAN,
                amplification_bound: None,
                amplification_ln_bound: None,
                status: "ok".into(),
            };
            let fill = |row: &mut AmplifyRow| -> Result<()> {
                check_n(n, MAX_SWEEP_N)?;
                if n < 2 {
                    return Err(domain("amplification needs N ≥ 2"));
                }
                row.grover_error = grover_error(n, n / 2, k);
                row.amplification_bound = Some(amplification_error_bound(n as u64, k as u64, c)?);
                row.amplification_ln_bound = Some(ln_amplification_error_bound(n as u64, k as u64, c)?);
                if n <= LP_MAX_N {
                    let eps = min_error_lp(n, n / 2, 2 * k)?.epsilon;
                    row.lp_epsilon = Some(eps);
                    row.lp_log2_inverse = (eps > 0.0).then(|| -eps.log2());
                }
                Ok(())
            };
            if let Err(e) = fill(&mut row) {
                row.status = e.to_string();
            }
            row
        })
        .collect();

    let mut slopes = Vec::new();
    for &n in &ns {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.n == n)
            .filter_map(|r| r.lp_log2_inverse.map(|y| (r.k as f64, y)))
            .collect();
        slopes.push((n, fit_slope(&pts)));
    }
    let finite: Vec<f64> = slopes.iter().filter_map(|s| s.1).filter(|s| s.is_finite()).collect();
    let spread = if finite.is_empty() {
        f64::NAN
    } else {
        let lo = finite.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / lo
    };
    let halving: Vec<(u64, u64)> = HALVING_FIT_K
        .iter()
        .map(|&k| Ok((k, queries_for_error(k, HALVING_FIT_N, c)?)))
        .collect::<Result<_>>()?;
    let halving_slope = fit_slope(&halving.iter().map(|&(k, q)| (k as f64, q as f64)).collect::<Vec<_>>())
        .unwrap_or(f64::NAN);
    let limit = queries_per_halving_limit();
    let halving_gap = (halving_slope - limit).abs() / limit;

    let classical_exact = rows.iter().all(|r| r.classical_error == 2f64.powi(-(r.k as i32)));
    let mut invariants = vec![
        Invariant::new("classical column equals 2^-k", classical_exact, ""),
        Invariant::new(
            "lp slopes finite",
            finite.len() == slopes.len() && !finite.is_empty(),
            format!("{slopes:?}"),
        ),
    ];
    if finite.len() > 1 {
        invariants.push(Invariant::new(
            "lp slopes agree within 25%",
            spread <= 0.25,
            format!("relative spread {spread}"),
        ));
    }
    if cfg.a == 1.0 {
        invariants.push(Invariant::new(
            "queries per halving within 5% of ln2/(8 sqrt2)",
            halving_gap <= 0.05,
            format!("fitted {halving_slope} vs {limit}"),
        ));
    }
    let summary = json!({
        "lp_slopes": slopes.iter().map(|(n, s)| json!({"n": n, "slope": s})).collect::<Vec<_>>(),
        "lp_slope_spread": spread,
        "queries_for_error": {
            "n": HALVING_FIT_N,
            "points": halving.iter().map(|(k, q)| json!({"k": k, "queries": q})).collect::<Vec<_>>(),
            "slope": halving_slope,
            "limit": limit,
        },
    });
    Ok(Report::new("amplify", cfg, rows, summary, invariants))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyRow {
    /// Hamming weight.
    pub k: usize,
    /// Symmetrized polynomial at `k`.
    pub q: f64,
    /// Average acceptance over inputs of weight `k`, simulated directly.
    pub weight_average: f64,
    pub defect: f64,
}

impl Row for PolyRow {
    const COLUMNS: &'static [&'static str] = &["k", "q", "weight_average", "defect"];
}

/// Acceptance polynomial of a built-in network, multilinear and symmetrized.
pub fn cmd_extract_poly(cfg: &ExperimentConfig, kind: Builtin, n: usize, iterations: usize) -> Result<Report<PolyRow>> {
    let net = builtin_network(kind, n, iterations)?;
    let p = extract_multilinear(&net, n)?;
    let q = symmetrize(&p)?;
    let averages = weight_class_averages(&net, n)?;
    let rows: Vec<PolyRow> = averages
        .iter()
        .enumerate()
        .map(|(k, &avg)| {
            let v = q.eval(k as f64);
            PolyRow {
                k,
                q: v,
                weight_average: avg,
                defect: (v - avg).abs(),
            }
        })
        .collect();
    let bound = 2 * net.query_count();
    let ml_degree = p.degree();
    let eff = effective_degree(&q, tol::EFFECTIVE_DEGREE);
    let worst = rows.iter().map(|r| r.defect).fold(0.0, f64::max);
    let invariants = vec![
        Invariant::new("multilinear degree <= 2 x queries", ml_degree <= bound, format!("{ml_degree} vs {bound}")),
        Invariant::new("symmetrized degree <= 2 x queries", eff <= bound, format!("{eff} vs {bound}")),
        Invariant::new(
            "symmetrized polynomial equals weight-class averages",
            worst <= tol::POLY_TABLE,
            format!("max defect {worst:e}"),
        ),
    ];
    let summary = json!({
        "network": kind,
        "n": n,
        "iterations": iterations,
        "queries": net.query_count(),
        "multilinear_degree": ml_degree,
        "effective_degree": eff,
        "multilinear": p,
        "univariate": q,
    });
    Ok(Report::new("extract-poly", cfg, rows, summary, invariants))
}

impl Row for BoundDerivation {
    const COLUMNS: &'static [&'static str] = &[
        "n",
        "t",
        "d",
        "a",
        "b",
        "delta",
        "mu",
        "exponent",
        "exponent_from_growth",
        "epsilon_bound",
        "ln_epsilon_bound",
        "log2_epsilon_bound",
        "ln_epsilon_chebyshev",
    ];
}

/// The explicit lower bound at `(N, t, d)` with its intermediate quantities.
pub fn cmd_bounds(cfg: &ExperimentConfig, n: u64, t: u64, d: u64) -> Result<Report<BoundDerivation>> {
    cfg.validate()?;
    let c = cr(cfg)?;
    let b = error_lower_bound(n, t, d, c)?;
    let queries = d / 2;
    let invariants = vec![
        Invariant::new(
            "exponent equals its Chebyshev-growth assembly",
            (b.exponent - b.exponent_from_growth).abs() <= 1e-9 * b.exponent.abs().max(1.0),
            format!("{} vs {}", b.exponent, b.exponent_from_growth),
        ),
        Invariant::new(
            "Chebyshev form is at least as strong",
            b.ln_epsilon_chebyshev >= b.ln_epsilon_bound - 1e-12,
            "",
        ),
    ];
    let summary = json!({
        "queries": queries,
        "single_solution_exponent": single_solution_exponent(n, d, c),
        "search_exponent": search_exponent(n, queries, c),
        "simplification_gap": simplification_gap(n, queries, c),
    });
    Ok(Report::new("bounds", cfg, vec![b], summary, invariants))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ExperimentConfig {
        ExperimentConfig::default()
    }

    #[test]
    fn tradeoff_single_cell() {
        let c = ExperimentConfig {
            n_grid: vec![4],
            t_grid: vec![1],
            iter_grid: vec![1],
            ..cfg()
        };
        let rep = cmd_tradeoff(&c).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].grover_error, Some(0.0));
        assert!(rep.ok);
    }

    #[test]
    fn tradeoff_reports_bad_cells_and_continues() {
        let c = ExperimentConfig {
            n_grid: vec![6, 8],
            t_grid: vec![1, 9],
            iter_grid: vec![0],
            ..cfg()
        };
        let rep = cmd_tradeoff(&c).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert_eq!(rep.rows.iter().filter(|r| r.status == "ok").count(), 1);
        assert!(rep.ok);
    }

    #[test]
    fn tradeoff_default_grid() {
        let rep = cmd_tradeoff(&cfg()).unwrap();
        assert_eq!(rep.rows.len(), 20);
        assert!(rep.rows.iter().all(|r| r.sandwich == Some(true)));
    }

    #[test]
    fn empty_grid_gives_header_only() {
        let c = ExperimentConfig {
            n_grid: vec![8],
            t_grid: vec![1],
            ..cfg()
        };
        let mut rep = cmd_tradeoff(&c).unwrap();
        rep.rows.clear();
        assert_eq!(rep.to_csv().unwrap().lines().count(), 1);
    }

    #[test]
    fn parity_degrees() {
        assert_eq!(parity_degree(1).unwrap(), 1);
        assert_eq!(parity_degree(2).unwrap(), 2);
        assert_eq!(parity_degree(8).unwrap(), 8);
        assert!(cmd_parity_degree(&cfg()).unwrap().ok);
    }

    #[test]
    fn slope_fit() {
        assert_eq!(fit_slope(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]), Some(2.0));
        assert_eq!(fit_slope(&[(1.0, 1.0)]), None);
    }

    #[test]
    fn extract_poly_lookup() {
        let rep = cmd_extract_poly(&cfg(), Builtin::Lookup, 4, 0).unwrap();
        assert!(rep.ok);
        for r in &rep.rows {
            assert!((r.weight_average - r.k as f64 / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds_command() {
        let rep = cmd_bounds(&cfg(), 1024, 1, 20).unwrap();
        assert!(rep.ok);
        assert!(cmd_bounds(&cfg(), 8, 8, 2).is_err());
    }

    #[test]
    fn eta_zero_selects_exact_comparator() {
        let c = ExperimentConfig { eta: 0.0, ..cfg() };
        assert_eq!(reduction_config(&c).comparator, ComparatorKind::Exact);
    }
}
