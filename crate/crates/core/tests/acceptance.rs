//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use querylab::algorithms::{
    clean_wrap, grover_error, grover_network, grover_promise_error, ordered_search_reduction, superposition_check,
    symmetric_profile, CTilde, OrderedInstance, ReductionConfig, ResidualGram,
};
use querylab::bounds::{
    chebyshev_closed, chebyshev_recurrence, extremal_check, ln_chebyshev_above_one, ln_chebyshev_growth_bound,
    queries_for_error, queries_per_halving_limit, relative_gap, CRConstants,
};
use querylab::lab::{
    builtin_network, cmd_amplify, cmd_bounds, cmd_extract_poly, cmd_ordered, cmd_parity_degree, cmd_tradeoff,
    parity_degree, weight_class_averages, Builtin, ExperimentConfig,
};
use querylab::polymethod::{effective_degree, extract_multilinear, min_error_lp, symmetrize, UnivariatePoly};
use querylab::simcore::{acceptance_probability, BitOracle};

fn verdict(id: &str, name: &str, pass: bool, detail: impl AsRef<str>) -> bool {
    println!("{} [{id}] {name}: {}", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    pass
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

/// `sin²((2T+1)·arcsin√(t/N))`, written out independently of the library.
fn grover_closed_form(n: usize, t: usize, iterations: usize) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let theta = (t as f64 / n as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

#[test]
fn c01_grover_oracle_equivalence() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in [2usize, 4, 8, 16] {
        for iterations in 0..=6 {
            let net = grover_network(n, iterations).unwrap();
            for t in 0..=n {
                // solutions at the top and, separately, spread out from index 1
                let top: u64 = ((1u64 << t) - 1) << (n - t);
                let spread: u64 = (0..n).filter(|j| (j * 5 + 1) % n < t).fold(0, |m, j| m | 1 << j);
                for mask in [top, spread] {
                    assert_eq!(mask.count_ones() as usize, t);
                    let p = acceptance_probability(&net, &BitOracle::from_mask(n, mask).unwrap()).unwrap();
                    worst = worst.max((p - grover_closed_form(n, t, iterations)).abs());
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst <= 1e-9 && elapsed < Duration::from_secs(30);
    assert!(verdict(
        "1",
        "Grover acceptance equals sin^2((2T+1) asin sqrt(t/N))",
        pass,
        format!("{cases} cases, max |diff| {worst:e}, {:.2}s", secs(elapsed)),
    ));
}

fn degree_networks() -> Vec<(String, Builtin, usize)> {
    let mut v = vec![
        ("constant".to_string(), Builtin::Constant, 0),
        ("lookup".to_string(), Builtin::Lookup, 0),
    ];
    for it in 0..=2 {
        v.push((format!("grover T={it}"), Builtin::Grover, it));
    }
    v
}

#[test]
fn c02_degree_at_most_twice_queries() {
    let start = Instant::now();
    let n = 4;
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, kind, it) in degree_networks() {
        let net = builtin_network(kind, n, it).unwrap();
        let queries = net.query_count();
        let p = extract_multilinear(&net, n).unwrap();
        let eff = effective_degree(&symmetrize(&p).unwrap(), 1e-7);
        pass &= p.degree() <= 2 * queries && eff <= 2 * queries;
        detail.push(format!("{name}: q={queries} deg={} sym={eff}", p.degree()));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(10);
    assert!(verdict(
        "2",
        "extracted degree <= 2 x queries at N=4",
        pass,
        format!("{}; {:.2}s", detail.join(", "), secs(elapsed)),
    ));
}

#[test]
fn c03_symmetrization_identity() {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in [1usize, 2, 4] {
        for (_, kind, it) in degree_networks() {
            let net = builtin_network(kind, n, it).unwrap();
            let p = extract_multilinear(&net, n).unwrap();
            let q = symmetrize(&p).unwrap();
            // weight-class averages of P, summed here directly
            let mut sums = vec![0.0; n + 1];
            let mut counts = vec![0.0; n + 1];
            for mask in 0..1u64 << n {
                sums[mask.count_ones() as usize] += p.evaluate(mask);
                counts[mask.count_ones() as usize] += 1.0;
            }
            let simulated = weight_class_averages(&net, n).unwrap();
            for k in 0..=n {
                let avg = sums[k] / counts[k];
                worst = worst.max((q.eval(k as f64) - avg).abs());
                worst = worst.max((avg - simulated[k]).abs());
            }
            count += 1;
        }
    }
    assert!(verdict(
        "3",
        "Q(|X|) equals the weight-class average of P",
        worst <= 1e-8,
        format!("{count} polynomials at N in {{1,2,4}}, max defect {worst:e}"),
    ));
}

fn sandwich_grid() -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for n in [8usize, 16] {
        for t in [1, n / 2] {
            for it in 0..=4 {
                v.push((n, t, it));
            }
        }
    }
    v
}

/// Smallest `ε` for `q(x) = Σ_{i=1..d} a_i x^i` with `1 − ε ≤ q(k) ≤ 1` on
/// `k = 1..=4`, by a two-stage grid search (`d ≤ 2`).
fn grid_search_error(d: usize) -> f64 {
    let eval = |a: f64, b: f64| -> f64 {
        let mut lo = f64::INFINITY;
        for k in 1..=4 {
            let x = k as f64;
            let q = a * x + b * x * x;
            if q > 1.0 + 1e-12 {
                return f64::INFINITY;
            }
            lo = lo.min(q);
        }
        1.0 - lo
    };
    match d {
        0 => 1.0,
        1 => {
            let mut best = f64::INFINITY;
            for i in 0..=200_000 {
                best = best.min(eval(i as f64 * 1e-5, 0.0));
            }
            best
        }
        _ => {
            let search = |ac: f64, bc: f64, half: f64, steps: i32| -> (f64, f64, f64) {
                let mut best = (f64::INFINITY, ac, bc);
                let h = half / steps as f64;
                for i in -steps..=steps {
                    for j in -steps..=steps {
                        let (a, b) = (ac + i as f64 * h, bc + j as f64 * h);
                        let e = eval(a, b);
                        if e < best.0 {
                            best = (e, a, b);
                        }
                    }
                }
                best
            };
            let (_, a, b) = search(0.5, 0.0, 1.5, 600);
            let (_, a, b) = search(a, b, 0.01, 200);
            search(a, b, 1e-4, 100).0
        }
    }
}

#[test]
fn c04_lp_sandwich_literal() {
    // min_error_lp(N, t, 2T) <= grover_error(N, t, T) + 1e-7 with T the
    // iteration count, as stated.
    let mut failures = Vec::new();
    for (n, t, it) in sandwich_grid() {
        let lp = min_error_lp(n, t, 2 * it).unwrap().epsilon;
        let g = grover_error(n, t, it);
        if lp > g + 1e-7 {
            failures.push(format!("N={n} t={t} T={it}: lp {lp:.6} > grover {g:.6}"));
        }
    }
    assert!(verdict(
        "4a",
        "min_error_lp(N,t,2T) <= grover_error(N,t,T) + 1e-7 (T = iterations)",
        failures.is_empty(),
        format!("{} of 20 cells violate: {}", failures.len(), failures.join("; ")),
    ));
}

#[test]
fn c04_lp_sandwich_query_accounted() {
    // Grover with T iterations makes T + 1 queries and must succeed on every
    // weight in t..=N, which is what the LP constrains.
    let mut failures = Vec::new();
    for (n, t, it) in sandwich_grid() {
        let lp = min_error_lp(n, t, 2 * (it + 1)).unwrap().epsilon;
        let g = grover_promise_error(n, t, it);
        if lp > g + 1e-7 {
            failures.push(format!("N={n} t={t} T={it}"));
        }
    }
    assert!(verdict(
        "4b",
        "min_error_lp(N,t,2(T+1)) <= worst Grover error over weights >= t + 1e-7",
        failures.is_empty(),
        format!("20 cells, violations: {failures:?}"),
    ));
}

#[test]
fn c04_lp_matches_grid_search() {
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for d in 0..=2 {
        let lp = min_error_lp(4, 1, d).unwrap().epsilon;
        let grid = grid_search_error(d);
        worst = worst.max((lp - grid).abs());
        detail.push(format!("d={d}: lp {lp:.6} grid {grid:.6}"));
    }
    assert!(verdict(
        "4c",
        "LP optimum equals grid search at N=4, t=1",
        worst <= 1e-3,
        detail.join(", "),
    ));
}

#[test]
fn c05_chebyshev_suite() {
    let mut closed_gap: f64 = 0.0;
    let mut xs: Vec<f64> = (0..=6000).map(|i| -3.0 + i as f64 * 1e-3).collect();
    for e in 1..=15 {
        let h = 10f64.powi(-e);
        xs.extend([1.0 - h, 1.0 + h, -1.0 + h, -1.0 - h]);
    }
    for d in 0..=64 {
        for &x in &xs {
            closed_gap = closed_gap.max(relative_gap(chebyshev_recurrence(d, x), chebyshev_closed(d, x)));
        }
    }
    let mut growth_ok = true;
    for d in 1..=64 {
        for i in 0..=80 {
            let mu = 10f64.powf(-4.0 + i as f64 * 0.05);
            growth_ok &= ln_chebyshev_above_one(d, mu) <= ln_chebyshev_growth_bound(d, mu);
        }
    }
    let mut extremal = 0;
    let mut extremal_ok = true;
    for (n, t, it) in sandwich_grid() {
        for d in [2 * it, 2 * (it + 1)] {
            let lp = min_error_lp(n, t, d).unwrap();
            extremal_ok &= extremal_check(&lp.witness, t, d).unwrap().holds;
            extremal += 1;
        }
        let net = grover_network(n, it).unwrap();
        let s = UnivariatePoly::interpolate(&symmetric_profile(&net, n).unwrap()).unwrap();
        extremal_ok &= extremal_check(&s, t, 2 * net.query_count()).unwrap().holds;
        extremal += 1;
    }
    let pass = closed_gap <= 1e-9 && growth_ok && extremal_ok;
    assert!(verdict(
        "5",
        "Chebyshev closed form, growth bound and extremal inequality",
        pass,
        format!(
            "closed/recurrence gap {closed_gap:e}; growth {}; extremal {extremal} polynomials {}",
            if growth_ok { "holds" } else { "violated" },
            if extremal_ok { "hold" } else { "violated" },
        ),
    ));
}

/// Majority of three coherent comparisons on `log N = 4` bits.
fn small_gadget() -> (CTilde, OrderedInstance) {
    let cfg = ReductionConfig {
        repetitions: 3,
        query_budget: 4,
        ..ReductionConfig::default()
    };
    (CTilde::new(16, &cfg).unwrap(), OrderedInstance::new(16, 6).unwrap())
}

#[test]
fn c06_clean_computation() {
    let (gadget, inst) = small_gadget();
    let inner = gadget.inner_network().unwrap();
    let target = |j: u64| inst.target(j);
    let wrap = clean_wrap(&inner, "J", &inst.y, &target).unwrap();
    let eps = wrap.report.inner_error;
    let bound = (2.0 * eps).sqrt();
    let vectors = wrap.residual_vectors(&inst.y, &target).unwrap();
    let norms: Vec<f64> = vectors.iter().map(|v| v.norm()).collect();
    let max = norms.iter().cloned().fold(0.0, f64::max);
    let agree = (max - wrap.report.max_residual).abs() <= 1e-12;
    let queries_ok = wrap.network.query_count() == 2 * inner.query_count();
    let pass = norms.len() == 32 && max <= bound + 1e-9 && agree && queries_ok;
    assert!(verdict(
        "6",
        "wrapped residuals <= sqrt(2 eps) and queries doubled",
        pass,
        format!(
            "{} (j,b) pairs, eps {eps:.6}, max residual {max:.9} vs {bound:.9}, queries {} = 2 x {}",
            norms.len(),
            wrap.network.query_count(),
            inner.query_count()
        ),
    ));
}

#[test]
fn c07_superposition_propagation() {
    let (gadget, inst) = small_gadget();
    let inner = gadget.inner_network().unwrap();
    let target = |j: u64| inst.target(j);
    let wrap = clean_wrap(&inner, "J", &inst.y, &target).unwrap();
    let gram = ResidualGram::from_residuals(&wrap.residual_vectors(&inst.y, &target).unwrap());
    let mut reports = vec![("wrapped majority, N=16".to_string(), superposition_check(&gram, 10_000, 7))];
    for n in [8usize, 16] {
        let g = CTilde::new(n, &ReductionConfig::default()).unwrap();
        let y = OrderedInstance::new(n, (n / 2) as u64).unwrap().y;
        reports.push((format!("default gadget, N={n}"), superposition_check(&g.profile(&y).unwrap().residual_gram(), 10_000, 7)));
    }
    let limit = std::f64::consts::SQRT_2 + 1e-6;
    let pass = reports.iter().all(|(_, r)| r.trials >= 10_000 && r.holds && r.max_ratio <= limit);
    let detail: Vec<String> = reports
        .iter()
        .map(|(name, r)| format!("{name}: max ratio {:.6} (spectral {:.6})", r.max_ratio, r.worst_ratio))
        .collect();
    assert!(verdict("7", "superposition error <= sqrt2 eps over 10^4 states", pass, detail.join("; ")));
}

#[test]
fn c08_ordered_search_reduction() {
    let start = Instant::now();
    let cfg = ReductionConfig::default();
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [8usize, 16] {
        let rep = ordered_search_reduction(n, &cfg).unwrap();
        let bound = std::f64::consts::SQRT_2 * cfg.eta;
        pass &= rep.instances.len() == n
            && rep.min_recovery >= 2.0 / 3.0
            && rep.max_deviation <= bound
            && rep.gadget_queries > 0;
        detail.push(format!(
            "N={n}: min recovery {:.5}, max deviation {:.5} <= {bound:.5}, {} Y-queries per gadget",
            rep.min_recovery, rep.max_deviation, rep.gadget_queries
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    assert!(verdict(
        "8",
        "ordered search with approximate comparisons",
        pass,
        format!("{}; {:.2}s", detail.join("; "), secs(elapsed)),
    ));
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let num: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

#[test]
fn c09_amplification() {
    let mut slopes = Vec::new();
    for n in [8usize, 16, 32] {
        let pts: Vec<(f64, f64)> = (1..=n / 4)
            .map(|it| (it as f64, -min_error_lp(n, n / 2, 2 * it).unwrap().epsilon.log2()))
            .collect();
        slopes.push(slope(&pts));
    }
    let finite = slopes.iter().all(|s| s.is_finite() && *s > 0.0);
    let lo = slopes.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = slopes.iter().cloned().fold(0.0, f64::max);
    let spread = (hi - lo) / lo;

    let report = cmd_amplify(&ExperimentConfig::default()).unwrap();
    let classical = report.rows.iter().all(|r| r.classical_error == 1.0 / (1u64 << r.k) as f64);
    let k5 = report.rows.iter().find(|r| r.k == 5).map(|r| r.classical_error);

    let cr = CRConstants::default();
    let pts: Vec<(f64, f64)> = [500u64, 1000, 2000, 4000]
        .iter()
        .map(|&k| (k as f64, queries_for_error(k, 1_000_000, cr).unwrap() as f64))
        .collect();
    let per_halving = slope(&pts);
    let vs_paper = (per_halving - 0.06).abs() / 0.06;
    let vs_limit = (per_halving - queries_per_halving_limit()).abs() / queries_per_halving_limit();

    let pass = finite && spread <= 0.25 && classical && k5 == Some(1.0 / 32.0) && vs_paper <= 0.05 && vs_limit <= 0.05;
    assert!(verdict(
        "9",
        "linear error reduction: LP slopes, classical column, queries per halving",
        pass,
        format!(
            "slopes {slopes:.4?} (spread {:.1}%), classical k=5 {k5:?}, queries per halving {per_halving:.5} \
             ({:.1}% from 0.06, {:.1}% from {:.5})",
            100.0 * spread,
            100.0 * vs_paper,
            100.0 * vs_limit,
            queries_per_halving_limit()
        ),
    ));
}

#[test]
fn c10_parity_degree() {
    let degrees: Vec<(usize, usize)> = [1usize, 2, 4, 8, 16, 32].iter().map(|&n| (n, parity_degree(n).unwrap())).collect();
    let pass = degrees.iter().all(|&(n, d)| n == d);
    assert!(verdict("10", "k mod 2 interpolant has degree N", pass, format!("{degrees:?}")));
}

#[test]
fn c11_determinism() {
    let cfg = ExperimentConfig::default();
    let runs: Vec<(&str, Box<dyn Fn() -> String>)> = vec![
        ("tradeoff", Box::new(|| cmd_tradeoff(&cfg).unwrap().to_json().unwrap())),
        ("ordered", Box::new(|| cmd_ordered(&cfg).unwrap().to_json().unwrap())),
        ("parity-degree", Box::new(|| cmd_parity_degree(&cfg).unwrap().to_json().unwrap())),
        ("amplify", Box::new(|| cmd_amplify(&cfg).unwrap().to_json().unwrap())),
        (
            "extract-poly",
            Box::new(|| cmd_extract_poly(&cfg, Builtin::Grover, 4, 1).unwrap().to_json().unwrap()),
        ),
        ("bounds", Box::new(|| cmd_bounds(&cfg, 1024, 4, 40).unwrap().to_json().unwrap())),
    ];
    let mut differing = Vec::new();
    for (name, run) in &runs {
        if run() != run() {
            differing.push(*name);
        }
    }
    assert!(verdict(
        "11",
        "identical JSON on re-run",
        differing.is_empty(),
        format!("{} subcommands, differing: {differing:?}", runs.len()),
    ));
}
