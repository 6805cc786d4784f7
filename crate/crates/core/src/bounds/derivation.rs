use serde::{Deserialize, Serialize};

use super::chebyshev::{ln_chebyshev_above_one, ln_chebyshev_growth_bound};
use crate::error::{domain, Result};

/// Constants `a, b` of the Coppersmith–Rivlin envelope `|p(x)| < a·e^{b/δ}`.
///
/// Only their existence is known. The defaults `a = b = 1` are placeholders
/// and not derived values, so reports carry every bound as an exponent too.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CRConstants {
    pub a: f64,
    pub b: f64,
}

impl Default for CRConstants {
    fn default() -> Self {
        CRConstants { a: 1.0, b: 1.0 }
    }
}

impl CRConstants {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(domain(format!("constants must be positive, got a={a}, b={b}")));
        }
        Ok(CRConstants { a, b })
    }
}

/// Error lower bound for `N` items, promise weight `t` and degree `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundDerivation {
    pub n: u64,
    pub t: u64,
    pub d: u64,
    pub a: f64,
    pub b: f64,
    /// `(N − t)/d²`.
    pub delta: f64,
    /// `2t/(N − t)`.
    pub mu: f64,
    /// `b·d²/(N−t) + 4d·√(tN)/(N−t)`.
    pub exponent: f64,
    /// The same exponent assembled as `b/δ + 2d√(2μ+μ²)`.
    pub exponent_from_growth: f64,
    /// `e^{−exponent}/a`; underflows to 0 for huge exponents, see `ln_epsilon_bound`.
    pub epsilon_bound: f64,
    pub ln_epsilon_bound: f64,
    pub log2_epsilon_bound: f64,
    /// `−ln(a·e^{b/δ}·T_d(1+μ))`: the bound before `T_d` is replaced by its growth bound.
    pub ln_epsilon_chebyshev: f64,
}

/// Requires `1 ≤ t < N` and `d ≥ 1`.
pub fn error_lower_bound(n: u64, t: u64, d: u64, cr: CRConstants) -> Result<BoundDerivation> {
    if t == 0 || t >= n {
        return Err(domain(format!("need 1 ≤ t < N, got N={n}, t={t}")));
    }
    if d == 0 {
        return Err(domain("need d ≥ 1"));
    }
    let (nf, tf, df) = (n as f64, t as f64, d as f64);
    let gap = nf - tf;
    let delta = gap / (df * df);
    let mu = 2.0 * tf / gap;
    let exponent = cr.b * df * df / gap + 4.0 * df * (tf * nf).sqrt() / gap;
    let exponent_from_growth = cr.b / delta + ln_chebyshev_growth_bound(d as usize, mu);
    let ln_eps = -exponent - cr.a.ln();
    let ln_eps_cheb = -(cr.a.ln() + cr.b / delta + ln_chebyshev_above_one(d as usize, mu));
    Ok(BoundDerivation {
        n,
        t,
        d,
        a: cr.a,
        b: cr.b,
        delta,
        mu,
        exponent,
        exponent_from_growth,
        epsilon_bound: ln_eps.exp(),
        ln_epsilon_bound: ln_eps,
        log2_epsilon_bound: ln_eps / std::f64::consts::LN_2,
        ln_epsilon_chebyshev: ln_eps_cheb,
    })
}

/// Exponent of the single-solution bound, `b·d²/(N−1) + 4d√N/(N−1)`.
pub fn single_solution_exponent(n: u64, d: u64, cr: CRConstants) -> f64 {
    let (nf, df) = (n as f64, d as f64);
    cr.b * df * df / (nf - 1.0) + 4.0 * df * nf.sqrt() / (nf - 1.0)
}

/// `4bT²/N + 8T/√N`.
pub fn search_exponent(n: u64, queries: u64, cr: CRConstants) -> f64 {
    let (nf, tf) = (n as f64, queries as f64);
    4.0 * cr.b * tf * tf / nf + 8.0 * tf / nf.sqrt()
}

/// `(1/a)·e^{−4bT²/N − 8T/√N}` for a `T`-query search of `N` items, `T < N`.
pub fn search_error_bound(n: u64, queries: u64, cr: CRConstants) -> Result<f64> {
    Ok(ln_search_error_bound(n, queries, cr)?.exp())
}

pub fn ln_search_error_bound(n: u64, queries: u64, cr: CRConstants) -> Result<f64> {
    if queries >= n {
        return Err(domain(format!(
            "T = {queries} ≥ N = {n}: zero error is achievable with N queries"
        )));
    }
    Ok(-search_exponent(n, queries, cr) - cr.a.ln())
}

/// Exact exponent at `d = 2T` minus the simplified exponent:
/// `4bT²/(N(N−1)) + 8T/((N−1)√N)`, which is never negative.
pub fn simplification_gap(n: u64, queries: u64, cr: CRConstants) -> f64 {
    let (nf, tf) = (n as f64, queries as f64);
    4.0 * cr.b * tf * tf / (nf * (nf - 1.0)) + 8.0 * tf / ((nf - 1.0) * nf.sqrt())
}

/// `(1/a)·e^{−8bT²/N − 8√2·T}` for one-sided error with `t = N/2`.
pub fn amplification_error_bound(n: u64, queries: u64, cr: CRConstants) -> Result<f64> {
    Ok(ln_amplification_error_bound(n, queries, cr)?.exp())
}

pub fn ln_amplification_error_bound(n: u64, queries: u64, cr: CRConstants) -> Result<f64> {
    if n == 0 || n % 2 != 0 {
        return Err(domain(format!("N = {n} must be even and positive")));
    }
    let (nf, tf) = (n as f64, queries as f64);
    Ok(-(8.0 * cr.b * tf * tf / nf + 8.0 * std::f64::consts::SQRT_2 * tf) - cr.a.ln())
}

/// Least `T` with `amplification_error_bound(N, T) ≤ 2^{−k}`.
pub fn queries_for_error(k: u64, n: u64, cr: CRConstants) -> Result<u64> {
    let target = -(k as f64) * std::f64::consts::LN_2;
    let holds = |t: u64| ln_amplification_error_bound(n, t, cr).map(|v| v <= target);
    // solve 8b/N·T² + 8√2·T = k ln 2 − ln a for the positive root
    let (qa, qb) = (8.0 * cr.b / n as f64, 8.0 * std::f64::consts::SQRT_2);
    let rhs = (k as f64) * std::f64::consts::LN_2 - cr.a.ln();
    let root = if rhs <= 0.0 {
        0.0
    } else {
        2.0 * rhs / (qb + (qb * qb + 4.0 * qa * rhs).sqrt())
    };
    let mut t = root.ceil().max(0.0) as u64;
    while t > 0 && holds(t - 1)? {
        t -= 1;
    }
    while !holds(t)? {
        t += 1;
    }
    Ok(t)
}

/// `ln 2 / (8√2)`: the large-`k` limit of `queries_for_error(k)/k` at `a = 1`.
pub fn queries_per_halving_limit() -> f64 {
    std::f64::consts::LN_2 / (8.0 * std::f64::consts::SQRT_2)
}

/// `log₂` of the search bound at `T = N^{1/2 + α}`.
pub fn log2_error_at_power(n: u64, alpha: f64, cr: CRConstants) -> f64 {
    let nf = n as f64;
    let t = nf.powf(0.5 + alpha);
    -(4.0 * cr.b * t * t / nf + 8.0 * t / nf.sqrt() + cr.a.ln()) / std::f64::consts::LN_2
}

/// Real `T` at which the search bound reaches `epsilon`:
/// `√N·(−8 + √(64 + 16bL))/(8b)` with `L = ln(1/(aε))`.
pub fn queries_for_search_error(n: u64, epsilon: f64, cr: CRConstants) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0 / cr.a) {
        return Err(domain(format!("need 0 < ε < 1/a, got ε={epsilon}")));
    }
    let l = (1.0 / (cr.a * epsilon)).ln();
    Ok((n as f64).sqrt() * (-8.0 + (64.0 + 16.0 * cr.b * l).sqrt()) / (8.0 * cr.b))
}

/// `a·e^{b/δ}`, the continuum-to-grid factor.
pub fn envelope_factor(delta: f64, cr: CRConstants) -> f64 {
    cr.a * (cr.b / delta).exp()
}

/// `a·e^{b/δ}·max_k |p(k)|` for values of `p` at `0..=n`.
///
/// `delta` defaults to `n/d²`; the envelope is only claimed when `n ≥ δd²`.
pub fn coppersmith_rivlin_envelope(p_values: &[f64], d: usize, delta: Option<f64>, cr: CRConstants) -> Result<f64> {
    if p_values.len() < 2 {
        return Err(domain("need values at 0..=n with n ≥ 1"));
    }
    let n = (p_values.len() - 1) as f64;
    let max = p_values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if d == 0 {
        return Ok(cr.a * max);
    }
    let d2 = (d * d) as f64;
    let delta = delta.unwrap_or(n / d2);
    if !(delta > 0.0) || n < delta * d2 * (1.0 - 1e-12) {
        return Err(domain(format!("precondition n ≥ δd² fails: n={n}, δ={delta}, d={d}")));
    }
    Ok(envelope_factor(delta, cr) * max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CR: CRConstants = CRConstants { a: 1.0, b: 1.0 };

    #[test]
    fn plug_in_examples() {
        let b = error_lower_bound(100, 1, 10, CR).unwrap();
        assert!((b.exponent - 500.0 / 99.0).abs() < 1e-12);
        assert!((b.epsilon_bound - (-500.0f64 / 99.0).exp()).abs() < 1e-15);
        let b = error_lower_bound(64, 32, 8, CR).unwrap();
        assert!((b.exponent - (2.0 + 2048f64.sqrt())).abs() < 1e-12);
        assert!((b.exponent - b.exponent_from_growth).abs() < 1e-9);
        assert!(error_lower_bound(10, 10, 3, CR).is_err());
        assert!(error_lower_bound(10, 1, 0, CR).is_err());
    }

    #[test]
    fn single_solution_form_is_the_t1_case() {
        let cr = CRConstants::new(0.7, 2.3).unwrap();
        for n in [2u64, 5, 64, 1000] {
            for d in 1..20 {
                let b = error_lower_bound(n, 1, d, cr).unwrap();
                let s = single_solution_exponent(n, d, cr);
                assert!((b.exponent - s).abs() <= 1e-12 * s.max(1.0));
            }
        }
    }

    #[test]
    fn exact_chebyshev_bound_is_at_least_the_growth_form() {
        for (n, t, d) in [(16, 1, 4), (64, 32, 8), (1000, 3, 30)] {
            let b = error_lower_bound(n, t, d, CR).unwrap();
            assert!(b.ln_epsilon_chebyshev >= b.ln_epsilon_bound - 1e-12);
        }
    }

    #[test]
    fn search_bound_examples() {
        assert_eq!(search_error_bound(100, 0, CR).unwrap(), 1.0);
        let half = CRConstants::new(2.0, 1.0).unwrap();
        assert_eq!(search_error_bound(100, 0, half).unwrap(), 0.5);
        assert!((search_error_bound(100, 10, CR).unwrap() - (-12f64).exp()).abs() < 1e-18);
        assert!(search_error_bound(10, 10, CR).is_err());
    }

    #[test]
    fn simplification_gap_accounts_for_the_difference() {
        for n in [4u64, 16, 100, 4096] {
            for t in 1..n.min(40) {
                let exact = single_solution_exponent(n, 2 * t, CR);
                let simple = search_exponent(n, t, CR);
                let gap = simplification_gap(n, t, CR);
                assert!(exact - simple >= -1e-12);
                assert!(((exact - simple) - gap).abs() <= 1e-10 * exact.max(1.0));
            }
        }
    }

    #[test]
    fn fixed_ratio_limit() {
        let c = 1.0;
        let limit = (-4.0 * c * c - 8.0 * c as f64).exp();
        for n in [100u64, 10_000, 1_000_000] {
            let t = (c * (n as f64).sqrt()) as u64;
            assert!((search_error_bound(n, t, CR).unwrap() - limit).abs() < 1e-15);
        }
    }

    #[test]
    fn amplification_examples() {
        assert_eq!(amplification_error_bound(16, 0, CR).unwrap(), 1.0);
        assert!(amplification_error_bound(15, 1, CR).is_err());
        let t = queries_for_error(1000, 1_000_000, CR).unwrap();
        assert_eq!(t, 62);
        assert!(((t as f64 / 1000.0) / queries_per_halving_limit() - 1.0).abs() < 0.05);
        assert!((queries_per_halving_limit() - 0.061266).abs() < 1e-6);
        for k in [0u64, 1, 7, 50] {
            let t = queries_for_error(k, 64, CR).unwrap();
            let target = -(k as f64) * std::f64::consts::LN_2;
            assert!(ln_amplification_error_bound(64, t, CR).unwrap() <= target);
            if t > 0 {
                assert!(ln_amplification_error_bound(64, t - 1, CR).unwrap() > target);
            }
        }
    }

    #[test]
    fn corollary_evaluators() {
        // α = 0: T = √N, exponent 4b + 8
        let v = log2_error_at_power(10_000, 0.0, CR);
        assert!((v + 12.0 / std::f64::consts::LN_2).abs() < 1e-9);
        let n = 10_000;
        let eps = 1e-6;
        let t = queries_for_search_error(n, eps, CR).unwrap();
        let exponent = 4.0 * t * t / n as f64 + 8.0 * t / (n as f64).sqrt();
        assert!((exponent - (1.0 / eps).ln()).abs() < 1e-9);
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(coppersmith_rivlin_envelope(&[0.0; 17], 4, None, CR).unwrap(), 0.0);
        let f1 = coppersmith_rivlin_envelope(&[1.0; 17], 2, Some(1.0), CR).unwrap();
        let f2 = coppersmith_rivlin_envelope(&[1.0; 17], 2, Some(2.0), CR).unwrap();
        assert!(f2 < f1);
        assert!(coppersmith_rivlin_envelope(&[1.0; 17], 5, Some(1.0), CR).is_err());
        assert!(CRConstants::new(0.0, 1.0).is_err());
    }
}
