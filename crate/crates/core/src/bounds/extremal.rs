use serde::Serialize;

use super::chebyshev::chebyshev;
use crate::error::{domain, Result};
use crate::polymethod::UnivariatePoly;

/// Extremal-growth check for an acceptance polynomial `s` on `[0, N]`.
///
/// With `p(x) = 1 − s(N − x)` and `q(y) = p((y + 1)(N − t)/2)`, the interval
/// `y ∈ [−1, 1]` covers `s` on `[t, N]` and `q(1 + μ) = 1 − s(0)` for
/// `μ = 2t/(N − t)`. A degree-`d` polynomial bounded by `c` on `[−1, 1]`
/// satisfies `|q(1 + μ)| ≤ c·T_d(1 + μ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalCheck {
    pub n: usize,
    pub t: usize,
    pub d: usize,
    pub mu: f64,
    /// `max |q|` on `[−1, 1]`, measured on the continuum.
    pub continuum_max: f64,
    /// `max |q|` at the images of the integers `t..=N`.
    pub grid_max: f64,
    /// `|q(1 + μ)|`.
    pub outside_value: f64,
    pub chebyshev_value: f64,
    /// `|q(1 + μ)| ≤ c·T_d(1 + μ)·(1 + 1e−6)`.
    pub holds: bool,
}

pub const EXTREMAL_SLACK: f64 = 1e-6;

pub fn extremal_check(s: &UnivariatePoly, t: usize, d: usize) -> Result<ExtremalCheck> {
    let n = s.n;
    if t == 0 || t >= n {
        return Err(domain(format!("need 1 ≤ t < N, got N={n}, t={t}")));
    }
    let mu = 2.0 * t as f64 / (n - t) as f64;
    let (min, max) = s.extrema(t as f64, n as f64);
    let continuum_max = (1.0 - min).abs().max((1.0 - max).abs());
    let grid_max = s.values[t..].iter().map(|v| (1.0 - v).abs()).fold(0.0, f64::max);
    let outside_value = (1.0 - s.eval(0.0)).abs();
    let chebyshev_value = chebyshev(d, 1.0 + mu);
    Ok(ExtremalCheck {
        n,
        t,
        d,
        mu,
        continuum_max,
        grid_max,
        outside_value,
        chebyshev_value,
        holds: outside_value <= continuum_max * chebyshev_value * (1.0 + EXTREMAL_SLACK),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_itself_is_extremal() {
        // s = 1 − T_d(y) on [t, N] mapped back: s(x) = 1 − T_d((N − x)·2/(N − t) − 1)
        let (n, t, d) = (16usize, 4usize, 3usize);
        let values: Vec<f64> = (0..=n)
            .map(|x| 1.0 - chebyshev(d, 2.0 * (n - x) as f64 / (n - t) as f64 - 1.0))
            .collect();
        let s = UnivariatePoly::interpolate(&values).unwrap();
        let c = extremal_check(&s, t, d).unwrap();
        assert!(c.holds);
        assert!((c.continuum_max - 1.0).abs() < 1e-9);
        assert!((c.outside_value - c.chebyshev_value).abs() < 1e-7 * c.chebyshev_value);
        // one degree short is violated
        let c = extremal_check(&s, t, d - 1).unwrap();
        assert!(!c.holds);
    }

    #[test]
    fn rejects_full_promise() {
        let s = UnivariatePoly::interpolate(&[0.0, 1.0]).unwrap();
        assert!(extremal_check(&s, 1, 1).is_err());
    }
}
