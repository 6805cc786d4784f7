/// `T_d(x)` by the three-term recurrence.
pub fn chebyshev_recurrence(d: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if d == 0 {
        return 1.0;
    }
    for _ in 1..d {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_d(x)` in closed form: `cos(d·arccos x)` on `[−1, 1]`,
/// `½((x+√(x²−1))^d + (x−√(x²−1))^d)` outside.
pub fn chebyshev_closed(d: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        (d as f64 * x.acos()).cos()
    } else {
        let r = (x * x - 1.0).sqrt();
        0.5 * ((x + r).powi(d as i32) + (x - r).powi(d as i32))
    }
}

/// `T_d(x)`: recurrence inside `[−1, 1]`, closed form outside.
pub fn chebyshev(d: usize, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        chebyshev_recurrence(d, x)
    } else {
        chebyshev_closed(d, x)
    }
}

/// `ln T_d(1 + μ)` for `μ ≥ 0`, finite even where `T_d` overflows.
pub fn ln_chebyshev_above_one(d: usize, mu: f64) -> f64 {
    let x = 1.0 + mu;
    let r = (mu * (2.0 + mu)).sqrt();
    let ln_big = (x + r).ln() * d as f64;
    // T_d = ½ e^{ln_big} (1 + (x − r)^{2d})
    let small = ((x - r).ln() * 2.0 * d as f64).exp();
    ln_big - std::f64::consts::LN_2 + small.ln_1p()
}

/// `e^{2d√(2μ+μ²)}`, an upper bound on `T_d(1 + μ)`.
pub fn chebyshev_growth_bound(d: usize, mu: f64) -> f64 {
    ln_chebyshev_growth_bound(d, mu).exp()
}

pub fn ln_chebyshev_growth_bound(d: usize, mu: f64) -> f64 {
    2.0 * d as f64 * (2.0 * mu + mu * mu).sqrt()
}

/// `|a − b| / max(1, |a|, |b|)`.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn examples() {
        for d in 0..20 {
            assert_eq!(chebyshev(d, 1.0), 1.0);
        }
        assert!((chebyshev(2, 0.5) + 0.5).abs() < 1e-15);
        assert!((chebyshev(3, 2.0) - 26.0).abs() < 1e-12);
        assert!((chebyshev_closed(3, 2.0) - 26.0).abs() < 1e-12);
        assert_eq!(chebyshev_growth_bound(7, 0.0), 1.0);
        assert!((ln_chebyshev_growth_bound(10, 0.1) - 20.0 * 0.21f64.sqrt()).abs() < 1e-12);
        assert!(chebyshev(10, 1.1) <= chebyshev_growth_bound(10, 0.1));
    }

    #[test]
    fn log_form_matches_direct() {
        for d in [0, 1, 5, 40] {
            for mu in [0.0, 1e-3, 0.3, 2.0] {
                let direct = chebyshev(d, 1.0 + mu).ln();
                assert!((ln_chebyshev_above_one(d, mu) - direct).abs() < 1e-10, "d={d} mu={mu}");
            }
        }
        assert!(ln_chebyshev_above_one(2000, 1.0).is_finite());
    }

    proptest! {
        #[test]
        fn closed_form_agrees_with_recurrence(d in 0usize..=64, x in -3.0f64..3.0) {
            prop_assert!(relative_gap(chebyshev_recurrence(d, x), chebyshev_closed(d, x)) < 1e-9);
        }

        #[test]
        fn growth_bound_dominates(d in 1usize..=64, e in -4.0f64..0.0) {
            let mu = 10f64.powf(e);
            prop_assert!(ln_chebyshev_above_one(d, mu) <= ln_chebyshev_growth_bound(d, mu) + 1e-12);
        }
    }
}
