//! Exact rational helpers shared by interpolation and the LP.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Every finite `f64` is a dyadic rational, so this is exact.
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite value")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range: scale both down first
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Chebyshev grid value `y_k = 2k/n − 1`.
pub fn grid_point(k: usize, n: usize) -> Q {
    frac(2 * k as i64 - n as i64, n as i64)
}

/// `[T_0(y), ..., T_d(y)]` by the three-term recurrence.
pub fn chebyshev_row(d: usize, y: &Q) -> Vec<Q> {
    let mut row = Vec::with_capacity(d + 1);
    row.push(Q::one());
    if d >= 1 {
        row.push(y.clone());
    }
    let two_y = y * int(2);
    for m in 2..=d {
        let next = &two_y * &row[m - 1] - &row[m - 2];
        row.push(next);
    }
    row
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Q::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

pub fn max_abs(values: &[Q]) -> Q {
    values.iter().map(|v| v.abs()).max().unwrap_or_else(Q::zero)
}
