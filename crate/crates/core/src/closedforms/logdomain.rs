//! Subtour extreme point ratios in the log domain, for `n` beyond exact reach.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{ln_factorials, ln_stirling2_triangle};
use crate::error::{invalid, Error};
use crate::exactnum::{log_sum, LogScalar};

/// Default `n` above which sweeps switch from exact to log-domain values.
pub const LOG_THRESHOLD_DEFAULT: usize = 200;

/// `ln E[X_λ^j]` for `1 ≤ λ ≤ n`, `0 ≤ j ≤ λ`; row 0 is unused.
fn ln_moments(n: usize, ln_s2: &[Vec<f64>], buf: &mut Vec<f64>) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for lam in 1..=n {
        let ll = libm::log(lam as f64);
        let row = (0..=lam)
            .map(|j| {
                buf.clear();
                buf.extend((0..=j).map(|i| ln_s2[j][i] + i as f64 * ll));
                log_sum(buf)
            })
            .collect();
        out.push(row);
    }
    out
}

/// Log-domain fast-form subtour ratios for every `2 ≤ k ≤ n − 1`, in order.
#[allow(clippy::needless_range_loop)]
pub fn sthgp_subtour_epr_log(n: usize) -> Result<Vec<LogScalar>, Error> {
    if n < 3 {
        return Err(invalid("subtours need n >= 3"));
    }
    let ln_s2 = ln_stirling2_triangle(n);
    let ln_fact = ln_factorials(n);
    let ln_binom = |a: usize, b: usize| ln_fact[a] - ln_fact[b] - ln_fact[a - b];
    let mut buf = Vec::with_capacity(n + 1);
    let mom = ln_moments(n, &ln_s2, &mut buf);

    // ln E(1, m)
    let e1: Vec<f64> = (0..n).map(|m| if m == 0 { 0.0 } else { mom[m][m] - libm::log(m as f64) }).collect();
    // ln E(i, m) for i + m ≤ n − 1
    let mut attach: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut first = vec![f64::NEG_INFINITY; n];
    first[0] = 0.0;
    attach.push(first);
    for i in 1..n {
        let prev = &attach[i - 1];
        let row: Vec<f64> = (0..n - i)
            .map(|j| {
                buf.clear();
                buf.extend((0..=j).map(|m| ln_binom(j, m) + prev[j - m] + e1[m]));
                log_sum(&buf)
            })
            .collect();
        attach.push(row);
    }

    let ln_rooted = mom[n][n - 1];
    let ln_n = libm::log(n as f64);
    let mut out = Vec::with_capacity(n - 2);
    let mut terms = Vec::with_capacity(n);
    for k in 2..n {
        let lk = libm::log(k as f64);
        let weights: Vec<f64> = (0..k).map(|i| ln_s2[k - 1][i] + i as f64 * lk).collect();
        terms.clear();
        for m in 0..=n - k {
            buf.clear();
            buf.extend((1..k).map(|i| weights[i] + attach[i][m]));
            let u = log_sum(&buf);
            let lam = n - m;
            terms.push(ln_binom(n - k, m) + mom[lam][lam - k] - libm::log(lam as f64) + u);
        }
        out.push(LogScalar::from_ln(1, ln_n + log_sum(&terms) - ln_rooted));
    }
    Ok(out)
}
