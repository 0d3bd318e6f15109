use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;

fn check(n: usize, k: usize) -> Result<(), Error> {
    if k < 2 || k >= n {
        return Err(invalid(alloc::format!("subtour needs 2 <= k <= n-1, got n={n} k={k}")));
    }
    Ok(())
}

/// Spanning trees of K_n, and those with a spanning tree inside a fixed k-set.
pub fn stgp_tree_counts(n: usize, k: usize) -> Result<(BigInt, BigInt), Error> {
    check(n, k)?;
    let total = BigInt::from(n).pow(n - 2);
    let incident = BigInt::from(k).pow(k - 1) * BigInt::from(n).pow(n - k - 1);
    Ok((total, incident))
}

pub fn stgp_subtour_epr(n: usize, k: usize) -> Result<ExactScalar, Error> {
    check(n, k)?;
    Ok(ExactScalar::ratio(k as i64, n as i64).pow(k as u32 - 1))
}

pub fn stgp_subtour_cd2(n: usize, k: usize) -> Result<ExactScalar, Error> {
    check(n, k)?;
    let (n, k) = (n as i64, k as i64);
    Ok(ExactScalar::ratio(2 * (k - 1) * (n - 1) * (n - k), k * n * (n + k - 1)))
}

/// Per-edge displacement from the centroid to the nearest face point.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaComponents {
    pub dx_inside: ExactScalar,
    pub dx_outside: ExactScalar,
    pub sum_inside: ExactScalar,
    pub sum_outside: ExactScalar,
}

pub fn stgp_delta_components(n: usize, k: usize) -> Result<DeltaComponents, Error> {
    check(n, k)?;
    let (n, k) = (n as i64, k as i64);
    Ok(DeltaComponents {
        dx_inside: ExactScalar::ratio(2 * (n - k), k * n),
        dx_outside: ExactScalar::ratio(-2 * (k - 1), n * (n + k - 1)),
        sum_inside: ExactScalar::ratio(2 * (k - 1) * (n - k) * (n - k), k * n * n),
        sum_outside: ExactScalar::ratio(2 * (k - 1) * (k - 1) * (n - k), n * n * (n + k - 1)),
    })
}
