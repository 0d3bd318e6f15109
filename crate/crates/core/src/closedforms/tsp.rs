use crate::combinatorics::binomial;
use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;

fn check_subtour(n: usize, k: usize) -> Result<(), Error> {
    if k < 2 || k + 2 > n {
        return Err(invalid(alloc::format!("tsp subtour needs 2 <= k <= n-2, got n={n} k={k}")));
    }
    Ok(())
}

/// Fraction of tours avoiding a fixed edge.
pub fn tsp_nonneg_epr(n: usize) -> Result<ExactScalar, Error> {
    if n < 3 {
        return Err(invalid("tsp needs n >= 3"));
    }
    Ok(ExactScalar::ratio(n as i64 - 3, n as i64 - 1))
}

/// Fraction of tours crossing the cut around a k-set exactly twice.
pub fn tsp_subtour_epr(n: usize, k: usize) -> Result<ExactScalar, Error> {
    check_subtour(n, k)?;
    Ok(ExactScalar::from_rational(num_rational::BigRational::new(n.into(), binomial(n as u64, k as i64))))
}

pub fn tsp_nonneg_cd2(n: usize) -> Result<ExactScalar, Error> {
    if n < 4 {
        return Err(invalid("tsp non-negativity distance needs n >= 4"));
    }
    Ok(ExactScalar::ratio(4, (n as i64 - 1) * (n as i64 - 3)))
}

/// Nearest point on a subtour face: edges inside S, inside V∖S and across.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtourWitness {
    pub inside: ExactScalar,
    pub across: ExactScalar,
    pub outside: ExactScalar,
}

pub fn tsp_subtour_cd2(n: usize, k: usize) -> Result<(ExactScalar, SubtourWitness), Error> {
    check_subtour(n, k)?;
    let (n, k) = (n as i64, k as i64);
    let d2 = ExactScalar::ratio(2 * (k - 1) * (n - 2) * (n - k - 1), k * (n - 1) * (n - k));
    let w = SubtourWitness {
        inside: ExactScalar::ratio(2, k),
        across: ExactScalar::ratio(2, k * (n - k)),
        outside: ExactScalar::ratio(2, n - k),
    };
    Ok((d2, w))
}
