use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Error;
use crate::ExactScalar;

/// `cos φ = numerator / √denominator_squared`, both exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCosine {
    pub numerator: BigInt,
    pub denominator_squared: BigInt,
}

impl ExactCosine {
    pub fn value(&self) -> f64 {
        let root = self.denominator_squared.sqrt();
        if &root * &root == self.denominator_squared {
            if let Ok(r) = ExactScalar::new(self.numerator.clone(), root) {
                return r.to_f64();
            }
        }
        let n = crate::exactnum::LogScalar::from_bigint(&self.numerator);
        let d = crate::exactnum::LogScalar::from_bigint(&self.denominator_squared);
        if n.is_zero() {
            return 0.0;
        }
        let v = n.sign as f64 * libm::exp(n.log_magnitude - 0.5 * d.log_magnitude);
        v.clamp(-1.0, 1.0)
    }

    /// Interior angle `π − acos(cos φ)` in radians.
    pub fn theta(&self) -> f64 {
        core::f64::consts::PI - libm::acos(self.value())
    }

    /// Same value, compared by cross-multiplying squares and signs.
    pub fn same_value(&self, o: &ExactCosine) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }

    /// Exact ordering of the two cosines.
    pub fn cmp_value(&self, o: &ExactCosine) -> Ordering {
        let (sa, sb) = (self.numerator.sign(), o.numerator.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        // same sign: compare n²/d² magnitudes, reversed for negatives
        let lhs = &self.numerator * &self.numerator * &o.denominator_squared;
        let rhs = &o.numerator * &o.numerator * &self.denominator_squared;
        match sa {
            Sign::Minus => rhs.cmp(&lhs),
            _ => lhs.cmp(&rhs),
        }
    }
}

impl fmt::Display for ExactCosine {
    /// `p/q` when the squared denominator is a perfect square, else `p/sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = self.denominator_squared.sqrt();
        if &root * &root == self.denominator_squared {
            write!(f, "{}/{}", self.numerator, root)
        } else {
            write!(f, "{}/sqrt({})", self.numerator, self.denominator_squared)
        }
    }
}

fn dot_i128(x: &[i128], y: &[i128]) -> Option<i128> {
    x.iter().zip(y).try_fold(0i128, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
}

/// Cosine between the projections of `a1` and `a2` onto the hyperplane `c·x = 0`,
/// built from the projected vectors themselves.
///
/// The projections are `â = s·a − (a·c)·c` with `s = c·c`; the returned
/// numerator is `(â1·â2)/s` and the squared denominator `(â1·â1)(â2·â2)/s²`,
/// both exact.
pub fn projected_cosine(a1: &[i64], a2: &[i64], c: &[i64]) -> Result<ExactCosine, Error> {
    let m = c.len();
    if a1.len() != m || a2.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: a1.len().max(a2.len()) });
    }
    let widen = |v: &[i64]| v.iter().map(|&x| x as i128).collect::<alloc::vec::Vec<i128>>();
    let (a1, a2, c) = (widen(a1), widen(a2), widen(c));
    let overflow = || Error::Degenerate("integer overflow in projected dot products".into());
    let s = dot_i128(&c, &c).ok_or_else(overflow)?;
    if s == 0 {
        return Err(Error::Degenerate("zero normal".into()));
    }
    let project = |a: &[i128]| -> Result<alloc::vec::Vec<i128>, Error> {
        let r = dot_i128(a, &c).ok_or_else(overflow)?;
        a.iter()
            .zip(&c)
            .map(|(x, y)| {
                s.checked_mul(*x).zip(r.checked_mul(*y)).and_then(|(p, q)| p.checked_sub(q)).ok_or_else(overflow)
            })
            .collect()
    };
    let h1 = project(&a1)?;
    let h2 = project(&a2)?;
    for h in [&h1, &h2] {
        if dot_i128(h, &c).ok_or_else(overflow)? != 0 {
            return Err(Error::Degenerate("projection is not orthogonal to the affine hull".into()));
        }
        if h.iter().all(|&v| v == 0) {
            return Err(Error::Degenerate("zero projection".into()));
        }
    }
    let s_big = BigInt::from(s);
    let exact_div = |v: BigInt| -> Result<BigInt, Error> {
        let (q, r) = v.div_rem(&s_big);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Degenerate("projected dot product not divisible by c·c".into()))
        }
    };
    let cross = exact_div(BigInt::from(dot_i128(&h1, &h2).ok_or_else(overflow)?))?;
    let n1 = exact_div(BigInt::from(dot_i128(&h1, &h1).ok_or_else(overflow)?))?;
    let n2 = exact_div(BigInt::from(dot_i128(&h2, &h2).ok_or_else(overflow)?))?;
    Ok(ExactCosine { numerator: cross, denominator_squared: n1 * n2 })
}

/// Interior angle `θ = π − φ` (radians) between two hyperplanes inside the
/// affine hull `c·x = d`.
pub fn interior_angle_first_principles(a1: &[i64], a2: &[i64], c: &[i64]) -> Result<f64, Error> {
    projected_cosine(a1, a2, c).map(|f| f.theta())
}
