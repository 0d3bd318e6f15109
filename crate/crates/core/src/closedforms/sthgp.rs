use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::combinatorics::{binomial_row, stirling2_row, AttachTable, MomentTable, Moments};
use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;
use crate::geometry::ExactCosine;

/// Largest n accepted by the direct subtour ratio.
pub const DIRECT_EPR_MAX_N: usize = 60;

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// `2^e` for possibly negative `e`.
fn pow2_signed(e: i64) -> ExactScalar {
    if e >= 0 {
        ExactScalar::int(pow2(e as usize))
    } else {
        ExactScalar::new(1, pow2((-e) as usize)).unwrap()
    }
}

/// The helper functions of the hypergraph polytope.
pub mod scalars {
    use super::*;

    /// `n 2^{n−1}`: edges containing a fixed vertex, summed over the complete hypergraph.
    pub fn b(n: usize) -> BigInt {
        if n == 0 {
            BigInt::zero()
        } else {
            BigInt::from(n) * pow2(n - 1)
        }
    }

    pub fn c(n: usize) -> BigInt {
        pow2(n) - 1
    }

    pub fn d(n: usize) -> BigInt {
        b(n) - c(n)
    }

    pub fn alpha(n: usize) -> BigInt {
        if n < 2 {
            return BigInt::zero();
        }
        let n = n as i64;
        BigInt::from(n * n - 3 * n + 4) * pow2(n as usize - 2) - 1
    }

    pub fn gamma(n: usize, k: usize) -> BigInt {
        pow2(n - k) * alpha(k)
    }

    pub fn beta(n: usize, k: usize) -> BigInt {
        gamma(n, k) + b(n - k) * d(k)
    }

    pub fn mu(n: usize, k: usize) -> BigInt {
        let be = beta(n, k);
        alpha(n) * gamma(n, k) - &be * &be
    }

    /// `a1·a2` for subtours sharing `r` vertices, with `p` and `q` private ones.
    pub fn w(n: usize, p: usize, q: usize, r: usize) -> BigInt {
        let inner = pow2(p + q) * alpha(r) + d(p) * d(q) + b(p) * b(q) * c(r) + b(p + q) * d(r);
        pow2(n - p - q - r) * inner
    }
}

/// Helper scalars at one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SthgpScalars {
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub alpha: BigInt,
    pub gamma: BigInt,
    pub beta: BigInt,
    pub mu: BigInt,
    /// `E[X(X+1)^{n−2}] − E[X^k (X+1)^{n−k−1}]`, defined for `k < n`.
    pub t: Option<BigInt>,
}

/// A centroid distance `ratio · √radicand`, kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct CdValue {
    pub ratio: ExactScalar,
    pub radicand: ExactScalar,
}

impl CdValue {
    pub fn squared(&self) -> ExactScalar {
        &self.ratio * &self.ratio * self.radicand.clone()
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio.to_f64() * libm::sqrt(self.radicand.to_f64())
    }
}

/// Tree counts with their decomposition by number of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCount {
    pub trees: BigInt,
    /// `E[X_n^{n−1}]`, the count of trees with a marked vertex.
    pub rooted: BigInt,
    /// Entry `i − 1` counts the trees with `i` edges.
    pub by_edges: Vec<BigInt>,
}

/// Memoized quantities for the complete hypergraph on `n` vertices.
#[derive(Clone, Debug)]
pub struct Sthgp {
    n: usize,
    table: MomentTable,
}

impl Sthgp {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(invalid("need n >= 1"));
        }
        Ok(Sthgp { n, table: MomentTable::new(n as u64) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn moment(&mut self, k: usize) -> BigInt {
        self.table.get(k).clone()
    }

    pub fn rooted_count(&mut self) -> BigInt {
        self.moment(self.n - 1)
    }

    pub fn tree_count(&mut self) -> BigInt {
        self.rooted_count() / self.n
    }

    /// Trees containing one fixed edge of cardinality `k`.
    pub fn trees_with_edge(&mut self, k: usize) -> Result<BigInt, Error> {
        if k == 0 || k > self.n {
            return Err(invalid(format!("edge size {k} out of range for n={}", self.n)));
        }
        Ok(self.moment(self.n - k) * k / self.n)
    }

    pub fn nonneg_epr(&mut self, k: usize) -> Result<ExactScalar, Error> {
        self.check_nonneg(k)?;
        let hit = ExactScalar::new(self.moment(self.n - k) * k, self.rooted_count())?;
        Ok(ExactScalar::one() - hit)
    }

    fn check_nonneg(&self, k: usize) -> Result<(), Error> {
        if k < 2 || k > self.n {
            return Err(invalid(format!("non-negativity needs 2 <= k <= n, got n={} k={k}", self.n)));
        }
        Ok(())
    }

    fn check_subtour(&self, k: usize) -> Result<(), Error> {
        if k < 2 || k >= self.n {
            return Err(invalid(format!("subtour needs 2 <= k <= n-1, got n={} k={k}", self.n)));
        }
        Ok(())
    }

    /// `t(n, k)`; zero at `k = 1`.
    pub fn t(&mut self, k: usize) -> Result<BigInt, Error> {
        if self.n < 2 || k >= self.n {
            return Err(invalid(format!("t(n,k) needs k < n, got n={} k={k}", self.n)));
        }
        let n = self.n;
        Ok(self.table.shifted(1, n - 2) - self.table.shifted(k, n - k - 1))
    }

    pub fn scalars(&mut self, k: usize) -> Result<SthgpScalars, Error> {
        let n = self.n;
        if k > n {
            return Err(invalid(format!("need k <= n, got n={n} k={k}")));
        }
        Ok(SthgpScalars {
            b: scalars::b(n),
            c: scalars::c(n),
            d: scalars::d(n),
            alpha: scalars::alpha(n),
            gamma: scalars::gamma(n, k),
            beta: scalars::beta(n, k),
            mu: scalars::mu(n, k),
            t: if k < n && n >= 2 { Some(self.t(k)?) } else { None },
        })
    }

    pub fn nonneg_cd(&mut self, k: usize) -> Result<CdValue, Error> {
        self.check_nonneg(k)?;
        let ratio = ExactScalar::new(self.moment(self.n - k) * k, self.rooted_count())?;
        let alpha = scalars::alpha(self.n);
        let km1 = BigInt::from(k - 1);
        let den = &alpha - &km1 * &km1;
        if !den.is_positive() {
            return Err(Error::Degenerate(format!("alpha(n) <= (k-1)^2 at n={} k={k}", self.n)));
        }
        Ok(CdValue { ratio, radicand: ExactScalar::new(alpha, den)? })
    }

    pub fn subtour_cd(&mut self, k: usize) -> Result<CdValue, Error> {
        self.check_subtour(k)?;
        let n = self.n;
        let mu = scalars::mu(n, k);
        if !mu.is_positive() {
            return Err(Error::Degenerate(format!("mu(n,k) <= 0 at n={n} k={k}")));
        }
        let ratio = ExactScalar::new(self.t(k)? * (n - k), self.rooted_count())?;
        Ok(CdValue { ratio, radicand: ExactScalar::new(scalars::alpha(n), mu)? })
    }

    /// Squared displacement summed over edges inside the subtour set, and over the rest.
    pub fn partial_sums(&mut self, k: usize) -> Result<(ExactScalar, ExactScalar), Error> {
        self.check_subtour(k)?;
        let n = self.n;
        let (ni, ki) = (n as i64, k as i64);
        let mu = scalars::mu(n, k);
        let tau = ExactScalar::new(self.t(k)? * (n - k), mu * self.rooted_count())?;
        let tau2 = &tau * &tau;
        let al = ExactScalar::int(scalars::alpha(n));
        let be = ExactScalar::int(scalars::beta(n, k));
        let i = |v: i64| ExactScalar::int(v);
        let e_alpha2 = i(ki * ki - 3 * ki + 4) * pow2_signed(ni - 2) - pow2_signed(ni - ki);
        let e_ab = i((2 - ki) * ni + ki - 4) * pow2_signed(ni - 1) - i(ni - ki - 2) * pow2_signed(ni - ki);
        let cubic = ki * ki * ki - 2 * ni * ki * ki + (ni * ni - ni + 3) * ki + ni * ni - 3 * ni + 4;
        let e_b2 = i(ni * ni - 3 * ni + 4) * pow2_signed(ni - 2) - i(cubic) * pow2_signed(ni - ki - 2);
        let inside = &tau2 * &(e_alpha2 * &al * &al + e_ab * &al * &be + e_b2 * &be * &be);
        let rest_factor =
            ExactScalar::int(scalars::alpha(n - k)) + i(ki * (ni - ki) * (ni - ki + 1)) * pow2_signed(ni - ki - 2);
        let rest = tau2 * &be * &be * rest_factor;
        Ok((inside, rest))
    }
}

pub fn sthgp_tree_count(n: usize) -> Result<TreeCount, Error> {
    let mut ctx = Sthgp::new(n)?;
    let rooted = ctx.rooted_count();
    let row = stirling2_row(n - 1);
    let nb = BigInt::from(n);
    let by_edges = (1..n).map(|i| &row[i] * Pow::pow(&nb, i - 1)).collect();
    Ok(TreeCount { trees: &rooted / n, rooted, by_edges })
}

pub fn sthgp_trees_with_edge(n: usize, k: usize) -> Result<BigInt, Error> {
    Sthgp::new(n)?.trees_with_edge(k)
}

pub fn sthgp_nonneg_epr(n: usize, k: usize) -> Result<ExactScalar, Error> {
    Sthgp::new(n)?.nonneg_epr(k)
}

pub fn sthgp_scalars(n: usize, k: usize) -> Result<SthgpScalars, Error> {
    Sthgp::new(n)?.scalars(k)
}

pub fn sthgp_nonneg_cd(n: usize, k: usize) -> Result<CdValue, Error> {
    Sthgp::new(n)?.nonneg_cd(k)
}

pub fn sthgp_subtour_cd(n: usize, k: usize) -> Result<CdValue, Error> {
    Sthgp::new(n)?.subtour_cd(k)
}

pub fn sthgp_cd2_partial_sums(n: usize, k: usize) -> Result<(ExactScalar, ExactScalar), Error> {
    Sthgp::new(n)?.partial_sums(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EprMethod {
    Direct,
    Fast,
}

/// Memo tables for the subtour ratio at a fixed `n`.
#[derive(Clone, Debug)]
pub struct SubtourEpr {
    n: usize,
    moments: Moments,
    attach: AttachTable,
}

impl SubtourEpr {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 3 {
            return Err(invalid("subtours need n >= 3"));
        }
        Ok(SubtourEpr { n, moments: Moments::new(), attach: AttachTable::new() })
    }

    fn check(&self, k: usize) -> Result<(), Error> {
        if k < 2 || k >= self.n {
            return Err(invalid(format!("subtour needs 2 <= k <= n-1, got n={} k={k}", self.n)));
        }
        Ok(())
    }

    pub fn compute(&mut self, k: usize, method: EprMethod) -> Result<ExactScalar, Error> {
        match method {
            EprMethod::Direct => self.direct(k),
            EprMethod::Fast => self.fast(k),
        }
    }

    /// Vertex attachment around a tree on the subtour set.
    pub fn direct(&mut self, k: usize) -> Result<ExactScalar, Error> {
        self.check(k)?;
        let n = self.n;
        if n > DIRECT_EPR_MAX_N {
            return Err(Error::ResourceGuard(format!("direct subtour ratio is limited to n <= {DIRECT_EPR_MAX_N}")));
        }
        let r = n - k;
        let outer = binomial_row(r as u64);
        let inner_moments: Vec<BigInt> = (0..=r).map(|p| self.moments.get(k as u64, p)).collect();
        let rest_moments: Vec<BigInt> = (0..=r).map(|e| self.moments.get(r as u64, e)).collect();
        let s = stirling2_row(k - 1);
        let kb = BigInt::from(k);
        let mut total = BigInt::zero();
        for (i, s_i) in s.iter().enumerate().skip(1) {
            if s_i.is_zero() {
                continue;
            }
            let ib = BigInt::from(i);
            let ipow: Vec<BigInt> = (0..=r).map(|e| Pow::pow(&ib, e)).collect();
            let mut inner = BigInt::zero();
            for j in 1..=r {
                let row = binomial_row(j as u64);
                let attach: BigInt = (0..=j).map(|p| &row[p] * &inner_moments[p] * &ipow[j - p]).sum();
                inner += &outer[j] * j * &rest_moments[r - j] * attach;
            }
            total += s_i * Pow::pow(&kb, i) * inner;
        }
        let rooted = self.moments.get(n as u64, n - 1);
        ExactScalar::new(total * n, rooted * k * r)
    }

    /// Edge attachment with memoized attachment counts.
    pub fn fast(&mut self, k: usize) -> Result<ExactScalar, Error> {
        self.check(k)?;
        let n = self.n;
        let r = n - k;
        let s = stirling2_row(k - 1);
        let kb = BigInt::from(k);
        let weights: Vec<BigInt> = (0..k).map(|i| &s[i] * Pow::pow(&kb, i)).collect();
        let binom = binomial_row(r as u64);
        let mut total = BigRational::zero();
        for (m, bm) in binom.iter().enumerate().take(r + 1) {
            let mut u = BigInt::zero();
            for (i, wgt) in weights.iter().enumerate().skip(1) {
                if !wgt.is_zero() {
                    u += wgt * self.attach.get(i, m);
                }
            }
            let lam = n - m;
            let num = bm * self.moments.get(lam as u64, lam - k) * u;
            total += BigRational::new(num, BigInt::from(lam));
        }
        let rooted = self.moments.get(n as u64, n - 1);
        Ok(ExactScalar::from_rational(total * BigRational::new(BigInt::from(n), rooted)))
    }
}

pub fn sthgp_subtour_epr(n: usize, k: usize, method: EprMethod) -> Result<ExactScalar, Error> {
    SubtourEpr::new(n)?.compute(k, method)
}

/// Cosine and interior angle between two subtours `S1 = P ∪ R`, `S2 = Q ∪ R`
/// with `|P| = p`, `|Q| = q`, `|R| = r`.
pub fn sthgp_subtour_angle(n: usize, p: usize, q: usize, r: usize) -> Result<(ExactCosine, f64), Error> {
    if p == 0 && q == 0 {
        return Err(invalid("identical subtours have no interior angle"));
    }
    let (k1, k2) = (p + r, q + r);
    if k1 < 2 || k2 < 2 || p + q + r > n || k1 >= n || k2 >= n {
        return Err(invalid(format!("invalid subtour pair (n,p,q,r)=({n},{p},{q},{r})")));
    }
    let al = scalars::alpha(n);
    let numerator = &al * scalars::w(n, p, q, r) - scalars::beta(n, k1) * scalars::beta(n, k2);
    let denominator_squared = scalars::mu(n, k1) * scalars::mu(n, k2);
    let cos = ExactCosine { numerator, denominator_squared };
    let theta = cos.theta();
    Ok((cos, theta))
}
