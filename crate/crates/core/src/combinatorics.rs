//! Binomials, Stirling numbers, Bell numbers, Poisson moments and the
//! edge-attachment counts E(i, j).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// C(n, k), zero outside 0 ≤ k ≤ n.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `C(n, 0..=n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c *= n - j;
        c /= j + 1;
        row.push(c.clone());
    }
    row
}

/// Next row of Stirling numbers of the second kind from the previous one.
fn stirling_next(prev: &[BigInt]) -> Vec<BigInt> {
    let n = prev.len();
    let mut row = vec![BigInt::zero(); n + 1];
    for k in 1..=n {
        let mut v = prev[k - 1].clone();
        if k < n {
            v += &prev[k] * k;
        }
        row[k] = v;
    }
    row
}

/// Row `S2(n, 0..=n)`.
pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        row = stirling_next(&row);
    }
    row
}

/// Stirling number of the second kind S2(n, k).
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling2_row(n).swap_remove(k)
}

/// Bell number: partitions of an n-set.
pub fn bell(n: usize) -> BigInt {
    stirling2_row(n).iter().sum()
}

/// Memoized moments `E[X^k]` of a Poisson variable with integer mean λ.
///
/// Moments are grown one Stirling row at a time, so only the current row is kept.
#[derive(Clone, Debug)]
pub struct MomentTable {
    lambda: u64,
    moments: Vec<BigInt>,
    row: Vec<BigInt>,
}

impl MomentTable {
    pub fn new(lambda: u64) -> Self {
        MomentTable { lambda, moments: vec![BigInt::one()], row: vec![BigInt::one()] }
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn cached(&self) -> usize {
        self.moments.len()
    }

    fn extend_to(&mut self, k: usize) {
        while self.moments.len() <= k {
            self.row = stirling_next(&self.row);
            // Horner over the Stirling row
            let mut acc = BigInt::zero();
            for s in self.row.iter().rev() {
                acc *= self.lambda;
                acc += s;
            }
            self.moments.push(acc);
        }
    }

    pub fn get(&mut self, k: usize) -> &BigInt {
        self.extend_to(k);
        &self.moments[k]
    }

    /// `E[X^m (X+1)^n]`.
    pub fn shifted(&mut self, m: usize, n: usize) -> BigInt {
        self.extend_to(m + n);
        let row = binomial_row(n as u64);
        row.iter().zip(&self.moments[m..=m + n]).map(|(c, e)| c * e).sum()
    }
}

/// `E[X_λ^k]`.
pub fn poisson_moment(lambda: u64, k: usize) -> BigInt {
    MomentTable::new(lambda).get(k).clone()
}

/// `E[X_λ^m (X_λ+1)^n]`.
pub fn moment_shifted(lambda: u64, m: usize, n: usize) -> BigInt {
    MomentTable::new(lambda).shifted(m, n)
}

/// Moment tables keyed by λ.
#[derive(Clone, Debug, Default)]
pub struct Moments {
    tables: BTreeMap<u64, MomentTable>,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, lambda: u64) -> &mut MomentTable {
        self.tables.entry(lambda).or_insert_with(|| MomentTable::new(lambda))
    }

    pub fn get(&mut self, lambda: u64, k: usize) -> BigInt {
        self.table(lambda).get(k).clone()
    }

    pub fn shifted(&mut self, lambda: u64, m: usize, n: usize) -> BigInt {
        self.table(lambda).shifted(m, n)
    }
}

/// Memoized E(i, j), stored column-major so columns can grow independently.
#[derive(Clone, Debug, Default)]
pub struct AttachTable {
    cols: Vec<Vec<BigInt>>,
    binom: Vec<Vec<BigInt>>,
}

impl AttachTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn e1(&self, m: usize) -> &BigInt {
        &self.cols[m][1]
    }

    fn push_column(&mut self) {
        let j = self.cols.len();
        self.binom.push(binomial_row(j as u64));
        let mut col = vec![BigInt::one()];
        if j > 0 {
            col[0] = BigInt::zero();
            let q = poisson_moment(j as u64, j);
            let (e1, rem) = q.div_rem(&BigInt::from(j));
            assert!(rem.is_zero(), "E[X_j^j] not divisible by j={j}");
            col.push(e1);
        } else {
            col.push(BigInt::one());
        }
        self.cols.push(col);
    }

    fn extend_column(&mut self, j: usize, i: usize) {
        while self.cols[j].len() <= i {
            let row = self.cols[j].len();
            let v = if j == 0 {
                BigInt::one()
            } else {
                let mut acc = BigInt::zero();
                for m in 0..=j {
                    let prev = &self.cols[j - m][row - 1];
                    if prev.is_zero() {
                        continue;
                    }
                    let e1 = if m == 0 { BigInt::one() } else { self.e1(m).clone() };
                    acc += &self.binom[j][m] * prev * e1;
                }
                acc
            };
            self.cols[j].push(v);
        }
    }

    pub fn get(&mut self, i: usize, j: usize) -> &BigInt {
        while self.cols.len() <= j {
            self.push_column();
        }
        for col in 0..=j {
            self.extend_column(col, i);
        }
        &self.cols[j][i]
    }
}

/// `E(i, j)`: ways to attach j free vertices to i existing hyperedges.
pub fn edge_attach(i: usize, j: usize) -> BigInt {
    AttachTable::new().get(i, j).clone()
}

/// `ln n!` for `n = 0..=max`.
pub fn ln_factorials(max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..=max {
        acc += libm::log(i as f64);
        out.push(acc);
    }
    out
}

/// Triangle of `ln S2(n, k)` for `n ≤ max` (−∞ where the number is zero).
pub fn ln_stirling2_triangle(max: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max + 1);
    rows.push(vec![0.0]);
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![f64::NEG_INFINITY; n + 1];
        for k in 1..=n {
            let a = prev[k - 1];
            let b = if k < n { prev[k] + libm::log(k as f64) } else { f64::NEG_INFINITY };
            row[k] = ln_add(a, b);
        }
        rows.push(row);
    }
    rows
}

pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        hi
    } else {
        hi + libm::log1p(libm::exp(lo - hi))
    }
}
