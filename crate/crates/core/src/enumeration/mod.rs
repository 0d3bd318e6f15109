//! Brute-force extreme point enumeration, facet coefficient vectors,
//! centroids and incidence counts.

mod facets;
mod generate;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;

pub use facets::{affine_hull, build_facet};
pub use generate::{is_hypertree, Enumerator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Tsp,
    Stgp,
    Sthgp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Tsp => "tsp",
            Family::Stgp => "stgp",
            Family::Sthgp => "sthgp",
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            Family::Tsp => 0,
            Family::Stgp => 1,
            Family::Sthgp => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Family> {
        match tag {
            0 => Some(Family::Tsp),
            1 => Some(Family::Stgp),
            2 => Some(Family::Sthgp),
            _ => None,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Tsp => 3,
            _ => 2,
        }
    }

    /// Largest n enumerated without an explicit override.
    pub fn guard(self) -> usize {
        match self {
            Family::Tsp => 12,
            _ => 9,
        }
    }

    /// Hard ceiling even with an override (bitmask and memory limits).
    pub fn ceiling(self) -> usize {
        match self {
            Family::Tsp => 16,
            Family::Stgp => 14,
            Family::Sthgp => 11,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "tsp" => Ok(Family::Tsp),
            "stgp" => Ok(Family::Stgp),
            "sthgp" => Ok(Family::Sthgp),
            _ => Err(invalid(format!("unknown family {s:?}"))),
        }
    }
}

/// Coordinate map between edge indices and edges (vertex bitmasks, vertex i is bit i).
///
/// Graph edges are ordered lexicographically; hyperedges by cardinality, then
/// lexicographically, so the 2-edges of a hypergraph come first in graph order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeIndexer {
    family: Family,
    n: usize,
    edges: Vec<u32>,
    lookup: Vec<u32>,
}

impl EdgeIndexer {
    pub fn new(family: Family, n: usize) -> Result<Self, Error> {
        if n < family.min_n() || n > 20 {
            return Err(invalid(format!("n = {n} out of range for {family}")));
        }
        let max_size = if family == Family::Sthgp { n } else { 2 };
        let mut edges = Vec::new();
        for size in 2..=max_size {
            combinations(n, size, &mut |c| edges.push(c));
        }
        let mut lookup = vec![u32::MAX; 1 << n];
        for (i, &e) in edges.iter().enumerate() {
            lookup[e as usize] = i as u32;
        }
        Ok(EdgeIndexer { family, n, edges, lookup })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn words(&self) -> usize {
        self.dim().div_ceil(64)
    }

    pub fn edge(&self, i: usize) -> u32 {
        self.edges[i]
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn index_of(&self, mask: u32) -> Option<usize> {
        match self.lookup.get(mask as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    /// Bitset of a list of edges given as vertex masks.
    pub fn encode(&self, edges: &[u32], out: &mut [u64]) {
        out.fill(0);
        for &e in edges {
            let i = self.lookup[e as usize] as usize;
            out[i / 64] |= 1 << (i % 64);
        }
    }

    /// Edge masks of a bitset.
    pub fn decode(&self, bits: &[u64]) -> Vec<u32> {
        ones(bits).map(|i| self.edges[i]).collect()
    }
}

/// Lexicographic k-subsets of {0..n} as bitmasks.
fn combinations(n: usize, k: usize, f: &mut dyn FnMut(u32)) {
    fn rec(start: usize, n: usize, k: usize, acc: u32, f: &mut dyn FnMut(u32)) {
        if k == 0 {
            f(acc);
            return;
        }
        for v in start..=n - k {
            rec(v + 1, n, k - 1, acc | 1 << v, f);
        }
    }
    rec(0, n, k, 0, f);
}

/// Indices of set bits.
pub fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        core::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// Enumerated 0/1 extreme points stored as flat bitset rows.
#[derive(Clone, Debug)]
pub struct ExtremePointSet {
    indexer: EdgeIndexer,
    words: usize,
    data: Vec<u64>,
}

impl ExtremePointSet {
    pub fn new(indexer: EdgeIndexer) -> Self {
        let words = indexer.words();
        ExtremePointSet { indexer, words, data: Vec::new() }
    }

    pub fn indexer(&self) -> &EdgeIndexer {
        &self.indexer
    }

    pub fn dim(&self) -> usize {
        self.indexer.dim()
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.words).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn push(&mut self, bits: &[u64]) {
        debug_assert_eq!(bits.len(), self.words);
        self.data.extend_from_slice(bits);
    }

    pub fn point(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.data.chunks_exact(self.words.max(1))
    }

    /// Points satisfying `h` with equality.
    pub fn incident(&self, h: &Hyperplane) -> Result<ExtremePointSet, Error> {
        let eval = h.evaluator(self.dim())?;
        let mut out = ExtremePointSet::new(self.indexer.clone());
        for p in self.iter() {
            if eval.on_plane(p) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// First pair of identical rows, if any.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by(|&a, &b| self.point(a).cmp(self.point(b)));
        order.windows(2).find(|w| self.point(w[0]) == self.point(w[1])).map(|w| (w[0], w[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `a·x (≤ | ≥ | =) b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub a: Vec<ExactScalar>,
    pub b: ExactScalar,
    pub sense: Sense,
}

impl Hyperplane {
    pub fn new(a: Vec<ExactScalar>, b: ExactScalar, sense: Sense) -> Result<Self, Error> {
        if a.iter().all(ExactScalar::is_zero) {
            return Err(invalid("hyperplane with zero normal"));
        }
        Ok(Hyperplane { a, b, sense })
    }

    pub fn from_ints(a: &[i64], b: i64, sense: Sense) -> Result<Self, Error> {
        Self::new(a.iter().map(|&v| ExactScalar::int(v)).collect(), ExactScalar::int(b), sense)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// Coefficients scaled to integers: `(a', b')` with `a' = L·a`, `b' = L·b`.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let l = self.a.iter().chain(core::iter::once(&self.b)).fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let scale = |v: &ExactScalar| v.numer() * (&l / v.denom());
        (self.a.iter().map(scale).collect(), scale(&self.b))
    }

    /// Integer coefficients as `i64`, if they fit.
    pub fn small_integer_form(&self) -> Option<(Vec<i64>, i64)> {
        let (a, b) = self.integer_form();
        let a: Option<Vec<i64>> = a.iter().map(|v| v.to_i64()).collect();
        Some((a?, b.to_i64()?))
    }

    pub fn dot(&self, x: &[ExactScalar]) -> ExactScalar {
        self.a.iter().zip(x).fold(ExactScalar::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn evaluator(&self, dim: usize) -> Result<Evaluator, Error> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        Ok(match self.small_integer_form() {
            Some((a, b)) => Evaluator::Small(a, b),
            None => {
                let (a, b) = self.integer_form();
                Evaluator::Big(a, b)
            }
        })
    }
}

pub enum Evaluator {
    Small(Vec<i64>, i64),
    Big(Vec<BigInt>, BigInt),
}

impl Evaluator {
    pub fn on_plane(&self, bits: &[u64]) -> bool {
        match self {
            Evaluator::Small(a, b) => {
                let s: i128 = ones(bits).map(|i| a[i] as i128).sum();
                s == *b as i128
            }
            Evaluator::Big(a, b) => {
                let s: BigInt = ones(bits).map(|i| &a[i]).sum();
                s == *b
            }
        }
    }
}

/// Exact coordinate-wise mean of the points.
pub fn centroid(points: &ExtremePointSet) -> Result<Vec<ExactScalar>, Error> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut counts = vec![0u64; points.dim()];
    for p in points.iter() {
        for i in ones(p) {
            counts[i] += 1;
        }
    }
    let total = points.len() as u64;
    Ok(counts.into_iter().map(|c| ExactScalar::ratio(c, total)).collect())
}

/// Number of points with `a·x = b`.
pub fn count_incident(points: &ExtremePointSet, h: &Hyperplane) -> Result<BigInt, Error> {
    let eval = h.evaluator(points.dim())?;
    Ok(BigInt::from(points.iter().filter(|p| eval.on_plane(p)).count()))
}

/// Incident count over a fraction, as an exact ratio.
pub fn incidence_ratio(points: &ExtremePointSet, h: &Hyperplane) -> Result<ExactScalar, Error> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let c = count_incident(points, h)?;
    Ok(ExactScalar::ratio(c, points.len() as u64))
}

/// Enumerate every extreme point (subject to the size guard unless `allow_large`).
pub fn enumerate(family: Family, n: usize) -> Result<ExtremePointSet, Error> {
    enumerate_with(family, n, false)
}

pub fn enumerate_with(family: Family, n: usize, allow_large: bool) -> Result<ExtremePointSet, Error> {
    let gen = Enumerator::new(family, n, allow_large)?;
    let mut out = ExtremePointSet::new(gen.indexer().clone());
    gen.visit(&mut |p| out.push(p));
    Ok(out)
}

#[cfg(test)]
mod tests;
