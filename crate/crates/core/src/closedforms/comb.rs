//! Weak centroid distance of 3-toothed comb facets.
//!
//! Each term below is written with tooth subscripts i, j, k. A term stands
//! for the sum of its distinct monomials over all assignments of distinct
//! teeth to the subscripts it uses.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::spec::Comb;
use crate::error::{invalid, Error};
use crate::exactnum::ExactScalar;

const A_TERMS: &[&str] = &["1 bi ti", "2 bi bj", "3 bi tj", "2 ti tj", "1 bi h", "2 ti h", "2 bi o", "1 ti o", "1 h o"];

const B_TERMS: &[&str] = &[
    "1 bi^2 ti^2",
    "2 bi^2 ti tj",
    "4 bi^2 bj^2",
    "2 bi^2 bj bk",
    "2 bi^2 bj tk",
    "9 bi^2 tj^2",
    "8 bi^2 tj tk",
    "2 bi ti^2 bj",
    "4 ti^2 tj^2",
    "8 ti^2 bj bk",
    "2 ti^2 bj tk",
    "2 ti^2 tj tk",
    "12 bi ti bj tj",
    "8 bi ti bj^2",
    "4 bi ti bj bk",
    "4 bi ti bj tk",
    "4 bi ti tj tk",
    "8 bi ti tj^2",
    "1 bi^2 h^2",
    "4 ti^2 h^2",
    "2 bi ti h^2",
    "2 ti tj h^2",
    "2 bi^2 bj h",
    "2 bi^2 tj h",
    "4 bi tj tk h",
    "2 bi ti^2 h",
    "4 bi ti bj h",
    "4 bi ti tj h",
    "8 ti^2 bj h",
    "2 ti^2 tj h",
    "2 bi ti o^2",
    "4 bi^2 o^2",
    "2 bi bj o^2",
    "1 ti^2 o^2",
    "2 bi h o^2",
    "1 h^2 o^2",
    "2 bi^2 ti o",
    "2 bi^2 bj o",
    "8 bi^2 tj o",
    "2 ti^2 bj o",
    "2 ti^2 tj o",
    "4 bi bj tk o",
    "4 bi ti bj o",
    "4 bi ti tj o",
    "4 bi ti h o",
    "2 bi^2 h o",
    "4 bi tj h o",
    "2 ti^2 h o",
    "2 ti h^2 o",
    "-1 bi^2 ti",
    "-1 bi ti^2",
    "-4 bi^2 bj",
    "-9 bi^2 tj",
    "-9 ti^2 bj",
    "-4 ti^2 tj",
    "-6 bi bj bk",
    "-10 bi ti bj",
    "-10 bi ti tj",
    "-12 bi bj tk",
    "-12 bi tj tk",
    "-6 ti tj tk",
    "-1 bi h^2",
    "-4 ti h^2",
    "-1 h^2 o",
    "-1 bi^2 h",
    "-4 bi bj h",
    "-4 ti^2 h",
    "-10 bi tj h",
    "-4 bi ti h",
    "-6 ti tj h",
    "-4 bi o^2",
    "-1 ti o^2",
    "-1 h o^2",
    "-4 bi^2 o",
    "-1 ti^2 o",
    "-4 bi ti o",
    "-6 bi bj o",
    "-10 bi tj o",
    "-4 ti tj o",
    "-4 bi h o",
    "-4 ti h o",
    "4 bi bj",
    "1 bi ti",
    "9 bi tj",
    "4 ti tj",
    "1 bi h",
    "4 ti h",
    "4 bi o",
    "1 ti o",
    "1 h o",
];

/// Exponents over the variables b1, b2, b3, t1, t2, t3, h, o.
type Monomial = [u8; 8];

/// A polynomial in the comb class sizes, expanded from subscripted terms.
#[derive(Clone, Debug)]
pub struct CombPolynomial {
    terms: Vec<(i64, Monomial)>,
}

enum Factor {
    Tooth { base: usize, slot: usize },
    Plain(usize),
}

fn parse_term(s: &str) -> (i64, Vec<(Factor, u8)>) {
    let mut it = s.split_whitespace();
    let coef = it.next().and_then(|c| c.parse().ok()).expect("term coefficient");
    let factors = it
        .map(|f| {
            let (name, pow) = match f.split_once('^') {
                Some((a, p)) => (a, p.parse().expect("term power")),
                None => (f, 1),
            };
            let factor = match name.as_bytes() {
                [b'h'] => Factor::Plain(6),
                [b'o'] => Factor::Plain(7),
                [v, s] => Factor::Tooth { base: if *v == b'b' { 0 } else { 3 }, slot: (s - b'i') as usize },
                _ => panic!("bad factor {f}"),
            };
            (factor, pow)
        })
        .collect();
    (coef, factors)
}

const ASSIGNMENTS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl CombPolynomial {
    fn expand(src: &[&str]) -> Self {
        let mut terms = Vec::new();
        for s in src {
            let (coef, factors) = parse_term(s);
            let mut seen = BTreeSet::new();
            for teeth in ASSIGNMENTS {
                let mut mono = [0u8; 8];
                for (f, p) in &factors {
                    let var = match f {
                        Factor::Tooth { base, slot } => base + teeth[*slot],
                        Factor::Plain(v) => *v,
                    };
                    mono[var] += p;
                }
                if seen.insert(mono) {
                    terms.push((coef, mono));
                }
            }
        }
        CombPolynomial { terms }
    }

    /// `A` without its `−5(n−1)` part.
    pub fn a() -> Self {
        Self::expand(A_TERMS)
    }

    pub fn b() -> Self {
        Self::expand(B_TERMS)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, c: &Comb) -> BigInt {
        let vals = [c.b[0], c.b[1], c.b[2], c.t[0], c.t[1], c.t[2], c.h, c.o].map(BigInt::from);
        let mut total = BigInt::zero();
        for (coef, mono) in &self.terms {
            let mut t = BigInt::from(*coef);
            for (v, &e) in vals.iter().zip(mono) {
                for _ in 0..e {
                    t *= v;
                }
            }
            total += t;
        }
        total
    }
}

/// Reusable evaluator for many combs.
#[derive(Clone, Debug)]
pub struct CombCd {
    a: CombPolynomial,
    b: CombPolynomial,
}

impl Default for CombCd {
    fn default() -> Self {
        CombCd { a: CombPolynomial::a(), b: CombPolynomial::b() }
    }
}

impl CombCd {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(A, B)` for the comb.
    pub fn parts(&self, c: &Comb) -> (BigInt, BigInt) {
        let n = c.n() as i64;
        (self.a.eval(c) - BigInt::from(5 * (n - 1)), self.b.eval(c))
    }

    pub fn cd2(&self, c: &Comb) -> Result<ExactScalar, Error> {
        let n = c.n() as i64;
        if n < 6 {
            return Err(invalid("a 3-toothed comb needs n >= 6"));
        }
        let (a, b) = self.parts(c);
        let num = BigInt::from(2 * (n - 2)) * &a * &a;
        ExactScalar::new(num, b * BigInt::from(n - 1))
    }
}

/// Weak centroid distance squared of a 3-toothed comb.
pub fn tsp_comb3_cd2(c: &Comb) -> Result<ExactScalar, Error> {
    CombCd::new().cd2(c)
}

/// The same distance for single-vertex teeth, as a function of n and |H|.
pub fn tsp_comb3_reduced(n: usize, h: usize) -> Result<ExactScalar, Error> {
    if n < h + 6 {
        return Err(invalid("need n >= h + 6"));
    }
    let (n, h) = (BigInt::from(n), BigInt::from(h));
    let a = (&h + 4) * &n - (&h * &h + &h * 6 + 16);
    let f2 = &h * &h + &h * 5 + 12;
    let f1 = &h * &h * &h * 2 + &h * &h * 17 + &h * 59 + 96;
    let f0 = &h * &h * &h * &h + &h * &h * &h * 12 + &h * &h * 65 + &h * 174 + 228;
    let b = f2 * &n * &n - f1 * &n + f0;
    ExactScalar::new((&n - 2) * 2 * &a * &a, (&n - BigInt::one()) * b)
}

/// Large-n limit of the single-vertex-teeth distance.
pub fn tsp_comb3_small_limit(h: usize) -> ExactScalar {
    let h = h as i64;
    ExactScalar::ratio(2 * h * h + 16 * h + 32, h * h + 5 * h + 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(h: usize, o: usize) -> Comb {
        Comb::new([1; 3], [1; 3], h, o).unwrap()
    }

    #[test]
    fn smallest_comb() {
        let c = unit(0, 0);
        assert_eq!(CombCd::new().parts(&c), (BigInt::from(8), BigInt::from(84)));
        assert_eq!(tsp_comb3_cd2(&c).unwrap(), ExactScalar::ratio(128, 105));
    }

    #[test]
    fn expansion_sizes() {
        assert_eq!(CombPolynomial::a().len(), 28);
        assert_eq!(CombPolynomial::b().len(), 348);
    }

    #[test]
    fn reduced_form_agrees() {
        let cd = CombCd::new();
        for n in 6..=30 {
            for h in 0..=n - 6 {
                assert_eq!(cd.cd2(&unit(h, n - h - 6)).unwrap(), tsp_comb3_reduced(n, h).unwrap(), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn limits() {
        let want = [(8, 3), (25, 9), (36, 13), (49, 18), (8, 3)];
        for (h, (p, q)) in want.into_iter().enumerate() {
            assert_eq!(tsp_comb3_small_limit(h), ExactScalar::ratio(p, q));
        }
        // the general formula approaches the limit from finite differences
        let cd = CombCd::new();
        for h in 0..5 {
            let ab = |n: usize| cd.parts(&unit(h, n - h - 6));
            let (a0, b0) = ab(20);
            let (a1, b1) = ab(21);
            let (_, b2) = ab(22);
            let slope = a1 - a0;
            let curvature = (b2 - &b1 * 2 + b0) / 2;
            assert_eq!(ExactScalar::new(slope.clone() * slope * 2, curvature).unwrap(), tsp_comb3_small_limit(h));
        }
        assert!((tsp_comb3_small_limit(100_000).to_f64() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn tooth_relabelling_invariance() {
        let cd = CombCd::new();
        let c = Comb::new([1, 2, 3], [4, 1, 2], 2, 1).unwrap();
        let d = Comb::new([3, 1, 2], [2, 4, 1], 2, 1).unwrap();
        assert_eq!(cd.cd2(&c).unwrap(), cd.cd2(&d).unwrap());
    }
}
