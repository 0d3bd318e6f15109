use alloc::format;

use crate::enumeration::Family;
use crate::error::{invalid, Error};

/// Sizes of the eight vertex classes of a 3-toothed comb, in the order
/// B1, T1, B2, T2, B3, T3, H, O. Tooth i is Bi ∪ Ti, the handle is H ∪ B1 ∪ B2 ∪ B3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Comb {
    pub b: [usize; 3],
    pub t: [usize; 3],
    pub h: usize,
    pub o: usize,
}

impl Comb {
    pub fn new(b: [usize; 3], t: [usize; 3], h: usize, o: usize) -> Result<Self, Error> {
        if b.iter().chain(&t).any(|&v| v == 0) {
            return Err(invalid("comb classes B_i and T_i must be nonempty"));
        }
        Ok(Comb { b, t, h, o })
    }

    /// Parse `b1,t1,b2,t2,b3,t3,h,o`.
    pub fn from_slice(v: &[usize]) -> Result<Self, Error> {
        if v.len() != 8 {
            return Err(invalid("a comb needs 8 class sizes"));
        }
        Comb::new([v[0], v[2], v[4]], [v[1], v[3], v[5]], v[6], v[7])
    }

    pub fn n(&self) -> usize {
        self.b.iter().sum::<usize>() + self.t.iter().sum::<usize>() + self.h + self.o
    }

    /// Class sizes in vertex-labelling order.
    pub fn classes(&self) -> [usize; 8] {
        [self.b[0], self.t[0], self.b[1], self.t[1], self.b[2], self.t[2], self.h, self.o]
    }

    /// Every valid comb on `n` vertices.
    pub fn all(n: usize) -> alloc::vec::Vec<Comb> {
        let mut out = alloc::vec::Vec::new();
        if n < 6 {
            return out;
        }
        let mut parts = [1usize; 8];
        parts[6] = 0;
        parts[7] = 0;
        fn rec(i: usize, left: usize, parts: &mut [usize; 8], out: &mut alloc::vec::Vec<Comb>) {
            if i == 7 {
                parts[7] += left;
                out.push(Comb::from_slice(parts).unwrap());
                parts[7] -= left;
                return;
            }
            for extra in 0..=left {
                parts[i] += extra;
                rec(i + 1, left - extra, parts, out);
                parts[i] -= extra;
            }
        }
        rec(0, n - 6, &mut parts, &mut out);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FacetKind {
    TspNonNeg,
    TspSubtour(usize),
    TspComb3(Comb),
    SthgpNonNeg(usize),
    SthgpSubtour(usize),
    StgpSubtour(usize),
}

/// One inequality instance on a polytope with `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FacetSpec {
    pub n: usize,
    pub kind: FacetKind,
}

impl FacetSpec {
    pub fn new(n: usize, kind: FacetKind) -> Result<Self, Error> {
        let s = FacetSpec { n, kind };
        s.validate()?;
        Ok(s)
    }

    pub fn family(&self) -> Family {
        match self.kind {
            FacetKind::TspNonNeg | FacetKind::TspSubtour(_) | FacetKind::TspComb3(_) => Family::Tsp,
            FacetKind::SthgpNonNeg(_) | FacetKind::SthgpSubtour(_) => Family::Sthgp,
            FacetKind::StgpSubtour(_) => Family::Stgp,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n;
        let ok = match self.kind {
            FacetKind::TspNonNeg => n >= 3,
            FacetKind::TspSubtour(k) => k >= 2 && k + 2 <= n,
            FacetKind::TspComb3(c) => c.n() == n,
            FacetKind::SthgpNonNeg(k) => k >= 2 && k <= n,
            FacetKind::SthgpSubtour(k) | FacetKind::StgpSubtour(k) => k >= 2 && k < n,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("{:?} is not valid for n = {n}", self.kind)))
        }
    }
}
