use alloc::vec::Vec;

use super::{EdgeIndexer, Family, Hyperplane, Sense};
use crate::closedforms::{FacetKind, FacetSpec};
use crate::error::{invalid, Error};

/// Coefficient vector of a facet, with subtours on the first k vertices and
/// comb classes laid out consecutively in the order B1, T1, B2, T2, B3, T3, H, O.
pub fn build_facet(indexer: &EdgeIndexer, spec: &FacetSpec) -> Result<Hyperplane, Error> {
    spec.validate()?;
    if spec.family() != indexer.family() || spec.n != indexer.n() {
        return Err(invalid("facet does not match the coordinate system"));
    }
    let first = |k: usize| (1u32 << k) - 1;
    let inside = |e: u32, s: u32| (e & !s == 0) as i64;
    let (a, b, sense): (Vec<i64>, i64, Sense) = match spec.kind {
        FacetKind::TspNonNeg => {
            let mut a = alloc::vec![0; indexer.dim()];
            a[0] = 1;
            (a, 0, Sense::Ge)
        }
        FacetKind::SthgpNonNeg(k) => {
            let mut a = alloc::vec![0; indexer.dim()];
            a[indexer.index_of(first(k)).unwrap()] = 1;
            (a, 0, Sense::Ge)
        }
        FacetKind::TspSubtour(k) => {
            let s = first(k);
            let a = indexer.edges().iter().map(|&e| ((e & s).count_ones() == 1) as i64).collect();
            (a, 2, Sense::Ge)
        }
        FacetKind::StgpSubtour(k) => {
            let s = first(k);
            (indexer.edges().iter().map(|&e| inside(e, s)).collect(), k as i64 - 1, Sense::Le)
        }
        FacetKind::SthgpSubtour(k) => {
            let s = first(k);
            let a = indexer.edges().iter().map(|&e| ((e & s).count_ones() as i64 - 1).max(0)).collect();
            (a, k as i64 - 1, Sense::Le)
        }
        FacetKind::TspComb3(c) => {
            let mut class_masks = [0u32; 8];
            let mut next = 0;
            for (i, &size) in c.classes().iter().enumerate() {
                class_masks[i] = first(next + size) & !first(next);
                next += size;
            }
            let teeth: Vec<u32> = (0..3).map(|i| class_masks[2 * i] | class_masks[2 * i + 1]).collect();
            let handle = class_masks[6] | class_masks[0] | class_masks[2] | class_masks[4];
            let a = indexer
                .edges()
                .iter()
                .map(|&e| inside(e, handle) + teeth.iter().map(|&t| inside(e, t)).sum::<i64>())
                .collect();
            let rhs = handle.count_ones() as i64 + teeth.iter().map(|t| t.count_ones() as i64).sum::<i64>() - 5;
            (a, rhs, Sense::Le)
        }
    };
    Hyperplane::from_ints(&a, b, sense)
}

/// Equations satisfied by every extreme point: one degree equation per vertex
/// for tours, total edge material `Σ(|e|−1)x_e = n−1` for trees.
pub fn affine_hull(indexer: &EdgeIndexer) -> Vec<Hyperplane> {
    let n = indexer.n();
    match indexer.family() {
        Family::Tsp => (0..n)
            .map(|v| {
                let a: Vec<i64> = indexer.edges().iter().map(|&e| (e >> v & 1) as i64).collect();
                Hyperplane::from_ints(&a, 2, Sense::Eq).unwrap()
            })
            .collect(),
        Family::Stgp | Family::Sthgp => {
            let a: Vec<i64> = indexer.edges().iter().map(|&e| e.count_ones() as i64 - 1).collect();
            alloc::vec![Hyperplane::from_ints(&a, n as i64 - 1, Sense::Eq).unwrap()]
        }
    }
}
