use super::*;
use crate::closedforms::{FacetKind, FacetSpec};
use alloc::vec::Vec;

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Count hypertrees by scanning every edge subset with the right edge material.
fn brute_hypertrees(n: usize) -> Vec<Vec<u32>> {
    let edges: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() >= 2).collect();
    let mut out = Vec::new();
    fn rec(start: usize, left: usize, n: usize, edges: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if is_hypertree(n, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..edges.len() {
            let w = edges[i].count_ones() as usize - 1;
            if w <= left {
                cur.push(edges[i]);
                rec(i + 1, left - w, n, edges, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n - 1, n, &edges, &mut Vec::new(), &mut out);
    out
}

fn facet(n: usize, kind: FacetKind) -> FacetSpec {
    FacetSpec::new(n, kind).unwrap()
}

#[test]
fn indexer_dimensions() {
    for n in 3..=8 {
        assert_eq!(EdgeIndexer::new(Family::Tsp, n).unwrap().dim(), n * (n - 1) / 2);
        assert_eq!(EdgeIndexer::new(Family::Sthgp, n).unwrap().dim(), (1 << n) - n - 1);
    }
    let idx = EdgeIndexer::new(Family::Sthgp, 3).unwrap();
    assert_eq!(idx.edges(), &[0b011, 0b101, 0b110, 0b111]);
    let g = EdgeIndexer::new(Family::Tsp, 4).unwrap();
    assert_eq!(g.edges(), &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
}

#[test]
fn tour_counts() {
    for n in 3..=9u64 {
        let pts = enumerate(Family::Tsp, n as usize).unwrap();
        assert_eq!(pts.len() as u64, factorial(n - 1) / 2, "n={n}");
        assert!(pts.find_duplicate().is_none());
    }
}

#[test]
fn cayley_counts() {
    for n in 2..=7u32 {
        let pts = enumerate(Family::Stgp, n as usize).unwrap();
        assert_eq!(pts.len() as u64, (n as u64).pow(n.saturating_sub(2)));
        assert!(pts.find_duplicate().is_none());
        for p in pts.iter() {
            assert!(is_hypertree(n as usize, &pts.indexer().decode(p)));
        }
    }
}

#[test]
fn hypertrees_match_brute_force() {
    for n in 2..=5 {
        let pts = enumerate(Family::Sthgp, n).unwrap();
        let mut got: Vec<Vec<u32>> = pts
            .iter()
            .map(|p| {
                let mut e = pts.indexer().decode(p);
                e.sort();
                e
            })
            .collect();
        got.sort();
        let mut want = brute_hypertrees(n);
        for w in &mut want {
            w.sort();
        }
        want.sort();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn hypertree_points_are_trees() {
    let pts = enumerate(Family::Sthgp, 6).unwrap();
    assert_eq!(pts.len(), 4447);
    assert!(pts.find_duplicate().is_none());
    for p in pts.iter() {
        assert!(is_hypertree(6, &pts.indexer().decode(p)));
    }
}

#[test]
fn sthgp3_points() {
    let pts = enumerate(Family::Sthgp, 3).unwrap();
    let mut rows: Vec<Vec<u32>> = pts.iter().map(|p| pts.indexer().decode(p)).collect();
    rows.sort();
    assert_eq!(rows, [vec![0b011, 0b101], vec![0b011, 0b110], vec![0b101, 0b110], vec![0b111]]);
}

#[test]
fn prefixes_partition_the_points() {
    for family in [Family::Tsp, Family::Stgp, Family::Sthgp] {
        let gen = Enumerator::new(family, 6, false).unwrap();
        let mut total = 0;
        for p in 0..gen.prefixes() {
            gen.visit_prefix(p, &mut |_| total += 1);
        }
        assert_eq!(total, enumerate(family, 6).unwrap().len());
    }
}

#[test]
fn guards_refuse_large_n() {
    assert!(matches!(enumerate(Family::Tsp, 13), Err(Error::ResourceGuard(_))));
    assert!(matches!(enumerate(Family::Sthgp, 10), Err(Error::ResourceGuard(_))));
    assert!(Enumerator::new(Family::Stgp, 10, true).is_ok());
    assert!(enumerate(Family::Tsp, 2).is_err());
}

#[test]
fn facet_coefficients() {
    let idx = EdgeIndexer::new(Family::Sthgp, 3).unwrap();
    let h = build_facet(&idx, &facet(3, FacetKind::SthgpSubtour(2))).unwrap();
    assert_eq!(h, Hyperplane::from_ints(&[1, 0, 0, 1], 1, Sense::Le).unwrap());
    let hull = affine_hull(&idx);
    assert_eq!(hull, [Hyperplane::from_ints(&[1, 1, 1, 2], 2, Sense::Eq).unwrap()]);

    let idx = EdgeIndexer::new(Family::Tsp, 5).unwrap();
    let h = build_facet(&idx, &facet(5, FacetKind::TspSubtour(2))).unwrap();
    let crossing: Vec<u32> = idx.edges().iter().copied().filter(|&e| (e & 0b11).count_ones() == 1).collect();
    assert_eq!(crossing.len(), 6);
    for (i, &e) in idx.edges().iter().enumerate() {
        assert_eq!(h.a[i], ExactScalar::int(crossing.contains(&e) as i64));
    }
    assert_eq!((h.b.clone(), h.sense), (ExactScalar::int(2), Sense::Ge));
    // wrong family is rejected
    assert!(build_facet(&idx, &facet(5, FacetKind::SthgpSubtour(2))).is_err());
}

#[test]
fn small_incidence_examples() {
    let tsp = enumerate(Family::Tsp, 5).unwrap();
    assert_eq!(tsp.len(), 12);
    let h = build_facet(tsp.indexer(), &facet(5, FacetKind::TspSubtour(2))).unwrap();
    assert_eq!(count_incident(&tsp, &h).unwrap(), BigInt::from(6));

    let st = enumerate(Family::Sthgp, 3).unwrap();
    let h = build_facet(st.indexer(), &facet(3, FacetKind::SthgpSubtour(2))).unwrap();
    assert_eq!(count_incident(&st, &h).unwrap(), BigInt::from(3));

    let sg = enumerate(Family::Stgp, 4).unwrap();
    assert_eq!(sg.len(), 16);
    let h = build_facet(sg.indexer(), &facet(4, FacetKind::StgpSubtour(2))).unwrap();
    assert_eq!(count_incident(&sg, &h).unwrap(), BigInt::from(8));
}

#[test]
fn centroid_examples() {
    let c = centroid(&enumerate(Family::Tsp, 5).unwrap()).unwrap();
    assert!(c.iter().all(|v| *v == ExactScalar::ratio(1, 2)));
    let c = centroid(&enumerate(Family::Sthgp, 3).unwrap()).unwrap();
    assert_eq!(
        c,
        [ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 4)]
    );
    let c = centroid(&enumerate(Family::Stgp, 4).unwrap()).unwrap();
    assert!(c.iter().all(|v| *v == ExactScalar::ratio(1, 2)));
    let empty = ExtremePointSet::new(EdgeIndexer::new(Family::Tsp, 4).unwrap());
    assert_eq!(centroid(&empty), Err(Error::EmptySet));
}

#[test]
fn affine_hull_contains_every_point() {
    for family in [Family::Tsp, Family::Stgp, Family::Sthgp] {
        let pts = enumerate(family, 6).unwrap();
        for h in affine_hull(pts.indexer()) {
            assert_eq!(count_incident(&pts, &h).unwrap(), BigInt::from(pts.len()));
        }
    }
}

#[test]
fn tours_avoiding_an_edge() {
    for n in 4..=9u64 {
        let pts = enumerate(Family::Tsp, n as usize).unwrap();
        let h = build_facet(pts.indexer(), &facet(n as usize, FacetKind::TspNonNeg)).unwrap();
        assert_eq!(count_incident(&pts, &h).unwrap(), BigInt::from(pts.len() as u64 - factorial(n - 2)));
    }
}

#[test]
fn comb_points_satisfy_inequality() {
    use crate::closedforms::Comb;
    let pts = enumerate(Family::Tsp, 7).unwrap();
    for c in Comb::all(7) {
        let h = build_facet(pts.indexer(), &facet(7, FacetKind::TspComb3(c))).unwrap();
        let (a, b) = h.small_integer_form().unwrap();
        let mut tight = 0;
        for p in pts.iter() {
            let lhs: i64 = ones(p).map(|i| a[i]).sum();
            assert!(lhs <= b);
            tight += (lhs == b) as usize;
        }
        assert!(tight > 0);
    }
}

#[test]
fn dimension_mismatch_is_reported() {
    let pts = enumerate(Family::Tsp, 5).unwrap();
    let h = Hyperplane::from_ints(&[1, 0, 0], 1, Sense::Le).unwrap();
    assert!(matches!(count_incident(&pts, &h), Err(Error::DimensionMismatch { .. })));
    assert!(Hyperplane::from_ints(&[0, 0], 1, Sense::Le).is_err());
}
