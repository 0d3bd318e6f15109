use std::fmt;

use anyhow::Result;
use facet_strength::closedforms::{
    stgp_subtour_cd2, stgp_subtour_epr, sthgp_subtour_angle, tsp_comb3_cd2, tsp_nonneg_cd2, tsp_nonneg_epr,
    tsp_subtour_cd2, tsp_subtour_epr, Comb, CombCd, FacetKind, FacetSpec, Sthgp, SubtourEpr,
};
use facet_strength::enumeration::{
    affine_hull, build_facet, centroid, incidence_ratio, EdgeIndexer, ExtremePointSet, Family,
};
use facet_strength::geometry::{hull_distance, projected_cosine, weak_cd, HullOptions, IncidentStream};
use facet_strength::{Error, ExactScalar};
use num_bigint::BigInt;
use serde_json::json;

use crate::compute::{face_dimension, subtour_coefficients};
use crate::config::{Check, Mode, ValidateArgs};
use crate::output::{float, Table};
use crate::parallel;

/// Tolerance for numeric distances against closed forms.
pub const TOLERANCE: f64 = 1e-7;
/// Looser tolerance for hypergraph non-negativity with k = n.
pub const OUTLIER_TOLERANCE: f64 = 1e-5;

/// Raised when any check fails; maps to its own exit code.
#[derive(Debug)]
pub struct ValidationFailed(pub usize);

impl fmt::Display for ValidationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} validation check(s) failed", self.0)
    }
}

impl std::error::Error for ValidationFailed {}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub check: &'static str,
    pub family: String,
    pub n: usize,
    pub cases: usize,
    pub passed: bool,
    pub max_deviation: f64,
}

struct Acc {
    cases: usize,
    failures: usize,
    dev: f64,
}

impl Acc {
    fn new() -> Self {
        Acc { cases: 0, failures: 0, dev: 0.0 }
    }

    fn exact(&mut self, a: &ExactScalar, b: &ExactScalar) {
        self.cases += 1;
        if a != b {
            self.failures += 1;
            self.dev = self.dev.max((a - b).abs().to_f64().max(f64::MIN_POSITIVE));
        }
    }

    fn near(&mut self, a: f64, b: f64, tol: f64) {
        self.cases += 1;
        let d = (a - b).abs();
        self.dev = self.dev.max(d);
        if d.is_nan() || d > tol {
            self.failures += 1;
        }
    }

    fn flag(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.dev = self.dev.max(1.0);
        }
    }

    fn row(self, check: &'static str, family: &str, n: usize) -> CheckRow {
        CheckRow {
            check,
            family: family.into(),
            n,
            cases: self.cases,
            passed: self.failures == 0,
            max_deviation: self.dev,
        }
    }
}

/// Every non-comb facet class of a family at `n`.
pub fn facet_specs(family: Family, n: usize) -> Vec<FacetSpec> {
    let kinds: Vec<FacetKind> = match family {
        Family::Tsp => {
            core::iter::once(FacetKind::TspNonNeg).chain((2..=n.saturating_sub(2)).map(FacetKind::TspSubtour)).collect()
        }
        Family::Sthgp => (2..=n).map(FacetKind::SthgpNonNeg).chain((2..n).map(FacetKind::SthgpSubtour)).collect(),
        Family::Stgp => (2..n).map(FacetKind::StgpSubtour).collect(),
    };
    kinds.into_iter().filter_map(|k| FacetSpec::new(n, k).ok()).collect()
}

pub fn closed_epr(spec: &FacetSpec) -> Result<ExactScalar, Error> {
    let n = spec.n;
    match spec.kind {
        FacetKind::TspNonNeg => tsp_nonneg_epr(n),
        FacetKind::TspSubtour(k) => tsp_subtour_epr(n, k),
        FacetKind::SthgpNonNeg(k) => Sthgp::new(n)?.nonneg_epr(k),
        FacetKind::SthgpSubtour(k) => SubtourEpr::new(n)?.fast(k),
        FacetKind::StgpSubtour(k) => stgp_subtour_epr(n, k),
        FacetKind::TspComb3(_) => Err(Error::InvalidParameter("no closed form for comb ratios".into())),
    }
}

pub fn closed_cd2(spec: &FacetSpec) -> Result<ExactScalar, Error> {
    let n = spec.n;
    match spec.kind {
        FacetKind::TspNonNeg => tsp_nonneg_cd2(n),
        FacetKind::TspSubtour(k) => Ok(tsp_subtour_cd2(n, k)?.0),
        FacetKind::TspComb3(c) => tsp_comb3_cd2(&c),
        FacetKind::SthgpNonNeg(k) => Ok(Sthgp::new(n)?.nonneg_cd(k)?.squared()),
        FacetKind::SthgpSubtour(k) => Ok(Sthgp::new(n)?.subtour_cd(k)?.squared()),
        FacetKind::StgpSubtour(k) => stgp_subtour_cd2(n, k),
    }
}

fn expected_count(family: Family, n: usize) -> BigInt {
    match family {
        Family::Tsp => (1..n).map(BigInt::from).product::<BigInt>() / 2,
        Family::Stgp => BigInt::from(n).pow(n as u32 - 2),
        Family::Sthgp => Sthgp::new(n).map(|mut s| s.tree_count()).unwrap_or_default(),
    }
}

fn expected_centroid(family: Family, n: usize, edge: u32) -> ExactScalar {
    match family {
        Family::Tsp => ExactScalar::ratio(2, n as i64 - 1),
        Family::Stgp => ExactScalar::ratio(2, n as i64),
        Family::Sthgp => {
            let mut s = Sthgp::new(n).unwrap();
            ExactScalar::new(s.trees_with_edge(edge.count_ones() as usize).unwrap(), s.tree_count()).unwrap()
        }
    }
}

/// Classes whose normal and weak distances are known to coincide.
pub fn normal_equals_weak(spec: &FacetSpec) -> bool {
    matches!(spec.kind, FacetKind::TspNonNeg | FacetKind::TspSubtour(_) | FacetKind::StgpSubtour(_))
}

fn cd_checks(points: &ExtremePointSet, family: Family, n: usize, mode: Mode, rows: &mut Vec<CheckRow>) -> Result<()> {
    let cen = centroid(points)?;
    let hull = affine_hull(points.indexer());
    let (mut exact, mut affine, mut normal) = (Acc::new(), Acc::new(), Acc::new());
    for spec in facet_specs(family, n) {
        let Ok(want) = closed_cd2(&spec) else { continue };
        let h = build_facet(points.indexer(), &spec)?;
        let inc = IncidentStream::new(points, &h)?;
        let tol = if matches!(spec.kind, FacetKind::SthgpNonNeg(k) if k == n) { OUTLIER_TOLERANCE } else { TOLERANCE };
        if matches!(mode, Mode::Weak | Mode::Both) {
            if let [eq] = hull.as_slice() {
                exact.exact(&weak_cd(&h.a, &h.b, &eq.a, &eq.b, &cen)?.distance_squared, &want);
            }
        }
        if matches!(mode, Mode::Qp | Mode::Both) {
            let opts = HullOptions { affine_dim: Some(face_dimension(points.indexer())), ..HullOptions::affine() };
            let weak = hull_distance(&inc, &cen, &opts)?.distance_squared;
            affine.near(weak, want.to_f64(), tol);
            let bounded = hull_distance(&inc, &cen, &HullOptions::default())?.distance_squared;
            if normal_equals_weak(&spec) {
                normal.near(bounded, want.to_f64(), tol);
            }
        }
    }
    let name = family.name();
    for (check, acc) in [("cd-weak-exact", exact), ("cd-affine-hull", affine), ("cd-normal", normal)] {
        if acc.cases > 0 {
            rows.push(acc.row(check, name, n));
        }
    }
    Ok(())
}

pub fn family_checks(
    family: Family,
    n: usize,
    checks: &[Check],
    mode: Mode,
    allow_large: bool,
) -> Result<Vec<CheckRow>> {
    let points = parallel::enumerate(family, n, allow_large)?;
    let name = family.name();
    let mut rows = Vec::new();
    if checks.contains(&Check::Count) {
        let mut acc = Acc::new();
        acc.flag(BigInt::from(points.len()) == expected_count(family, n));
        acc.flag(points.find_duplicate().is_none());
        rows.push(acc.row("count", name, n));
    }
    if checks.contains(&Check::Epr) {
        let mut acc = Acc::new();
        for spec in facet_specs(family, n) {
            let h = build_facet(points.indexer(), &spec)?;
            let got = incidence_ratio(&points, &h)?;
            acc.exact(&got, &closed_epr(&spec)?);
            if let FacetKind::SthgpSubtour(k) = spec.kind {
                acc.exact(&got, &SubtourEpr::new(n)?.direct(k)?);
            }
        }
        rows.push(acc.row("epr", name, n));
    }
    if checks.contains(&Check::Centroid) {
        let mut acc = Acc::new();
        for (c, &e) in centroid(&points)?.iter().zip(points.indexer().edges()) {
            acc.exact(c, &expected_centroid(family, n, e));
        }
        rows.push(acc.row("centroid", name, n));
    }
    let cd_from = if family == Family::Tsp { 4 } else { 3 };
    if checks.contains(&Check::Cd) && n >= cd_from {
        cd_checks(&points, family, n, mode, &mut rows)?;
    }
    Ok(rows)
}

/// Every `(p, q, r)` with a defined angle at `n`.
pub fn angle_tuples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for r in 0..=n {
        for p in 0..=n - r {
            for q in 0..=n - r - p {
                if sthgp_subtour_angle(n, p, q, r).is_ok() {
                    out.push((p, q, r));
                }
            }
        }
    }
    out
}

pub fn angle_check(n: usize) -> Result<CheckRow> {
    let idx = EdgeIndexer::new(Family::Sthgp, n)?;
    let (c, _) = affine_hull(&idx)[0].small_integer_form().expect("small affine hull");
    let mut acc = Acc::new();
    for (p, q, r) in angle_tuples(n) {
        let (closed, _) = sthgp_subtour_angle(n, p, q, r)?;
        let a1 = subtour_coefficients(&idx, (1u32 << (p + r)) - 1);
        let a2 = subtour_coefficients(&idx, ((1u32 << (q + r)) - 1) << p);
        let first = projected_cosine(&a1, &a2, &c)?;
        acc.flag(first == closed);
    }
    Ok(acc.row("angle", "sthgp", n))
}

pub fn partial_sum_check(n: usize) -> Result<CheckRow> {
    let mut ctx = Sthgp::new(n)?;
    let mut acc = Acc::new();
    for k in 2..n {
        let (a, b) = ctx.partial_sums(k)?;
        acc.exact(&(a + b), &ctx.subtour_cd(k)?.squared());
    }
    Ok(acc.row("partial-sums", "sthgp", n))
}

/// Comb checks at `n`; also returns the widest normal-minus-weak gap.
pub fn comb_check(n: usize, allow_large: bool) -> Result<(CheckRow, f64)> {
    let points = parallel::enumerate(Family::Tsp, n, allow_large)?;
    let cen = centroid(&points)?;
    let cd = CombCd::new();
    let opts = HullOptions { affine_dim: Some(face_dimension(points.indexer())), ..HullOptions::affine() };
    let mut weak = Acc::new();
    let mut widest = 0.0f64;
    for c in Comb::all(n) {
        let spec = FacetSpec::new(n, FacetKind::TspComb3(c))?;
        let h = build_facet(points.indexer(), &spec)?;
        let inc = IncidentStream::new(&points, &h)?;
        let d = hull_distance(&inc, &cen, &opts)?.distance_squared;
        weak.near(d, cd.cd2(&c)?.to_f64(), TOLERANCE);
        let normal = hull_distance(&inc, &cen, &HullOptions::default())?.distance_squared;
        widest = widest.max(normal - d);
    }
    Ok((weak.row("comb-affine-hull", "tsp", n), widest))
}

fn guard(family: Family, max_n: usize, allow_large: bool) -> Result<()> {
    let limit = if allow_large { family.ceiling() } else { family.guard() };
    if max_n > limit {
        return Err(Error::ResourceGuard(format!(
            "{family} validation above n={limit} needs --allow-large (ceiling {})",
            family.ceiling()
        ))
        .into());
    }
    Ok(())
}

pub fn run_checks(args: &ValidateArgs) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let special = args.angles || args.partial_sums || args.combs;
    if args.angles {
        for n in 3..=args.max_n.unwrap_or(15) {
            rows.push(angle_check(n)?);
        }
    }
    if args.partial_sums {
        for n in 3..=args.max_n.unwrap_or(100) {
            rows.push(partial_sum_check(n)?);
        }
    }
    if args.combs {
        let max = args.max_n.unwrap_or(9);
        guard(Family::Tsp, max, args.allow_large)?;
        let (mut pattern, mut widest) = (Acc::new(), 0.0f64);
        for n in 6..=max {
            let (row, gap) = comb_check(n, args.allow_large)?;
            rows.push(row);
            widest = widest.max(gap);
        }
        // normal and weak must differ for at least one comb in the range
        pattern.flag(widest > TOLERANCE);
        let mut row = pattern.row("comb-normal-vs-weak", "tsp", max);
        row.max_deviation = widest;
        rows.push(row);
    }
    if !special {
        let families = match args.family {
            Some(f) => vec![f.into()],
            None => vec![Family::Tsp, Family::Stgp, Family::Sthgp],
        };
        for family in families {
            let max = args.max_n.unwrap_or(match family {
                Family::Tsp => 8,
                Family::Stgp => 7,
                Family::Sthgp => 6,
            });
            guard(family, max, args.allow_large)?;
            for n in family.min_n().max(3)..=max {
                rows.extend(family_checks(family, n, &args.measure, args.mode, args.allow_large)?);
            }
        }
    }
    Ok(rows)
}

pub fn report(rows: &[CheckRow]) -> Table {
    let mut t = Table::new(&["check", "family", "n", "cases", "status", "max_deviation"]);
    for r in rows {
        let status = if r.passed { "pass" } else { "fail" };
        t.push(vec![
            json!(r.check),
            json!(r.family),
            json!(r.n),
            json!(r.cases),
            json!(status),
            float(r.max_deviation),
        ]);
    }
    t
}
