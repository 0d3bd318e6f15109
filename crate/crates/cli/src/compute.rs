use anyhow::{anyhow, bail, Result};
use facet_strength::analysis::{Evaluator, Measure, Value};
use facet_strength::closedforms::{
    sthgp_subtour_angle, tsp_comb3_cd2, tsp_nonneg_cd2, tsp_nonneg_epr, Comb, FacetKind, FacetSpec,
};
use facet_strength::enumeration::{affine_hull, build_facet, centroid, incidence_ratio, EdgeIndexer, Family};
use facet_strength::geometry::{hull_distance, projected_cosine, weak_cd, HullOptions, IncidentStream};
use serde_json::{json, Value as Json};

use crate::config::{ComputeArgs, FacetArg, Mode, Source};
use crate::output::{float, Table};
use crate::parallel;

pub const HEADER: &[&str] = &["family", "n", "facet", "params", "measure", "exact", "float", "source"];

/// One computed indicator.
#[derive(Clone, Debug, PartialEq)]
pub struct Reading {
    pub measure: String,
    pub exact: Option<String>,
    pub value: f64,
    pub source: &'static str,
}

impl Reading {
    fn from_value(measure: Measure, v: &Value, source: &'static str) -> Self {
        Reading { measure: measure.name().into(), exact: v.exact_string(), value: v.to_f64(), source }
    }

    /// A squared distance reported as `cd2` or `cd`.
    fn from_distance(measure: Measure, d2: f64, source: &'static str) -> Self {
        let value = if measure == Measure::Cd { d2.max(0.0).sqrt() } else { d2 };
        Reading { measure: measure.name().into(), exact: None, value, source }
    }
}

pub fn facet_spec(args: &ComputeArgs) -> Result<FacetSpec> {
    let family: Family = args.family.into();
    let k = || args.k.ok_or_else(|| anyhow!("--k is required for this facet"));
    let kind = match (family, args.facet) {
        (Family::Tsp, FacetArg::Nonneg) => FacetKind::TspNonNeg,
        (Family::Tsp, FacetArg::Subtour) => FacetKind::TspSubtour(k()?),
        (Family::Tsp, FacetArg::Comb) => {
            let c = args.comb.as_ref().ok_or_else(|| anyhow!("--comb b1,t1,b2,t2,b3,t3,h,o is required"))?;
            FacetKind::TspComb3(Comb::from_slice(c)?)
        }
        (Family::Sthgp, FacetArg::Nonneg) => FacetKind::SthgpNonNeg(k()?),
        (Family::Sthgp, FacetArg::Subtour) => FacetKind::SthgpSubtour(k()?),
        (Family::Stgp, FacetArg::Subtour) => FacetKind::StgpSubtour(k()?),
        (f, facet) => bail!("{facet:?} is not available for {f}"),
    };
    Ok(FacetSpec::new(args.n, kind)?)
}

fn params(spec: &FacetSpec) -> String {
    match spec.kind {
        FacetKind::TspNonNeg => String::new(),
        FacetKind::TspComb3(c) => {
            format!("comb={}", c.classes().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        }
        FacetKind::TspSubtour(k)
        | FacetKind::SthgpNonNeg(k)
        | FacetKind::SthgpSubtour(k)
        | FacetKind::StgpSubtour(k) => {
            format!("k={k}")
        }
    }
}

pub fn closed_form(spec: &FacetSpec, measure: Measure, threshold: usize) -> Result<Reading> {
    const SRC: &str = "closed-form";
    let value = match spec.kind {
        FacetKind::TspNonNeg => match measure {
            Measure::Epr => Value::Exact(tsp_nonneg_epr(spec.n)?),
            Measure::Cd2 => Value::Exact(tsp_nonneg_cd2(spec.n)?),
            Measure::Cd => Value::Sqrt(tsp_nonneg_cd2(spec.n)?),
        },
        FacetKind::TspComb3(c) => match measure {
            Measure::Epr => bail!("no closed form is known for the extreme point ratio of combs"),
            Measure::Cd2 => Value::Exact(tsp_comb3_cd2(&c)?),
            Measure::Cd => Value::Sqrt(tsp_comb3_cd2(&c)?),
        },
        FacetKind::TspSubtour(k) | FacetKind::StgpSubtour(k) | FacetKind::SthgpSubtour(k) => {
            let facet = facet_strength::analysis::SweepFacet::Subtour;
            Evaluator::new(spec.family(), facet, spec.n, measure, threshold)?.value(k)?
        }
        FacetKind::SthgpNonNeg(k) => {
            let facet = facet_strength::analysis::SweepFacet::NonNeg;
            Evaluator::new(spec.family(), facet, spec.n, measure, threshold)?.value(k)?
        }
    };
    Ok(Reading::from_value(measure, &value, SRC))
}

/// Affine dimension of a facet's face, used to stop the affine-hull scan early.
pub fn face_dimension(indexer: &EdgeIndexer) -> usize {
    let equations = affine_hull(indexer).len();
    indexer.dim() - equations - 1
}

pub fn oracle(spec: &FacetSpec, measures: &[Measure], mode: Mode, allow_large: bool) -> Result<Vec<Reading>> {
    let points = parallel::enumerate(spec.family(), spec.n, allow_large)?;
    let h = build_facet(points.indexer(), spec)?;
    let mut out = Vec::new();
    let mut cen = None;
    for &m in measures {
        if m == Measure::Epr {
            let v = Value::Exact(incidence_ratio(&points, &h)?);
            out.push(Reading::from_value(m, &v, "enumeration"));
            continue;
        }
        let c = match &cen {
            Some(c) => c,
            None => cen.insert(centroid(&points)?),
        };
        if matches!(mode, Mode::Weak | Mode::Both) {
            let hull = affine_hull(points.indexer());
            if let [eq] = hull.as_slice() {
                let p = weak_cd(&h.a, &h.b, &eq.a, &eq.b, c)?;
                let v =
                    if m == Measure::Cd { Value::Sqrt(p.distance_squared) } else { Value::Exact(p.distance_squared) };
                out.push(Reading::from_value(m, &v, "projection"));
            } else {
                let inc = IncidentStream::new(&points, &h)?;
                let opts = HullOptions { affine_dim: Some(face_dimension(points.indexer())), ..HullOptions::affine() };
                let r = hull_distance(&inc, c, &opts)?;
                out.push(Reading::from_distance(m, r.distance_squared, "affine-hull"));
            }
        }
        if matches!(mode, Mode::Qp | Mode::Both) {
            let inc = IncidentStream::new(&points, &h)?;
            let r = hull_distance(&inc, c, &HullOptions::default())?;
            out.push(Reading::from_distance(m, r.distance_squared, "min-norm"));
        }
    }
    Ok(out)
}

/// Coefficients `max(|e ∩ S| − 1, 0)` of the hypergraph subtour on vertex mask `s`.
pub fn subtour_coefficients(indexer: &EdgeIndexer, s: u32) -> Vec<i64> {
    indexer.edges().iter().map(|&e| ((e & s).count_ones() as i64 - 1).max(0)).collect()
}

pub fn angle_readings(n: usize, pqr: &[usize], source: Source) -> Result<Vec<Reading>> {
    let &[p, q, r] = pqr else { bail!("--angle takes p,q,r") };
    let mut out = Vec::new();
    if matches!(source, Source::Closed | Source::Both) {
        let (cos, theta) = sthgp_subtour_angle(n, p, q, r)?;
        out.push(Reading {
            measure: "cos_phi".into(),
            exact: Some(cos.to_string()),
            value: cos.value(),
            source: "closed-form",
        });
        out.push(Reading { measure: "theta".into(), exact: None, value: theta, source: "closed-form" });
    }
    if matches!(source, Source::Oracle | Source::Both) {
        sthgp_subtour_angle(n, p, q, r)?;
        let idx = EdgeIndexer::new(Family::Sthgp, n)?;
        let (c, _) = affine_hull(&idx)[0].small_integer_form().ok_or_else(|| anyhow!("affine hull too large"))?;
        let a1 = subtour_coefficients(&idx, (1u32 << (p + r)) - 1);
        let a2 = subtour_coefficients(&idx, ((1u32 << (q + r)) - 1) << p);
        let cos = projected_cosine(&a1, &a2, &c)?;
        out.push(Reading {
            measure: "cos_phi".into(),
            exact: Some(cos.to_string()),
            value: cos.value(),
            source: "projection",
        });
        out.push(Reading { measure: "theta".into(), exact: None, value: cos.theta(), source: "projection" });
    }
    Ok(out)
}

pub fn run(args: &ComputeArgs) -> Result<Table> {
    let family: Family = args.family.into();
    let mut table = Table::new(HEADER);
    let row = |t: &mut Table, facet: &str, params: &str, r: Reading| {
        t.push(vec![
            json!(family.name()),
            json!(args.n),
            json!(facet),
            json!(params),
            json!(r.measure),
            r.exact.map(Json::String).unwrap_or(Json::Null),
            float(r.value),
            json!(r.source),
        ])
    };
    if let Some(pqr) = &args.angle {
        if family != Family::Sthgp {
            bail!("angles are defined for hypergraph subtours only");
        }
        let params = format!("angle={}", pqr.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        for r in angle_readings(args.n, pqr, args.source)? {
            row(&mut table, "subtour", &params, r);
        }
        return Ok(table);
    }
    let spec = facet_spec(args)?;
    let measures: Vec<Measure> = args.measure.iter().map(|&m| m.into()).collect();
    let facet = format!("{:?}", args.facet).to_lowercase();
    let p = params(&spec);
    if matches!(args.source, Source::Closed | Source::Both) {
        for &m in &measures {
            let no_closed = matches!(spec.kind, FacetKind::TspComb3(_)) && m == Measure::Epr;
            if no_closed && args.source == Source::Both {
                continue;
            }
            row(&mut table, &facet, &p, closed_form(&spec, m, args.threshold)?);
        }
    }
    if matches!(args.source, Source::Oracle | Source::Both) {
        for r in oracle(&spec, &measures, args.mode, args.allow_large)? {
            row(&mut table, &facet, &p, r);
        }
    }
    Ok(table)
}
