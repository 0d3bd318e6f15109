use anyhow::{bail, Result};
use facet_strength::analysis::{
    disagreement_from, sweep_range, Evaluator, Measure, SweepFacet, SweepResult, SweepRow, Value,
};
use facet_strength::closedforms::stgp_delta_components;
use facet_strength::enumeration::Family;
use facet_strength::ExactScalar;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::config::{SweepArgs, SweepMeasureArg};
use crate::output::{float, Table};

pub const HEADER: &[&str] = &["family", "n", "k", "measure", "exact", "float", "log10"];

/// Sweep over k, split into contiguous chunks evaluated on the rayon pool.
pub fn parallel_sweep(
    family: Family,
    facet: SweepFacet,
    n: usize,
    measure: Measure,
    threshold: usize,
) -> Result<SweepResult> {
    let ks: Vec<usize> = sweep_range(family, facet, n)?.collect();
    let probe = Evaluator::new(family, facet, n, measure, threshold)?;
    let chunk = if probe.uses_log() { ks.len() } else { ks.len().div_ceil(rayon::current_num_threads()).max(1) };
    let parts: Vec<Vec<SweepRow>> = ks
        .par_chunks(chunk)
        .map(|part| {
            let mut ev = Evaluator::new(family, facet, n, measure, threshold)?;
            part.iter().map(|&k| Ok(SweepRow { k, value: ev.value(k)? })).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult { family, facet, n, measure, rows: parts.into_iter().flatten().collect() })
}

fn exact_cell(v: &Value) -> Json {
    v.exact_string().map(Json::String).unwrap_or(Json::Null)
}

fn log_cell(v: f64) -> Json {
    if v > 0.0 {
        float(v.log10())
    } else {
        Json::Null
    }
}

fn scalar_row(family: Family, n: usize, k: usize, measure: &str, v: &ExactScalar) -> Vec<Json> {
    let f = v.to_f64();
    vec![json!(family.name()), json!(n), json!(k), json!(measure), json!(v.to_string()), float(f), log_cell(f)]
}

fn value_rows(table: &mut Table, s: &SweepResult, scaled: bool) {
    let name = if scaled { format!("{}_scaled", s.measure) } else { s.measure.to_string() };
    // scale so the weakest log ratio is −1, or the largest distance is 1
    let scale = if !scaled {
        1.0
    } else if s.measure == Measure::Epr {
        s.rows.iter().map(|r| r.value.log10()).fold(0.0f64, f64::min).abs()
    } else {
        s.rows.iter().map(|r| r.value.to_f64()).fold(0.0f64, f64::max)
    };
    for r in &s.rows {
        let lg = r.value.log10();
        let f = match (scaled, s.measure) {
            (false, _) => r.value.to_f64(),
            (true, Measure::Epr) => lg / scale,
            (true, _) => r.value.to_f64() / scale,
        };
        let lg = if lg.is_finite() { float(lg) } else { Json::Null };
        table.push(vec![
            json!(s.family.name()),
            json!(s.n),
            json!(r.k),
            json!(name),
            if scaled { Json::Null } else { exact_cell(&r.value) },
            float(f),
            lg,
        ]);
    }
}

pub fn run(args: &SweepArgs) -> Result<Table> {
    let family: Family = args.family.into();
    let Some(facet) = args.facet.sweep_facet() else { bail!("combs have no size parameter to sweep") };
    let n = args.n;
    if args.disagreement {
        let e = parallel_sweep(family, SweepFacet::Subtour, n, Measure::Epr, args.threshold)?;
        let c = parallel_sweep(family, SweepFacet::Subtour, n, Measure::Cd2, args.threshold)?;
        let m = disagreement_from(&e, &c)?;
        let mut t = Table::new(&["family", "n", "k1", "k2", "disagree", "log_tie"]);
        for (k1, k2, d) in m.triples() {
            let tie = m.flagged.contains(&(k1, k2));
            t.push(vec![json!(family.name()), json!(n), json!(k1), json!(k2), json!(d as u8), json!(tie as u8)]);
        }
        return Ok(t);
    }
    if args.reflect {
        let mut t =
            Table::new(&["family", "n", "k", "measure", "exact_k", "float_k", "exact_n_minus_k", "float_n_minus_k"]);
        for &m in &args.measure {
            let measure = sweep_measure(m)?;
            let s = parallel_sweep(family, facet, n, measure, args.threshold)?;
            for k in 2..=n / 2 {
                if let (Some(a), Some(b)) = (s.value(k), s.value(n - k)) {
                    t.push(vec![
                        json!(family.name()),
                        json!(n),
                        json!(k),
                        json!(measure.name()),
                        exact_cell(a),
                        float(a.to_f64()),
                        exact_cell(b),
                        float(b.to_f64()),
                    ]);
                }
            }
        }
        return Ok(t);
    }
    let mut t = Table::new(HEADER);
    for &m in &args.measure {
        if m == SweepMeasureArg::Dx {
            if family != Family::Stgp || facet != SweepFacet::Subtour {
                bail!("dx sweeps are available for graph spanning-tree subtours only");
            }
            for k in sweep_range(family, facet, n)? {
                let d = stgp_delta_components(n, k)?;
                for (name, v) in [
                    ("dx_inside", &d.dx_inside),
                    ("dx_outside", &d.dx_outside),
                    ("sum_inside", &d.sum_inside),
                    ("sum_outside", &d.sum_outside),
                ] {
                    t.push(scalar_row(family, n, k, name, v));
                }
            }
            continue;
        }
        let s = parallel_sweep(family, facet, n, sweep_measure(m)?, args.threshold)?;
        value_rows(&mut t, &s, args.scaled);
    }
    Ok(t)
}

fn sweep_measure(m: SweepMeasureArg) -> Result<Measure> {
    Ok(match m {
        SweepMeasureArg::Epr => Measure::Epr,
        SweepMeasureArg::Cd2 => Measure::Cd2,
        SweepMeasureArg::Cd => Measure::Cd,
        SweepMeasureArg::Dx => bail!("dx cannot be combined with this mode"),
    })
}
