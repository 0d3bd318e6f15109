//! Indicator sweeps over subtour size and comparisons between indicators.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::closedforms::{
    stgp_subtour_cd2, stgp_subtour_epr, sthgp_subtour_epr_log, tsp_subtour_cd2, tsp_subtour_epr, Sthgp, SubtourEpr,
    LOG_THRESHOLD_DEFAULT,
};
use crate::enumeration::Family;
use crate::error::{invalid, Error};
use crate::exactnum::{ExactScalar, LogScalar};

/// Relative gap below which two log-domain values count as equal.
pub const LOG_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Epr,
    Cd2,
    Cd,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Epr => "epr",
            Measure::Cd2 => "cd2",
            Measure::Cd => "cd",
        }
    }

    /// Larger values mean a stronger inequality.
    pub fn larger_is_stronger(self) -> bool {
        matches!(self, Measure::Epr)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "epr" => Ok(Measure::Epr),
            "cd2" => Ok(Measure::Cd2),
            "cd" => Ok(Measure::Cd),
            _ => Err(invalid(format!("unknown measure {s:?}"))),
        }
    }
}

/// Which inequality a sweep runs over; `k` is the subtour size or edge size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepFacet {
    Subtour,
    NonNeg,
}

/// An indicator value in whichever form it could be computed.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(ExactScalar),
    /// Square root of an exact rational.
    Sqrt(ExactScalar),
    Log(LogScalar),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(v) => v.to_f64(),
            Value::Sqrt(v) => libm::sqrt(v.to_f64()),
            Value::Log(v) => v.to_f64(),
        }
    }

    pub fn log10(&self) -> f64 {
        match self {
            Value::Exact(v) => v.to_log().log10(),
            Value::Sqrt(v) => 0.5 * v.to_log().log10(),
            Value::Log(v) => v.log10(),
        }
    }

    fn ln(&self) -> f64 {
        self.log10() * core::f64::consts::LN_10
    }

    /// `"p/q"`, `"sqrt(p/q)"`, or `None` for log-domain values.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Value::Exact(v) => Some(format!("{v}")),
            Value::Sqrt(v) => Some(format!("sqrt({v})")),
            Value::Log(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Log(_))
    }

    /// Compare two values; the flag is set when a log-domain tie was declared.
    pub fn compare(&self, o: &Value) -> (Ordering, bool) {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) | (Value::Sqrt(a), Value::Sqrt(b)) => {
                (a.as_rational().cmp(b.as_rational()), false)
            }
            _ => {
                let (a, b) = (self.ln(), o.ln());
                if (a - b).abs() <= LOG_TIE_TOLERANCE {
                    (Ordering::Equal, true)
                } else {
                    (a.total_cmp(&b), false)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub k: usize,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub family: Family,
    pub facet: SweepFacet,
    pub n: usize,
    pub measure: Measure,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn value(&self, k: usize) -> Option<&Value> {
        self.rows.iter().find(|r| r.k == k).map(|r| &r.value)
    }
}

/// Valid values of `k` for a sweep.
pub fn sweep_range(family: Family, facet: SweepFacet, n: usize) -> Result<core::ops::RangeInclusive<usize>, Error> {
    let hi = match (family, facet) {
        (Family::Tsp, SweepFacet::Subtour) => n.checked_sub(2),
        (Family::Stgp | Family::Sthgp, SweepFacet::Subtour) => n.checked_sub(1),
        (Family::Sthgp, SweepFacet::NonNeg) => Some(n),
        _ => return Err(invalid(format!("{family} {facet:?} has no size parameter to sweep"))),
    };
    match hi {
        Some(h) if h >= 2 => Ok(2..=h),
        _ => Err(invalid(format!("n={n} is too small to sweep {family}"))),
    }
}

/// Evaluates one indicator over many `k` at a fixed `n`, sharing memo tables.
pub struct Evaluator {
    family: Family,
    facet: SweepFacet,
    n: usize,
    measure: Measure,
    threshold: usize,
    sthgp: Option<Sthgp>,
    epr: Option<SubtourEpr>,
    log_epr: Option<Vec<LogScalar>>,
}

impl Evaluator {
    pub fn new(family: Family, facet: SweepFacet, n: usize, measure: Measure, threshold: usize) -> Result<Self, Error> {
        sweep_range(family, facet, n)?;
        let sthgp = if family == Family::Sthgp { Some(Sthgp::new(n)?) } else { None };
        Ok(Evaluator { family, facet, n, measure, threshold, sthgp, epr: None, log_epr: None })
    }

    /// Whether EPR values come from the log domain.
    pub fn uses_log(&self) -> bool {
        self.family == Family::Sthgp
            && self.facet == SweepFacet::Subtour
            && self.measure == Measure::Epr
            && self.n > self.threshold
    }

    pub fn value(&mut self, k: usize) -> Result<Value, Error> {
        if !sweep_range(self.family, self.facet, self.n)?.contains(&k) {
            return Err(invalid(format!("k={k} out of range")));
        }
        let n = self.n;
        let d2 = |v: ExactScalar, m: Measure| if m == Measure::Cd { Value::Sqrt(v) } else { Value::Exact(v) };
        Ok(match (self.family, self.facet, self.measure) {
            (Family::Tsp, _, Measure::Epr) => Value::Exact(tsp_subtour_epr(n, k)?),
            (Family::Tsp, _, m) => d2(tsp_subtour_cd2(n, k)?.0, m),
            (Family::Stgp, _, Measure::Epr) => Value::Exact(stgp_subtour_epr(n, k)?),
            (Family::Stgp, _, m) => d2(stgp_subtour_cd2(n, k)?, m),
            (Family::Sthgp, SweepFacet::NonNeg, Measure::Epr) => {
                Value::Exact(self.sthgp.as_mut().unwrap().nonneg_epr(k)?)
            }
            (Family::Sthgp, SweepFacet::NonNeg, m) => d2(self.sthgp.as_mut().unwrap().nonneg_cd(k)?.squared(), m),
            (Family::Sthgp, SweepFacet::Subtour, Measure::Epr) => {
                if self.uses_log() {
                    let logs = match &mut self.log_epr {
                        Some(l) => l,
                        slot => slot.insert(sthgp_subtour_epr_log(n)?),
                    };
                    Value::Log(logs[k - 2])
                } else {
                    let ctx = match &mut self.epr {
                        Some(c) => c,
                        slot => slot.insert(SubtourEpr::new(n)?),
                    };
                    Value::Exact(ctx.fast(k)?)
                }
            }
            (Family::Sthgp, SweepFacet::Subtour, m) => d2(self.sthgp.as_mut().unwrap().subtour_cd(k)?.squared(), m),
        })
    }
}

pub fn sweep(
    family: Family,
    facet: SweepFacet,
    n: usize,
    measure: Measure,
    threshold: usize,
) -> Result<SweepResult, Error> {
    let range = sweep_range(family, facet, n)?;
    let mut ev = Evaluator::new(family, facet, n, measure, threshold)?;
    let rows = range.map(|k| Ok(SweepRow { k, value: ev.value(k)? })).collect::<Result<_, Error>>()?;
    Ok(SweepResult { family, facet, n, measure, rows })
}

/// Subtour sweep with the default exact/log switchover.
pub fn sweep_subtours(family: Family, n: usize, measure: Measure) -> Result<SweepResult, Error> {
    sweep(family, SweepFacet::Subtour, n, measure, LOG_THRESHOLD_DEFAULT)
}

/// Compare the strength of two rows: `Less` when `a` is weaker.
fn strength(measure: Measure, a: &Value, b: &Value) -> (Ordering, bool) {
    let (o, tie) = a.compare(b);
    (if measure.larger_is_stronger() { o } else { o.reverse() }, tie)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weakest {
    pub k: usize,
    /// Other sizes with equal strength (exactly, or within the log tolerance).
    pub ties: Vec<usize>,
    /// Whether the winner was found or confirmed with exact values.
    pub exact: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct WeakestOptions {
    pub threshold: usize,
    /// Half-width of the exact re-check around a log-domain winner.
    pub exact_window: Option<usize>,
}

impl Default for WeakestOptions {
    fn default() -> Self {
        WeakestOptions { threshold: LOG_THRESHOLD_DEFAULT, exact_window: Some(3) }
    }
}

fn weakest_of(rows: &[SweepRow], measure: Measure) -> (usize, Vec<usize>, bool) {
    let mut best = 0;
    for i in 1..rows.len() {
        if strength(measure, &rows[i].value, &rows[best].value).0 == Ordering::Less {
            best = i;
        }
    }
    let mut ties = Vec::new();
    let mut flagged = false;
    for (i, r) in rows.iter().enumerate() {
        if i != best {
            let (o, tie) = strength(measure, &r.value, &rows[best].value);
            if o == Ordering::Equal {
                ties.push(r.k);
                flagged |= tie;
            }
        }
    }
    (rows[best].k, ties, flagged)
}

/// Size of the weakest hypergraph subtour under a measure; ties go to the smaller size.
pub fn weakest_subtour(n: usize, measure: Measure, opts: WeakestOptions) -> Result<Weakest, Error> {
    if n < 4 {
        return Err(invalid("need n >= 4"));
    }
    let s = sweep(Family::Sthgp, SweepFacet::Subtour, n, measure, opts.threshold)?;
    let (k, ties, _) = weakest_of(&s.rows, measure);
    let all_exact = s.rows.iter().all(|r| r.value.is_exact());
    if all_exact {
        return Ok(Weakest { k, ties, exact: true });
    }
    let Some(w) = opts.exact_window else {
        return Ok(Weakest { k, ties, exact: false });
    };
    let lo = k.saturating_sub(w).max(2);
    let hi = (k + w).min(n - 1);
    let mut ctx = SubtourEpr::new(n)?;
    let rows = (lo..=hi)
        .map(|j| Ok(SweepRow { k: j, value: Value::Exact(ctx.fast(j)?) }))
        .collect::<Result<Vec<_>, Error>>()?;
    let (wk, wties, _) = weakest_of(&rows, measure);
    // log-domain ties outside the window stay reported
    let mut all_ties: Vec<usize> = ties.into_iter().filter(|t| !(lo..=hi).contains(t)).collect();
    all_ties.extend(wties);
    all_ties.sort_unstable();
    Ok(Weakest { k: wk, ties: all_ties, exact: true })
}

/// Pairs of sizes on which two strength rankings disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisagreementMatrix {
    pub n: usize,
    pub ks: Vec<usize>,
    cells: Vec<bool>,
    /// Pairs whose comparison relied on a log-domain tie.
    pub flagged: Vec<(usize, usize)>,
}

impl DisagreementMatrix {
    pub fn disagree(&self, k1: usize, k2: usize) -> bool {
        let i = self.ks.iter().position(|&k| k == k1).expect("k1 in range");
        let j = self.ks.iter().position(|&k| k == k2).expect("k2 in range");
        self.cells[i * self.ks.len() + j]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }

    pub fn fraction(&self) -> f64 {
        self.count() as f64 / self.cells.len() as f64
    }

    /// `(k1, k2, disagree)` in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        let m = self.ks.len();
        self.cells.iter().enumerate().map(move |(i, &c)| (self.ks[i / m], self.ks[i % m], c))
    }
}

/// EPR against CD for the subtours of one family.
pub fn disagreement_matrix(family: Family, n: usize, threshold: usize) -> Result<DisagreementMatrix, Error> {
    if n < 4 {
        return Err(invalid("need n >= 4"));
    }
    let e = sweep(family, SweepFacet::Subtour, n, Measure::Epr, threshold)?;
    let c = sweep(family, SweepFacet::Subtour, n, Measure::Cd2, threshold)?;
    disagreement_from(&e, &c)
}

/// Build the matrix from two sweeps over the same sizes.
pub fn disagreement_from(first: &SweepResult, second: &SweepResult) -> Result<DisagreementMatrix, Error> {
    let ks: Vec<usize> = first.rows.iter().map(|r| r.k).collect();
    if ks != second.rows.iter().map(|r| r.k).collect::<Vec<_>>() {
        return Err(invalid("sweeps cover different sizes"));
    }
    let m = ks.len();
    let mut cells = Vec::with_capacity(m * m);
    let mut flagged = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let (s1, t1) = strength(first.measure, &first.rows[a].value, &first.rows[b].value);
            let (s2, t2) = strength(second.measure, &second.rows[a].value, &second.rows[b].value);
            if t1 || t2 {
                flagged.push((ks[a], ks[b]));
            }
            cells.push(s1 != s2);
        }
    }
    Ok(DisagreementMatrix { n: first.n, ks, cells, flagged })
}

/// Rows `(k, value(k), value(n − k))` for `2 ≤ k ≤ n/2`.
pub fn reflect_compare(
    family: Family,
    n: usize,
    measure: Measure,
    threshold: usize,
) -> Result<Vec<(usize, Value, Value)>, Error> {
    if n < 5 {
        return Err(invalid("need n >= 5"));
    }
    let s = sweep(family, SweepFacet::Subtour, n, measure, threshold)?;
    Ok((2..=n / 2).filter_map(|k| Some((k, s.value(k)?.clone(), s.value(n - k)?.clone()))).collect())
}
