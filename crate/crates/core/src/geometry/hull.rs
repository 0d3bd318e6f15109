//! Nearest point of a convex hull (or affine hull) of 0/1 points to a centroid.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::enumeration::{ones, Enumerator, Evaluator, ExtremePointSet, Hyperplane};
use crate::error::Error;
use crate::exactnum::ExactScalar;

/// Anything that can replay a finite sequence of 0/1 points.
pub trait PointSource {
    fn dim(&self) -> usize;
    fn for_each_point(&self, f: &mut dyn FnMut(&[u64]));
}

impl PointSource for ExtremePointSet {
    fn dim(&self) -> usize {
        ExtremePointSet::dim(self)
    }
    fn for_each_point(&self, f: &mut dyn FnMut(&[u64])) {
        for p in self.iter() {
            f(p);
        }
    }
}

impl PointSource for Enumerator {
    fn dim(&self) -> usize {
        self.indexer().dim()
    }
    fn for_each_point(&self, f: &mut dyn FnMut(&[u64])) {
        self.visit(f);
    }
}

/// The points of another source lying on a hyperplane.
pub struct IncidentStream<'a> {
    inner: &'a dyn PointSource,
    eval: Evaluator,
}

impl<'a> IncidentStream<'a> {
    pub fn new(inner: &'a dyn PointSource, h: &Hyperplane) -> Result<Self, Error> {
        Ok(IncidentStream { inner, eval: h.evaluator(inner.dim())? })
    }
}

impl PointSource for IncidentStream<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn for_each_point(&self, f: &mut dyn FnMut(&[u64])) {
        self.inner.for_each_point(&mut |p| {
            if self.eval.on_plane(p) {
                f(p)
            }
        });
    }
}

#[derive(Clone, Debug)]
pub struct HullOptions {
    /// Keep the convex weights nonnegative (normal distance); `false` gives the
    /// affine-hull distance.
    pub bounded: bool,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Refuse streams longer than this.
    pub max_points: usize,
    /// Known dimension of the affine hull of the points; lets the affine
    /// variant stop scanning once a full basis is found.
    pub affine_dim: Option<usize>,
}

impl Default for HullOptions {
    fn default() -> Self {
        HullOptions {
            bounded: true,
            tolerance: 1e-10,
            max_iterations: 200_000,
            max_points: 50_000_000,
            affine_dim: None,
        }
    }
}

impl HullOptions {
    pub fn affine() -> Self {
        HullOptions { bounded: false, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullDistanceResult {
    /// `+∞` when there are no points.
    pub distance_squared: f64,
    /// `(ordinal in the stream, weight)`; weights sum to one and are
    /// nonnegative in the bounded variant.
    pub witness_coefficients: Vec<(usize, f64)>,
    /// `‖x‖² − min_f x·(f − C)` for bounded runs, `max_f |x·(f − C) − ‖x‖²|` otherwise.
    pub certificate_gap: f64,
    pub iterations: usize,
    /// The Wolfe active set degenerated and Frank–Wolfe steps were used.
    pub used_fallback: bool,
}

impl HullDistanceResult {
    pub fn is_infinite(&self) -> bool {
        self.distance_squared.is_infinite()
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

struct Shift {
    c: Vec<f64>,
}

impl Shift {
    fn vector(&self, bits: &[u64]) -> Vec<f64> {
        let mut v: Vec<f64> = self.c.iter().map(|c| -c).collect();
        for i in ones(bits) {
            v[i] += 1.0;
        }
        v
    }
}

/// Squared distance from `centroid` to the convex hull (or affine hull) of the points.
pub fn hull_distance(
    points: &dyn PointSource,
    centroid: &[ExactScalar],
    opts: &HullOptions,
) -> Result<HullDistanceResult, Error> {
    if centroid.len() != points.dim() {
        return Err(Error::DimensionMismatch { expected: points.dim(), got: centroid.len() });
    }
    let shift = Shift { c: centroid.iter().map(ExactScalar::to_f64).collect() };
    // first pass: size check and the point nearest to the centroid
    let mut count = 0usize;
    let mut best: Option<(usize, f64, Vec<u64>)> = None;
    points.for_each_point(&mut |p| {
        let d: f64 = ones(p).map(|i| 1.0 - 2.0 * shift.c[i]).sum();
        if best.as_ref().is_none_or(|b| d < b.1) {
            best = Some((count, d, p.to_vec()));
        }
        count += 1;
    });
    if count > opts.max_points {
        return Err(Error::ResourceGuard(format!("{count} points exceed the budget of {}", opts.max_points)));
    }
    let Some((first, _, bits)) = best else {
        return Ok(HullDistanceResult {
            distance_squared: f64::INFINITY,
            witness_coefficients: Vec::new(),
            certificate_gap: 0.0,
            iterations: 0,
            used_fallback: false,
        });
    };
    let start = Active { ordinal: first, v: shift.vector(&bits) };
    if opts.bounded {
        wolfe(points, &shift, start, opts)
    } else {
        affine(points, &shift, start, opts)
    }
}

struct Active {
    ordinal: usize,
    v: Vec<f64>,
}

/// Minimizer of `‖Σ μ_i v_i‖` over `Σ μ_i = 1`, from the bordered Gram system.
fn affine_minimizer(gram: &[Vec<f64>]) -> Option<Vec<f64>> {
    let k = gram.len();
    let size = k + 1;
    let mut m = vec![vec![0.0; size + 1]; size];
    let scale = gram.iter().enumerate().map(|(i, r)| r[i]).fold(1.0f64, f64::max);
    for i in 0..k {
        for j in 0..k {
            m[i][j] = gram[i][j] / scale;
        }
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    m[k][size] = 1.0;
    for col in 0..size {
        let piv = (col..size).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-13 {
            return None;
        }
        m.swap(col, piv);
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate().take(size) {
            if r != col {
                let f = row[col] / pivot[col];
                if f != 0.0 {
                    for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x -= f * p;
                    }
                }
            }
        }
    }
    Some((0..k).map(|i| m[i][size] / m[i][i]).collect())
}

fn combine(active: &[Active], w: &[f64], dim: usize) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    for (a, &l) in active.iter().zip(w) {
        for (xi, vi) in x.iter_mut().zip(&a.v) {
            *xi += l * vi;
        }
    }
    x
}

/// Point of the stream minimizing `x·(f − C)`.
fn lmo(points: &dyn PointSource, shift: &Shift, x: &[f64]) -> (usize, f64, Vec<u64>) {
    let xc = dot(x, &shift.c);
    let mut best: Option<(usize, f64, Vec<u64>)> = None;
    let mut ord = 0;
    points.for_each_point(&mut |p| {
        let v: f64 = ones(p).map(|i| x[i]).sum::<f64>() - xc;
        if best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((ord, v, p.to_vec()));
        }
        ord += 1;
    });
    best.unwrap()
}

fn wolfe(
    points: &dyn PointSource,
    shift: &Shift,
    start: Active,
    opts: &HullOptions,
) -> Result<HullDistanceResult, Error> {
    let dim = shift.c.len();
    let mut x = start.v.clone();
    let mut gram = vec![vec![dot(&start.v, &start.v)]];
    let mut active = vec![start];
    let mut lambda = vec![1.0];
    let mut fallback = false;
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        iterations += 1;
        let (ord, val, bits) = lmo(points, shift, &x);
        let xx = dot(&x, &x);
        gap = xx - val;
        if gap <= opts.tolerance {
            break;
        }
        if active.iter().any(|a| a.ordinal == ord) && !fallback {
            // no progress possible from the current active set
            fallback = true;
        }
        let v = shift.vector(&bits);
        if fallback {
            // Frank–Wolfe step with exact line search
            let dir: Vec<f64> = v.iter().zip(&x).map(|(a, b)| a - b).collect();
            let dd = dot(&dir, &dir);
            let step = if dd > 0.0 { (gap / dd).clamp(0.0, 1.0) } else { 0.0 };
            for l in lambda.iter_mut() {
                *l *= 1.0 - step;
            }
            match active.iter().position(|a| a.ordinal == ord) {
                Some(i) => lambda[i] += step,
                None => {
                    active.push(Active { ordinal: ord, v });
                    lambda.push(step);
                }
            }
            x = combine(&active, &lambda, dim);
            continue;
        }
        let row: Vec<f64> = active.iter().map(|a| dot(&a.v, &v)).collect();
        for (g, r) in gram.iter_mut().zip(&row) {
            g.push(*r);
        }
        let mut new_row = row;
        new_row.push(dot(&v, &v));
        gram.push(new_row);
        active.push(Active { ordinal: ord, v });
        lambda.push(0.0);
        // minor cycles
        loop {
            let Some(mu) = affine_minimizer(&gram) else {
                // affinely dependent active set: drop the newcomer and switch methods
                active.pop();
                lambda.pop();
                gram.pop();
                for g in gram.iter_mut() {
                    g.pop();
                }
                fallback = true;
                break;
            };
            if mu.iter().all(|&m| m > 1e-12) {
                lambda = mu;
                break;
            }
            let mut theta = 1.0f64;
            for (l, m) in lambda.iter().zip(&mu) {
                if *m <= 1e-12 && l - m > 0.0 {
                    theta = theta.min(l / (l - m));
                }
            }
            for (l, m) in lambda.iter_mut().zip(&mu) {
                *l = (1.0 - theta) * *l + theta * m;
            }
            let mut i = 0;
            let mut removed = false;
            while i < lambda.len() {
                if lambda[i] <= 1e-14 {
                    lambda.remove(i);
                    active.remove(i);
                    gram.remove(i);
                    for g in gram.iter_mut() {
                        g.remove(i);
                    }
                    removed = true;
                } else {
                    i += 1;
                }
            }
            if !removed {
                // numerical stall; drop the smallest weight
                let j = (0..lambda.len()).min_by(|&a, &b| lambda[a].total_cmp(&lambda[b])).unwrap();
                lambda.remove(j);
                active.remove(j);
                gram.remove(j);
                for g in gram.iter_mut() {
                    g.remove(j);
                }
            }
            let s: f64 = lambda.iter().sum();
            for l in lambda.iter_mut() {
                *l /= s;
            }
        }
        x = combine(&active, &lambda, dim);
    }
    if gap > opts.tolerance {
        return Err(Error::ResourceGuard(format!(
            "min-norm solver stopped after {iterations} iterations with gap {gap:e}"
        )));
    }
    let witness = active.iter().zip(&lambda).map(|(a, &l)| (a.ordinal, l)).collect();
    Ok(HullDistanceResult {
        distance_squared: dot(&x, &x),
        witness_coefficients: witness,
        certificate_gap: gap.max(0.0),
        iterations,
        used_fallback: fallback,
    })
}

fn affine(
    points: &dyn PointSource,
    shift: &Shift,
    start: Active,
    opts: &HullOptions,
) -> Result<HullDistanceResult, Error> {
    let dim = shift.c.len();
    let base = start.v.clone();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut chosen = vec![start];
    let mut ord = 0usize;
    let full = opts.affine_dim.unwrap_or(dim).min(dim);
    points.for_each_point(&mut |p| {
        let o = ord;
        ord += 1;
        if basis.len() >= full {
            return;
        }
        let v = shift.vector(p);
        let mut r: Vec<f64> = v.iter().zip(&base).map(|(a, b)| a - b).collect();
        let norm0 = dot(&r, &r);
        if norm0 == 0.0 {
            return;
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &r);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        let nr = dot(&r, &r);
        if nr > 1e-18 * norm0.max(1.0) && nr > 1e-9 {
            let s = 1.0 / libm::sqrt(nr);
            basis.push(r.iter().map(|v| v * s).collect());
            chosen.push(Active { ordinal: o, v });
        }
    });
    let mut x = base.clone();
    for _ in 0..2 {
        for q in &basis {
            let c = dot(q, &x);
            for (xi, qi) in x.iter_mut().zip(q) {
                *xi -= c * qi;
            }
        }
    }
    let xx = dot(&x, &x);
    let xc = dot(&x, &shift.c);
    let mut gap = 0.0f64;
    points.for_each_point(&mut |p| {
        let v: f64 = ones(p).map(|i| x[i]).sum::<f64>() - xc;
        gap = gap.max((v - xx).abs());
    });
    let gram: Vec<Vec<f64>> = chosen.iter().map(|a| chosen.iter().map(|b| dot(&a.v, &b.v)).collect()).collect();
    let weights = affine_minimizer(&gram).unwrap_or_default();
    if gap > opts.tolerance {
        return Err(Error::Degenerate(format!("affine projection residual {gap:e} exceeds tolerance")));
    }
    Ok(HullDistanceResult {
        distance_squared: xx,
        witness_coefficients: chosen.iter().zip(weights).map(|(a, w)| (a.ordinal, w)).collect(),
        certificate_gap: gap,
        iterations: 1,
        used_fallback: false,
    })
}
