//! Branch-and-prune paving of `{x ∈ [x0] : f(x) = 0}` and geometric helpers.

use crate::contractor::{Contractor, ContractorKind};
use crate::expr::Function;
use crate::interval::{Interval, IntervalBox};
use crate::linalg::RealMatrix;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PaverError {
    #[error("accuracy must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("max_boxes must be at least 1")]
    BadMaxBoxes,
    #[error("initial box has dimension {got}, function expects {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("initial box must be bounded")]
    Unbounded,
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BisectionRule {
    /// Split the widest component at its midpoint; ties go to the lowest index.
    #[default]
    WidestMidpoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaverConfig {
    pub eps: f64,
    pub contractor: ContractorKind,
    pub max_boxes: usize,
    pub bisection: BisectionRule,
    /// 0 runs the single-threaded reference loop.
    pub threads: usize,
}

impl PaverConfig {
    pub fn new(eps: f64, contractor: ContractorKind) -> Self {
        PaverConfig {
            eps,
            contractor,
            max_boxes: 1_000_000,
            bisection: BisectionRule::WidestMidpoint,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PavingCounts {
    pub boundary: usize,
    pub discarded: usize,
    pub bisections: usize,
}

/// Result of [`pave`]. Boundary boxes are sorted by lower corner.
#[derive(Debug, Clone)]
pub struct Paving {
    pub boundary: Vec<IntervalBox>,
    /// Unprocessed boxes left on the work list after truncation.
    pub pending: Vec<IntervalBox>,
    pub eps: f64,
    pub contractor: String,
    pub initial: IntervalBox,
    pub counts: PavingCounts,
    pub duration: Duration,
    pub truncated: bool,
}

fn cmp_boxes(a: &IntervalBox, b: &IntervalBox) -> Ordering {
    let lower = a.iter().zip(b.iter()).map(|(x, y)| x.lo().total_cmp(&y.lo()));
    let upper = a.iter().zip(b.iter()).map(|(x, y)| x.hi().total_cmp(&y.hi()));
    lower
        .chain(upper)
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn validate(f: &Function, x0: &IntervalBox, cfg: &PaverConfig) -> Result<(), PaverError> {
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        return Err(PaverError::BadEpsilon(cfg.eps));
    }
    if cfg.max_boxes == 0 {
        return Err(PaverError::BadMaxBoxes);
    }
    if x0.dim() != f.n() {
        return Err(PaverError::Dimension {
            expected: f.n(),
            got: x0.dim(),
        });
    }
    if x0.iter().any(|c| !c.is_empty() && !c.is_bounded()) {
        return Err(PaverError::Unbounded);
    }
    Ok(())
}

/// Wall clock; reads zero where the platform has none (wasm32-unknown-unknown).
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn start() -> Self {
        #[cfg(not(target_arch = "wasm32"))]
        return Clock(std::time::Instant::now());
        #[cfg(target_arch = "wasm32")]
        return Clock();
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed();
        #[cfg(target_arch = "wasm32")]
        return Duration::ZERO;
    }
}

enum Step {
    Discard,
    Boundary(IntervalBox),
    Split(IntervalBox, IntervalBox),
}

fn step(c: &dyn Contractor, b: &IntervalBox, eps: f64) -> Step {
    let y = c.contract(b).intersect(b);
    if y.is_empty() {
        return Step::Discard;
    }
    if y.width() <= eps {
        return Step::Boundary(y);
    }
    match y.bisect(y.widest_dim()) {
        Ok((l, r)) => Step::Split(l, r),
        // too narrow to split in floating point
        Err(_) => Step::Boundary(y),
    }
}

/// Paves the solution set of `f(x) = 0` inside `x0`.
pub fn pave(f: &Function, x0: &IntervalBox, cfg: &PaverConfig) -> Result<Paving, PaverError> {
    validate(f, x0, cfg)?;
    let c = cfg.contractor.build(f);
    pave_with(c.as_ref(), x0, cfg)
}

/// Paves with an arbitrary contractor; `cfg.contractor` is ignored.
pub fn pave_with(c: &dyn Contractor, x0: &IntervalBox, cfg: &PaverConfig) -> Result<Paving, PaverError> {
    if !(cfg.eps > 0.0 && cfg.eps.is_finite()) {
        return Err(PaverError::BadEpsilon(cfg.eps));
    }
    if cfg.max_boxes == 0 {
        return Err(PaverError::BadMaxBoxes);
    }
    let clock = Clock::start();
    let (mut boundary, mut pending, counts) = if cfg.threads == 0 {
        pave_sequential(c, x0, cfg)
    } else {
        pave_parallel(c, x0, cfg)?
    };
    boundary.sort_by(cmp_boxes);
    pending.sort_by(cmp_boxes);
    let truncated = !pending.is_empty() || counts.boundary > cfg.max_boxes;
    Ok(Paving {
        boundary,
        pending,
        eps: cfg.eps,
        contractor: c.name(),
        initial: x0.clone(),
        counts,
        duration: clock.elapsed(),
        truncated,
    })
}

fn pave_sequential(c: &dyn Contractor, x0: &IntervalBox, cfg: &PaverConfig) -> (Vec<IntervalBox>, Vec<IntervalBox>, PavingCounts) {
    let mut counts = PavingCounts::default();
    let mut boundary = Vec::new();
    let mut stack = vec![x0.clone()];
    while let Some(b) = stack.pop() {
        match step(c, &b, cfg.eps) {
            Step::Discard => counts.discarded += 1,
            Step::Boundary(y) => {
                boundary.push(y);
                counts.boundary += 1;
                if counts.boundary > cfg.max_boxes {
                    break;
                }
            }
            Step::Split(l, r) => {
                counts.bisections += 1;
                stack.push(r);
                stack.push(l);
            }
        }
    }
    (boundary, stack, counts)
}

struct Shared<'a> {
    c: &'a dyn Contractor,
    eps: f64,
    max_boxes: usize,
    stop: AtomicBool,
    boundary_count: AtomicUsize,
    discarded: AtomicUsize,
    bisections: AtomicUsize,
    boundary: Mutex<Vec<IntervalBox>>,
    pending: Mutex<Vec<IntervalBox>>,
}

fn process(sh: &Shared<'_>, b: IntervalBox) {
    if sh.stop.load(AtomicOrdering::Relaxed) {
        sh.pending.lock().expect("pending lock").push(b);
        return;
    }
    match step(sh.c, &b, sh.eps) {
        Step::Discard => {
            sh.discarded.fetch_add(1, AtomicOrdering::Relaxed);
        }
        Step::Boundary(y) => {
            sh.boundary.lock().expect("boundary lock").push(y);
            let n = sh.boundary_count.fetch_add(1, AtomicOrdering::Relaxed) + 1;
            if n > sh.max_boxes {
                sh.stop.store(true, AtomicOrdering::Relaxed);
            }
        }
        Step::Split(l, r) => {
            sh.bisections.fetch_add(1, AtomicOrdering::Relaxed);
            rayon::join(|| process(sh, l), || process(sh, r));
        }
    }
}

fn pave_parallel(
    c: &dyn Contractor,
    x0: &IntervalBox,
    cfg: &PaverConfig,
) -> Result<(Vec<IntervalBox>, Vec<IntervalBox>, PavingCounts), PaverError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| PaverError::ThreadPool(e.to_string()))?;
    let sh = Shared {
        c,
        eps: cfg.eps,
        max_boxes: cfg.max_boxes,
        stop: AtomicBool::new(false),
        boundary_count: AtomicUsize::new(0),
        discarded: AtomicUsize::new(0),
        bisections: AtomicUsize::new(0),
        boundary: Mutex::new(Vec::new()),
        pending: Mutex::new(Vec::new()),
    };
    pool.install(|| process(&sh, x0.clone()));
    let counts = PavingCounts {
        boundary: sh.boundary_count.into_inner(),
        discarded: sh.discarded.into_inner(),
        bisections: sh.bisections.into_inner(),
    };
    Ok((
        sh.boundary.into_inner().expect("boundary lock"),
        sh.pending.into_inner().expect("pending lock"),
        counts,
    ))
}

/// Projects every boundary box onto dimensions `(i, j)`; identical
/// projections are kept once, in first-seen order.
pub fn project(p: &Paving, dims: (usize, usize)) -> Vec<[Interval; 2]> {
    project_boxes(&p.boundary, dims)
}

pub fn project_boxes(boxes: &[IntervalBox], (i, j): (usize, usize)) -> Vec<[Interval; 2]> {
    assert_ne!(i, j, "projection needs two distinct dimensions");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for b in boxes {
        let key = [b[i].lo().to_bits(), b[i].hi().to_bits(), b[j].lo().to_bits(), b[j].hi().to_bits()];
        if seen.insert(key) {
            out.push([b[i], b[j]]);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("reference set is empty")]
    EmptyReference,
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Proximity `h(A, B) = sup_{a∈A} inf_{b∈B} |a - b|_∞` over point sets.
pub fn proximity(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64, GeometryError> {
    if b.is_empty() {
        return Err(GeometryError::EmptyReference);
    }
    Ok(a.iter()
        .map(|p| b.iter().map(|q| linf(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

/// Corners and centers of `boxes`, the sample used when boxes stand for `A`.
pub fn box_sample_points(boxes: &[IntervalBox]) -> Vec<Vec<f64>> {
    boxes
        .iter()
        .filter(|b| !b.is_empty())
        .flat_map(|b| {
            let mut pts = b.corners();
            pts.push(b.center());
            pts
        })
        .collect()
}

/// Exact proximity of box `a` to box `b` in the L∞ norm.
pub fn box_proximity(a: &IntervalBox, b: &IntervalBox) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (y.lo() - x.lo()).max(x.hi() - y.hi()).max(0.0))
        .fold(0.0, f64::max)
}

/// Damped Newton on the square system obtained by fixing coordinate `fixed`.
fn newton_fixed(f: &Function, start: &[f64], fixed: usize, x0: &IntervalBox) -> Option<Vec<f64>> {
    let n = f.n();
    let free: Vec<usize> = (0..n).filter(|&k| k != fixed).collect();
    let mut x = start.to_vec();
    let norm = |v: &[f64]| v.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let mut r = f.eval_real(&x);
    for _ in 0..60 {
        let rn = norm(&r);
        if !rn.is_finite() {
            return None;
        }
        let jac = f.jacobian_real(&x);
        let sub = RealMatrix::from_fn(f.p(), free.len(), |i, k| jac.get(i, free[k]));
        let neg: Vec<f64> = r.iter().map(|v| -v).collect();
        let dx = sub.solve(&neg).ok()?;
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-6 {
            let mut cand = x.clone();
            for (k, &j) in free.iter().enumerate() {
                cand[j] += t * dx[k];
            }
            let rc = f.eval_real(&cand);
            let rcn = norm(&rc);
            if rcn.is_finite() && rcn < rn * (1.0 - 1e-4 * t) || rcn == 0.0 {
                x = cand;
                r = rc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if norm(&r) <= 1e-14 || !accepted {
            break;
        }
        // wandered far outside the search box
        if free.iter().any(|&j| {
            let c = x0[j];
            let w = c.width().max(1e-300);
            x[j] < c.lo() - w || x[j] > c.hi() + w
        }) {
            return None;
        }
    }
    (norm(&r) <= 1e-9 && x0.contains_point(&x)).then_some(x)
}

/// Dense sample of a solution curve (`p = n - 1`) inside `x0`.
///
/// Each coordinate in turn is gridded with `density` values; at every grid
/// value the remaining square system is solved by damped Newton from a grid
/// of starting points. Every returned point satisfies `|f|_∞ <= 1e-9`.
pub fn curve_oracle(f: &Function, x0: &IntervalBox, density: usize) -> Vec<Vec<f64>> {
    curve_oracle_with_starts(f, x0, density, 6)
}

pub fn curve_oracle_with_starts(f: &Function, x0: &IntervalBox, density: usize, starts_per_dim: usize) -> Vec<Vec<f64>> {
    let n = f.n();
    assert_eq!(f.p() + 1, n, "curve oracle needs p = n - 1");
    assert!(density >= 1 && starts_per_dim >= 1);
    let mut out: Vec<Vec<f64>> = Vec::new();
    let grid = |c: Interval, k: usize, count: usize| -> f64 {
        if count == 1 {
            c.mid()
        } else {
            c.lo() + (c.hi() - c.lo()) * k as f64 / (count - 1) as f64
        }
    };
    for fixed in 0..n {
        let free: Vec<usize> = (0..n).filter(|&k| k != fixed).collect();
        let n_starts = starts_per_dim.pow(free.len() as u32);
        for g in 0..density {
            let t = grid(x0[fixed], g, density);
            let mut found: Vec<Vec<f64>> = Vec::new();
            for s in 0..n_starts {
                let mut start = vec![0.0; n];
                start[fixed] = t;
                let mut idx = s;
                for &j in &free {
                    let k = idx % starts_per_dim;
                    idx /= starts_per_dim;
                    // cell centers avoid starting exactly on the boundary
                    let c = x0[j];
                    start[j] = c.lo() + (c.hi() - c.lo()) * (k as f64 + 0.5) / starts_per_dim as f64;
                }
                if let Some(p) = newton_fixed(f, &start, fixed, x0) {
                    let dup = found.iter().any(|q| linf(q, &p) <= 1e-10 * (1.0 + x0.width()));
                    if !dup {
                        found.push(p);
                    }
                }
            }
            out.extend(found);
        }
    }
    out
}

/// Refines `start` onto the solution set with coordinate `fixed` frozen.
pub fn polish_point(f: &Function, start: &[f64], fixed: usize, x0: &IntervalBox) -> Option<Vec<f64>> {
    newton_fixed(f, start, fixed, x0)
}

/// Box hull of a point set, EMPTY when there are no points.
pub fn hull_of_points(points: &[Vec<f64>], n: usize) -> IntervalBox {
    let mut out = IntervalBox::empty(n);
    for p in points {
        out = out.hull(&IntervalBox::from_point(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn func(vars: &[&str], comps: &[&str]) -> Function {
        let names = vars.iter().map(|s| s.to_string()).collect();
        let comps = comps.iter().map(|c| parse_expression(c, vars).unwrap()).collect();
        Function::new(names, comps).unwrap()
    }

    #[test]
    fn infeasible_problem_discards_everything() {
        let f = func(&["x1", "x2"], &["x1 - 10"]);
        let x0 = IntervalBox::from_bounds(&[(0.0, 1.0), (0.0, 1.0)]);
        for kind in [ContractorKind::Hc4, ContractorKind::Centered] {
            let p = pave(&f, &x0, &PaverConfig::new(0.1, kind)).unwrap();
            assert!(p.boundary.is_empty());
            assert!(p.counts.discarded >= 1);
            assert!(!p.truncated);
        }
    }

    #[test]
    fn circle_boundary_boxes_hug_the_circle() {
        let f = func(&["x1", "x2"], &["x1^2 + x2^2 - 1"]);
        let x0 = IntervalBox::from_bounds(&[(-2.0, 2.0), (-2.0, 2.0)]);
        let p = pave(&f, &x0, &PaverConfig::new(0.25, ContractorKind::Centered)).unwrap();
        assert!(!p.boundary.is_empty());
        for b in &p.boundary {
            assert!(b.width() <= 0.25);
            let c = b.center();
            let r = (c[0] * c[0] + c[1] * c[1]).sqrt();
            // L∞ distance to the circle is at most the Euclidean one
            assert!((r - 1.0).abs() <= 0.25 + 0.125, "{b}");
        }
        for k in 0..1000 {
            let t = k as f64 * std::f64::consts::TAU / 1000.0;
            let pt = [t.cos(), t.sin()];
            assert!(p.boundary.iter().any(|b| b.inflate_ulps(4).contains_point(&pt)), "{pt:?}");
        }
    }

    #[test]
    fn truncation_keeps_pending_work() {
        let f = func(&["x1", "x2"], &["x1^2 + x2^2 - 1"]);
        let x0 = IntervalBox::from_bounds(&[(-2.0, 2.0), (-2.0, 2.0)]);
        let mut cfg = PaverConfig::new(1e-3, ContractorKind::Hc4);
        cfg.max_boxes = 10;
        let p = pave(&f, &x0, &cfg).unwrap();
        assert!(p.truncated);
        assert!(!p.pending.is_empty());
    }

    #[test]
    fn config_validation() {
        let f = func(&["x"], &["x"]);
        let x0 = IntervalBox::from_bounds(&[(0.0, 1.0)]);
        assert!(pave(&f, &x0, &PaverConfig::new(0.0, ContractorKind::Hc4)).is_err());
        let bad = IntervalBox::from_bounds(&[(0.0, 1.0), (0.0, 1.0)]);
        assert!(pave(&f, &bad, &PaverConfig::new(0.1, ContractorKind::Hc4)).is_err());
        let unbounded = IntervalBox::new(vec![Interval::new(0.0, f64::INFINITY)]);
        assert_eq!(
            pave(&f, &unbounded, &PaverConfig::new(0.1, ContractorKind::Hc4)).unwrap_err(),
            PaverError::Unbounded
        );
    }

    #[test]
    fn projection_examples() {
        let b = IntervalBox::from_bounds(&[(0.0, 1.0), (2.0, 3.0), (4.0, 5.0)]);
        let c = IntervalBox::from_bounds(&[(0.0, 1.0), (2.0, 3.0), (5.0, 6.0)]);
        let out = project_boxes(&[b, c], (0, 1));
        assert_eq!(out, vec![[Interval::new(0.0, 1.0), Interval::new(2.0, 3.0)]]);
        assert!(project_boxes(&[], (0, 1)).is_empty());
    }

    #[test]
    fn proximity_examples() {
        assert_eq!(proximity(&[vec![0.0, 0.0]], &[vec![1.0, 1.0]]), Ok(1.0));
        let a = vec![vec![0.5, 0.1], vec![0.2, 0.3]];
        let mut b = a.clone();
        b.push(vec![9.0, 9.0]);
        assert_eq!(proximity(&a, &b), Ok(0.0));
        assert_eq!(proximity(&a, &[]), Err(GeometryError::EmptyReference));
    }

    #[test]
    fn box_proximity_matches_corner_sampling() {
        let a = IntervalBox::from_bounds(&[(0.0, 1.0), (0.0, 2.0)]);
        let b = IntervalBox::from_bounds(&[(0.25, 1.0), (0.5, 1.0)]);
        // farthest corner of a is (0, 2): distance max(0.25, 1.0)
        assert_eq!(box_proximity(&a, &b), 1.0);
        assert_eq!(box_proximity(&b, &a), 0.0);
    }

    #[test]
    fn circle_oracle_residuals() {
        let f = func(&["x1", "x2"], &["x1^2 + x2^2 - 1"]);
        let x0 = IntervalBox::from_bounds(&[(-2.0, 2.0), (-2.0, 2.0)]);
        let pts = curve_oracle(&f, &x0, 50);
        assert!(pts.len() > 50);
        for p in &pts {
            assert!((p[0] * p[0] + p[1] * p[1] - 1.0).abs() <= 1e-9);
        }
    }
}
