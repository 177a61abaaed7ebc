//! Browser bindings for the paver. Everything runs on the calling thread.

use ivpave::contractor::{centered_contract, ContractorKind};
use ivpave::io::paving_to_svg;
use ivpave::paver::{box_proximity, curve_oracle, hull_of_points, pave, PaverConfig};
use ivpave::{builtin_delay2, Function, IntervalBox, ProblemSpec};
use wasm_bindgen::prelude::*;

/// Refuses to hang the tab on an unlucky eps.
const MAX_BOXES: usize = 200_000;

fn load(source: &str) -> Result<ProblemSpec, String> {
    let s = source.trim();
    if s.is_empty() || s == "delay2" {
        return Ok(builtin_delay2());
    }
    ProblemSpec::parse(s).map_err(|e| e.to_string())
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct PaveResult {
    pub svg: String,
    pub boundary: usize,
    pub discarded: usize,
    pub bisections: usize,
    pub truncated: bool,
}

/// Paves `source` (problem text, or empty for the built-in) and renders its projection.
#[wasm_bindgen]
pub fn pave_problem(source: &str, eps: f64, contractor: &str) -> Result<PaveResult, JsError> {
    run_pave(source, eps, contractor).map_err(js)
}

/// Applies every contractor once to the box `[lo0, hi0, lo1, hi1, ...]`; one line per contractor.
#[wasm_bindgen]
pub fn compare_contractors(source: &str, bounds: &[f64]) -> Result<String, JsError> {
    run_compare(source, bounds).map_err(js)
}

/// Excess of the centered contraction over the true hull, relative to the width `2^-k`,
/// for boxes shrinking around the most regular sampled solution point. Returns one
/// ratio per `k` in `3..=k_max`.
#[wasm_bindgen]
pub fn minimality_series(source: &str, k_max: u32) -> Result<Vec<f64>, JsError> {
    run_series(source, k_max).map_err(js)
}

pub fn run_pave(source: &str, eps: f64, contractor: &str) -> Result<PaveResult, String> {
    let spec = load(source)?;
    let cfg = PaverConfig {
        max_boxes: MAX_BOXES,
        ..PaverConfig::new(eps, contractor.parse::<ContractorKind>()?)
    };
    let p = pave(&spec.function(), &spec.domain, &cfg).map_err(|e| e.to_string())?;
    let dims = match spec.projection {
        Some(d) => d,
        None if spec.names.len() >= 2 => (0, 1),
        None => return Err("plotting needs at least two variables".into()),
    };
    let labels = [spec.names[dims.0].as_str(), spec.names[dims.1].as_str()];
    let svg = paving_to_svg(&p, dims, spec.frame, labels).map_err(|e| e.to_string())?;
    Ok(PaveResult {
        svg,
        boundary: p.counts.boundary,
        discarded: p.counts.discarded,
        bisections: p.counts.bisections,
        truncated: p.truncated,
    })
}

pub fn run_compare(source: &str, bounds: &[f64]) -> Result<String, String> {
    let spec = load(source)?;
    let f = spec.function();
    if bounds.len() != 2 * f.n() {
        return Err(format!("expected {} bounds, got {}", 2 * f.n(), bounds.len()));
    }
    let pairs: Vec<(f64, f64)> = bounds.chunks(2).map(|c| (c[0], c[1])).collect();
    if pairs.iter().any(|&(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
        return Err("each variable needs finite bounds with lo <= hi".into());
    }
    let x = IntervalBox::from_bounds(&pairs);
    let widths = |b: &IntervalBox| b.iter().map(|c| format!("{:.3e}", c.width())).collect::<Vec<_>>().join(" ");
    let mut out = format!("{:<16} widths {}  {x}\n", "input", widths(&x));
    for k in ContractorKind::ALL {
        let y = k.build(&f).contract(&x).intersect(&x);
        if y.is_empty() {
            out += &format!("{:<16} empty\n", k.as_str());
        } else {
            out += &format!("{:<16} widths {}  {y}\n", k.as_str(), widths(&y));
        }
    }
    Ok(out)
}

/// Smallest singular value of the Jacobian, by the Gram matrix eigenvalues (p ≤ 2).
fn regularity(f: &Function, z: &[f64]) -> f64 {
    let j = f.jacobian_real(z);
    let g = j.mul(&j.transpose());
    if g.rows() == 1 {
        return g.get(0, 0).sqrt();
    }
    let (a, b, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 1));
    let disc = ((a - d) * (a - d) / 4.0 + b * b).sqrt();
    ((a + d) / 2.0 - disc).max(0.0).sqrt()
}

pub fn run_series(source: &str, k_max: u32) -> Result<Vec<f64>, String> {
    let spec = load(source)?;
    let f = spec.function();
    if f.p() > 2 || f.p() >= f.n() {
        return Err("the series needs one or two equations and more variables than equations".into());
    }
    let z = curve_oracle(&f, &spec.domain, 60)
        .into_iter()
        .max_by(|a, b| regularity(&f, a).total_cmp(&regularity(&f, b)))
        .ok_or("no solution point found")?;
    Ok((3..=k_max.clamp(3, 14) as i32)
        .map(|k| {
            let w = 2f64.powi(-k);
            let x = IntervalBox::from_bounds(&z.iter().map(|&c| (c - w / 2.0, c + w / 2.0)).collect::<Vec<_>>());
            let hull = hull_of_points(&curve_oracle(&f, &x, 300), f.n());
            box_proximity(&centered_contract(&f, &x), &hull) / w
        })
        .collect())
}
