//! JSON and SVG serialization of pavings.
//!
//! Floats are written in Rust's shortest round-trip form, so a paving read
//! back from JSON is bit-identical to the one written.

use crate::expr::ProblemSpec;
use crate::interval::{Interval, IntervalBox};
use crate::paver::{project, Paving, PavingCounts};
use serde_json::Value;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unexpected JSON layout: {0}")]
    Layout(String),
    #[error("invalid accuracy '{0}': expected a positive number or 2^-k")]
    Eps(String),
    #[error("projection needs 2 distinct dimensions below {0}")]
    Projection(usize),
}

/// Parses `0.0625`, `2^-4` or `2**-4`.
pub fn parse_eps(s: &str) -> Result<f64, IoError> {
    let t = s.trim();
    let pow = t.strip_prefix("2^").or_else(|| t.strip_prefix("2**"));
    let v = match pow {
        Some(k) => k
            .trim()
            .parse::<i32>()
            .ok()
            .filter(|k| (-1000..=1000).contains(k))
            .map(|k| 2f64.powi(k)),
        None => t.parse::<f64>().ok(),
    };
    v.filter(|v| *v > 0.0 && v.is_finite())
        .ok_or_else(|| IoError::Eps(s.to_string()))
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:?}")
    } else {
        // JSON has no infinities; they only occur for unbounded initial boxes
        if v > 0.0 { "1e999".into() } else { "-1e999".into() }
    }
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

fn interval(i: Interval) -> String {
    format!("[{}, {}]", num(i.lo()), num(i.hi()))
}

fn boxes(out: &mut String, list: &[IntervalBox], indent: &str) {
    out.push('[');
    for (k, b) in list.iter().enumerate() {
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(indent);
        out.push('[');
        let parts: Vec<String> = b.iter().map(|c| interval(*c)).collect();
        out.push_str(&parts.join(", "));
        out.push(']');
    }
    if !list.is_empty() {
        out.push('\n');
        out.push_str(&indent[..indent.len() - 2]);
    }
    out.push(']');
}

/// Extra run settings recorded in the JSON `config` object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub max_boxes: usize,
    pub threads: usize,
    /// When false, `duration_ms` is written as 0 so outputs are byte-stable.
    pub timing: bool,
}

/// Serializes problem, configuration and result.
pub fn paving_to_json(problem: &ProblemSpec, paving: &Paving, settings: RunSettings) -> String {
    let mut s = String::new();
    s.push_str("{\n  \"problem\": {\n    \"vars\": [");
    for (k, (name, dom)) in problem.names.iter().zip(problem.domain.iter()).enumerate() {
        s.push_str(if k == 0 { "\n" } else { ",\n" });
        let _ = write!(
            s,
            "      {{\"name\": {}, \"lo\": {}, \"hi\": {}}}",
            string(name),
            num(dom.lo()),
            num(dom.hi())
        );
    }
    s.push_str("\n    ],\n    \"constraints\": [");
    let cons: Vec<String> = problem.constraint_text.iter().map(|c| string(c)).collect();
    s.push_str(&cons.join(", "));
    s.push_str("]\n  },\n");
    let _ = write!(
        s,
        "  \"config\": {{\"eps\": {}, \"contractor\": {}, \"max_boxes\": {}, \"threads\": {}}},\n",
        num(paving.eps),
        string(&paving.contractor),
        settings.max_boxes,
        settings.threads
    );
    s.push_str("  \"result\": {\n    \"boundary\": ");
    boxes(&mut s, &paving.boundary, "      ");
    if paving.truncated {
        s.push_str(",\n    \"pending\": ");
        boxes(&mut s, &paving.pending, "      ");
    }
    let c = paving.counts;
    let ms = if settings.timing {
        paving.duration.as_secs_f64() * 1e3
    } else {
        0.0
    };
    let _ = write!(
        s,
        ",\n    \"counts\": {{\"boundary\": {}, \"discarded\": {}, \"bisections\": {}}},\n    \"duration_ms\": {},\n    \"truncated\": {}\n  }}\n}}\n",
        c.boundary,
        c.discarded,
        c.bisections,
        num(ms),
        paving.truncated
    );
    s
}

/// A paving document read back from JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct PavingDocument {
    pub names: Vec<String>,
    pub domain: IntervalBox,
    pub constraints: Vec<String>,
    pub eps: f64,
    pub contractor: String,
    pub boundary: Vec<IntervalBox>,
    pub counts: PavingCounts,
    pub truncated: bool,
}

fn layout(msg: &str) -> IoError {
    IoError::Layout(msg.to_string())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, IoError> {
    v.get(key).ok_or_else(|| layout(&format!("missing '{key}'")))
}

fn f64_of(v: &Value) -> Result<f64, IoError> {
    v.as_f64().ok_or_else(|| layout("expected a number"))
}

fn usize_of(v: &Value) -> Result<usize, IoError> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| layout("expected a non-negative integer"))
}

fn interval_of(v: &Value) -> Result<Interval, IoError> {
    match v.as_array().map(Vec::as_slice) {
        Some([lo, hi]) => Interval::checked(f64_of(lo)?, f64_of(hi)?).ok_or_else(|| layout("interval with lo > hi")),
        _ => Err(layout("expected [lo, hi]")),
    }
}

fn box_of(v: &Value) -> Result<IntervalBox, IoError> {
    let comps = v
        .as_array()
        .ok_or_else(|| layout("expected a box"))?
        .iter()
        .map(interval_of)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntervalBox::new(comps))
}

pub fn paving_from_json(text: &str) -> Result<PavingDocument, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let problem = get(&v, "problem")?;
    let config = get(&v, "config")?;
    let result = get(&v, "result")?;
    let mut names = Vec::new();
    let mut doms = Vec::new();
    for var in get(problem, "vars")?.as_array().ok_or_else(|| layout("'vars' is not a list"))? {
        names.push(
            get(var, "name")?
                .as_str()
                .ok_or_else(|| layout("variable name is not a string"))?
                .to_string(),
        );
        let (lo, hi) = (f64_of(get(var, "lo")?)?, f64_of(get(var, "hi")?)?);
        doms.push(Interval::checked(lo, hi).ok_or_else(|| layout("domain with lo > hi"))?);
    }
    let constraints = get(problem, "constraints")?
        .as_array()
        .ok_or_else(|| layout("'constraints' is not a list"))?
        .iter()
        .map(|c| c.as_str().map(str::to_string).ok_or_else(|| layout("constraint is not a string")))
        .collect::<Result<Vec<_>, _>>()?;
    let boundary = get(result, "boundary")?
        .as_array()
        .ok_or_else(|| layout("'boundary' is not a list"))?
        .iter()
        .map(box_of)
        .collect::<Result<Vec<_>, _>>()?;
    if boundary.iter().any(|b| b.dim() != names.len()) {
        return Err(layout("box dimension differs from the number of variables"));
    }
    let counts = get(result, "counts")?;
    Ok(PavingDocument {
        names,
        domain: IntervalBox::new(doms),
        constraints,
        eps: f64_of(get(config, "eps")?)?,
        contractor: get(config, "contractor")?
            .as_str()
            .ok_or_else(|| layout("'contractor' is not a string"))?
            .to_string(),
        boundary,
        counts: PavingCounts {
            boundary: usize_of(get(counts, "boundary")?)?,
            discarded: usize_of(get(counts, "discarded")?)?,
            bisections: usize_of(get(counts, "bisections")?)?,
        },
        truncated: get(result, "truncated")?
            .as_bool()
            .ok_or_else(|| layout("'truncated' is not a boolean"))?,
    })
}

/// Renders the projection of the boundary onto `dims` as SVG.
///
/// `frame` is the plotted window; it defaults to the projected initial box.
/// The y axis points up.
pub fn paving_to_svg(paving: &Paving, dims: (usize, usize), frame: Option<[(f64, f64); 2]>, labels: [&str; 2]) -> Result<String, IoError> {
    let n = paving.initial.dim();
    if dims.0 == dims.1 || dims.0 >= n || dims.1 >= n {
        return Err(IoError::Projection(n));
    }
    let frame = frame.unwrap_or_else(|| {
        let (a, b) = (paving.initial[dims.0], paving.initial[dims.1]);
        [(a.lo(), a.hi()), (b.lo(), b.hi())]
    });
    let rects = project(paving, dims);
    Ok(svg_rects(&rects, frame, labels))
}

/// SVG for a list of 2-D rectangles inside `frame`.
pub fn svg_rects(rects: &[[Interval; 2]], frame: [(f64, f64); 2], labels: [&str; 2]) -> String {
    const SIZE: f64 = 1000.0;
    const PAD: f64 = 60.0;
    let [(x0, x1), (y0, y1)] = frame;
    let sx = (SIZE - 2.0 * PAD) / (x1 - x0);
    let sy = (SIZE - 2.0 * PAD) / (y1 - y0);
    let px = |x: f64| PAD + (x - x0) * sx;
    let py = |y: f64| SIZE - PAD - (y - y0) * sy;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\" width=\"{SIZE}\" height=\"{SIZE}\">"
    );
    let _ = writeln!(s, "<!-- frame [{x0}, {x1}] x [{y0}, {y1}], {} boxes -->", rects.len());
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
    let _ = writeln!(s, "<defs><clipPath id=\"frame\"><rect x=\"{PAD}\" y=\"{PAD}\" width=\"{w}\" height=\"{w}\"/></clipPath></defs>", w = SIZE - 2.0 * PAD);
    let _ = writeln!(s, "<g clip-path=\"url(#frame)\" fill=\"#1f5fa8\" fill-opacity=\"0.85\">");
    for [a, b] in rects {
        let (left, right) = (px(a.lo()), px(a.hi()));
        let (top, bottom) = (py(b.hi()), py(b.lo()));
        // boxes thinner than a pixel stay visible
        let w = (right - left).max(0.5);
        let h = (bottom - top).max(0.5);
        let _ = writeln!(s, "<rect x=\"{left:.3}\" y=\"{top:.3}\" width=\"{w:.3}\" height=\"{h:.3}\"/>");
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{w}\" height=\"{w}\" fill=\"none\" stroke=\"black\"/>",
        w = SIZE - 2.0 * PAD
    );
    for (k, (v, pos)) in [(x0, PAD), (x1, SIZE - PAD)].into_iter().enumerate() {
        let anchor = if k == 0 { "start" } else { "end" };
        let _ = writeln!(s, "<text x=\"{pos}\" y=\"{}\" font-size=\"20\" text-anchor=\"{anchor}\">{v}</text>", SIZE - PAD + 28.0);
    }
    for (v, pos) in [(y0, SIZE - PAD), (y1, PAD + 16.0)] {
        let _ = writeln!(s, "<text x=\"{}\" y=\"{pos}\" font-size=\"20\" text-anchor=\"end\">{v}</text>", PAD - 8.0);
    }
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"24\" text-anchor=\"middle\">{}</text>", SIZE / 2.0, SIZE - 18.0, xml_escape(labels[0]));
    let _ = writeln!(s, "<text x=\"24\" y=\"{}\" font-size=\"24\" text-anchor=\"middle\" transform=\"rotate(-90 24 {})\">{}</text>", SIZE / 2.0, SIZE / 2.0, xml_escape(labels[1]));
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
