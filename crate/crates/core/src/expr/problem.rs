//! Problem container and its line-oriented text format.
//!
//! ```text
//! # comment
//! var p1 in [0, 2.5]
//! constraint -w^2 + 2*w*sin(w*p1) + cos(w*p2) = 0
//! project p1 p2
//! ```

use super::{parse_expression, Expression, Function};
use crate::interval::{Interval, IntervalBox};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("no variables declared")]
    NoVariables,
    #[error("no constraints declared")]
    NoConstraints,
}

/// Variables with domains, equality constraints `c(x) = 0`, and an optional
/// plotting projection.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub names: Vec<String>,
    pub domain: IntervalBox,
    pub constraint_text: Vec<String>,
    pub constraints: Vec<Expression>,
    pub projection: Option<(usize, usize)>,
    /// Preferred plotting frame for the projection, if any.
    pub frame: Option<[(f64, f64); 2]>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ProblemError {
    ProblemError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Column (1-based, in chars) of byte offset `off` within `line`.
fn col_of(line: &str, off: usize) -> usize {
    line[..off].chars().count() + 1
}

fn parse_var(raw: &str, body_off: usize, lineno: usize) -> Result<(String, Interval), ProblemError> {
    let body = &raw[body_off..];
    let err = |msg: &str| syntax(lineno, col_of(raw, body_off), msg);
    let (name, rest) = body
        .trim_start()
        .split_once(char::is_whitespace)
        .ok_or_else(|| err("expected 'var <name> in [<lo>, <hi>]'"))?;
    if !is_ident(name) {
        return Err(err(&format!("invalid variable name '{name}'")));
    }
    let rest = rest.trim();
    let rest = rest
        .strip_prefix("in")
        .ok_or_else(|| err("expected 'in' after variable name"))?
        .trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| err("expected an interval '[<lo>, <hi>]'"))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| err("expected ',' between interval bounds"))?;
    let num = |s: &str| -> Result<f64, ProblemError> {
        let v: f64 = s.trim().parse().map_err(|_| err(&format!("invalid number '{}'", s.trim())))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(err("domain bounds must be finite"))
        }
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    let dom = Interval::checked(lo, hi).ok_or_else(|| err("empty domain: lower bound exceeds upper bound"))?;
    Ok((name.to_string(), dom))
}

impl ProblemSpec {
    /// Parses the problem text format.
    pub fn parse(text: &str) -> Result<ProblemSpec, ProblemError> {
        let mut names: Vec<String> = Vec::new();
        let mut doms = Vec::new();
        let mut pending_constraints = Vec::new();
        let mut pending_project = None;

        for (idx, full) in text.lines().enumerate() {
            let lineno = idx + 1;
            let raw = match full.find('#') {
                Some(i) => &full[..i],
                None => full,
            };
            let trimmed = raw.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let kw_off = raw.len() - trimmed.len();
            let kw_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let kw = &trimmed[..kw_end];
            let body_off = kw_off + kw_end;
            match kw {
                "var" => {
                    let (name, dom) = parse_var(raw, body_off, lineno)?;
                    if names.contains(&name) {
                        return Err(syntax(lineno, col_of(raw, body_off) + 1, format!("duplicate variable '{name}'")));
                    }
                    names.push(name);
                    doms.push(dom);
                }
                "constraint" => {
                    let body = &raw[body_off..];
                    let eq = body
                        .rfind('=')
                        .ok_or_else(|| syntax(lineno, col_of(raw, body_off), "expected '<expression> = 0'"))?;
                    let rhs = body[eq + 1..].trim();
                    if rhs.parse::<f64>().ok() != Some(0.0) {
                        return Err(syntax(
                            lineno,
                            col_of(raw, body_off + eq + 1),
                            "right-hand side must be 0",
                        ));
                    }
                    let lhs = &body[..eq];
                    let lead = lhs.len() - lhs.trim_start().len();
                    pending_constraints.push((lineno, raw.to_string(), body_off + lead, lhs.trim().to_string()));
                }
                "project" => {
                    let parts: Vec<&str> = raw[body_off..].split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(syntax(lineno, col_of(raw, body_off), "expected 'project <name> <name>'"));
                    }
                    pending_project = Some((lineno, parts[0].to_string(), parts[1].to_string()));
                }
                other => {
                    return Err(syntax(lineno, col_of(raw, kw_off), format!("unknown directive '{other}'")));
                }
            }
        }

        if names.is_empty() {
            return Err(ProblemError::NoVariables);
        }
        if pending_constraints.is_empty() {
            return Err(ProblemError::NoConstraints);
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut constraints = Vec::new();
        let mut constraint_text = Vec::new();
        for (lineno, raw, off, text) in pending_constraints {
            let e = parse_expression(&text, &refs).map_err(|e| {
                let byte = text.char_indices().nth(e.pos).map_or(text.len(), |(b, _)| b);
                syntax(lineno, col_of(&raw, off + byte), e.kind.to_string())
            })?;
            constraints.push(e);
            constraint_text.push(text);
        }
        let projection = match pending_project {
            None => None,
            Some((lineno, a, b)) => {
                let find = |s: &str| {
                    names
                        .iter()
                        .position(|n| n == s)
                        .ok_or_else(|| syntax(lineno, 1, format!("unknown variable '{s}' in projection")))
                };
                let (i, j) = (find(&a)?, find(&b)?);
                if i == j {
                    return Err(syntax(lineno, 1, "projection needs two distinct variables"));
                }
                Some((i, j))
            }
        };
        Ok(ProblemSpec {
            names,
            domain: IntervalBox::new(doms),
            constraint_text,
            constraints,
            projection,
            frame: None,
        })
    }

    pub fn function(&self) -> Function {
        Function::new(self.names.clone(), self.constraints.clone())
            .expect("constraints were parsed against the declared variables")
    }

    /// Renders the problem back into the text format.
    pub fn to_source(&self) -> String {
        let mut s = String::new();
        for (name, dom) in self.names.iter().zip(self.domain.iter()) {
            s.push_str(&format!("var {name} in [{}, {}]\n", dom.lo(), dom.hi()));
        }
        for c in &self.constraint_text {
            s.push_str(&format!("constraint {c} = 0\n"));
        }
        if let Some((i, j)) = self.projection {
            s.push_str(&format!("project {} {}\n", self.names[i], self.names[j]));
        }
        s
    }
}

/// Stability crossing set of `x'' + 2x'(t - p1) + x(t - p2) = 0`: the real
/// and imaginary parts of the characteristic function on `s = jω`.
pub fn builtin_delay2() -> ProblemSpec {
    let text = "\
var p1 in [0, 2.5]
var p2 in [1, 4]
var w in [0, 10]
constraint -w^2 + 2*w*sin(w*p1) + cos(w*p2) = 0
constraint 2*w*cos(w*p1) - sin(w*p2) = 0
project p1 p2
";
    let mut spec = ProblemSpec::parse(text).expect("built-in problem parses");
    spec.frame = Some([(0.0, 2.5), (2.0, 4.0)]);
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delay2_definition() {
        let p = builtin_delay2();
        assert_eq!(p.names, ["p1", "p2", "w"]);
        assert_eq!(p.domain, IntervalBox::from_bounds(&[(0.0, 2.5), (1.0, 4.0), (0.0, 10.0)]));
        let f = p.function();
        assert_eq!(f.eval_real(&[0.0, 0.0, 1.0]), vec![0.0, 2.0]);
        assert_eq!(p.projection, Some((0, 1)));
    }

    #[test]
    fn parse_with_comments_and_whitespace() {
        let src = "# circle\n  var x in [ -2 , 2 ]\nvar y in [-2,2] # trailing\n\nconstraint x^2 + y^2 - 1 = 0\n";
        let p = ProblemSpec::parse(src).unwrap();
        assert_eq!(p.names, ["x", "y"]);
        assert_eq!(p.constraints.len(), 1);
        assert_eq!(p.projection, None);
        let again = ProblemSpec::parse(&p.to_source()).unwrap();
        assert_eq!(again.domain, p.domain);
        assert_eq!(again.constraint_text, p.constraint_text);
    }

    #[test]
    fn errors_report_line_and_column() {
        let src = "var x in [0, 1]\nconstraint x + q = 0\n";
        match ProblemSpec::parse(src).unwrap_err() {
            ProblemError::Syntax { line, col, msg } => {
                assert_eq!(line, 2);
                assert_eq!(col, 16);
                assert!(msg.contains("unknown variable 'q'"), "{msg}");
            }
            e => panic!("{e:?}"),
        }
        let src = "var x in [2, 1]\nconstraint x = 0\n";
        assert!(matches!(ProblemSpec::parse(src), Err(ProblemError::Syntax { line: 1, .. })));
        let src = "var x in [0, 1]\nconstraint x = 1\n";
        assert!(matches!(ProblemSpec::parse(src), Err(ProblemError::Syntax { line: 2, .. })));
        let src = "var x in [0, 1]\nminimize x\n";
        assert!(matches!(ProblemSpec::parse(src), Err(ProblemError::Syntax { line: 2, col: 1, .. })));
        assert_eq!(ProblemSpec::parse("var x in [0,1]\n").unwrap_err(), ProblemError::NoConstraints);
        let src = "var x in [0, 1]\nvar x in [0, 1]\nconstraint x = 0\n";
        assert!(ProblemSpec::parse(src).is_err());
        let src = "var x in [0, 1]\nconstraint x = 0\nproject x z\n";
        assert!(ProblemSpec::parse(src).is_err());
    }
}
