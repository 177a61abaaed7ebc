//! Contractors for `f(x) = 0`.
//!
//! A contractor maps a box to a sub-box without removing any solution. This
//! module provides forward-backward propagation ([`Hc4Revise`], [`Hc4`]),
//! the centered-form contractor ([`CenteredContractor`]) and combinators.

use crate::expr::{Expression, Function, IntervalMatrix, Node};
use crate::interval::{backward_binary, backward_unary, BinaryOp, Interval, IntervalBox, UnaryOp};
use crate::linalg::{gauss_jordan_preconditioner_with, LinalgConfig, RealMatrix};
use std::fmt;
use std::str::FromStr;

/// Relative width gain below which fixpoint loops stop.
pub const DEFAULT_FIX_TOL: f64 = 1e-3;

pub trait Contractor: Send + Sync {
    /// Returns a sub-box of `x` that keeps every solution contained in `x`.
    fn contract(&self, x: &IntervalBox) -> IntervalBox;

    fn name(&self) -> String;
}

/// Largest relative width reduction over the components of `before`.
pub fn relative_gain(before: &IntervalBox, after: &IntervalBox) -> f64 {
    if after.is_empty() {
        return 1.0;
    }
    before
        .iter()
        .zip(after.iter())
        .map(|(b, a)| {
            let wb = b.width();
            if wb > 0.0 && wb.is_finite() {
                (wb - a.width()) / wb
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

/// Forward-backward propagation of a single constraint `c(x) = 0`.
pub fn hc4_revise(c: &Expression, x: &IntervalBox) -> IntervalBox {
    hc4_revise_range(c, x, Interval::ZERO)
}

/// Forward-backward propagation of `c(x) ∈ range`.
pub fn hc4_revise_range(c: &Expression, x: &IntervalBox, range: Interval) -> IntervalBox {
    if x.is_empty() {
        return x.clone();
    }
    let nodes = c.nodes();
    let mut vals = c.forward(x);
    let root = c.root();
    vals[root] = vals[root].intersect(&range);
    let mut out = x.clone();
    for i in (0..nodes.len()).rev() {
        let y = vals[i];
        if y.is_empty() {
            return IntervalBox::empty(x.dim());
        }
        match nodes[i] {
            Node::Var(j) => out[j] = out[j].intersect(&y),
            Node::Const(_) => {}
            Node::Unary(op, a) => vals[a] = backward_unary(op, y, vals[a]),
            // x*x and x+x are relations on a single value
            Node::Binary(BinaryOp::Mul, a, b) if a == b => vals[a] = backward_unary(UnaryOp::Sqr, y, vals[a]),
            Node::Binary(BinaryOp::Add, a, b) if a == b => vals[a] = vals[a].intersect(&y.scale(0.5)),
            Node::Binary(op, a, b) => {
                let (va, vb) = backward_binary(op, y, vals[a], vals[b]);
                if a == b {
                    vals[a] = va.intersect(&vb);
                } else {
                    vals[a] = va;
                    vals[b] = vb;
                }
            }
        }
    }
    if out.is_empty() {
        out.set_empty();
    }
    out
}

/// Cyclic HC4-Revise over every component of `f` until the relative width
/// gain of a full round drops below `fix_tol`.
pub fn hc4_fixpoint(f: &Function, x: &IntervalBox, fix_tol: f64) -> IntervalBox {
    let mut cur = x.clone();
    for _ in 0..10_000 {
        if cur.is_empty() {
            return cur;
        }
        let before = cur.clone();
        for c in f.components() {
            cur = hc4_revise(c, &cur);
            if cur.is_empty() {
                return cur;
            }
        }
        if relative_gain(&before, &cur) < fix_tol {
            break;
        }
    }
    cur
}

/// One centered update of `x_j` from row `i`:
/// `x_j ∩ (m_j - (g_i + Σ_{k≠j} J_ik (x_k - m_k)) / J_ij)`.
fn centered_update(g: Interval, j_row: &[Interval], x: &IntervalBox, m: &[f64], j: usize) -> Interval {
    let a = j_row[j];
    let mut s = g;
    for (k, &jk) in j_row.iter().enumerate() {
        if k != j && jk != Interval::ZERO {
            s = s + jk * (x[k] - Interval::point(m[k]));
        }
    }
    let (p1, p2) = (-s).div_extended(a);
    let mj = Interval::point(m[j]);
    let xj = &x[j];
    let c1 = if p1.is_empty() { p1 } else { (mj + p1).intersect(xj) };
    let c2 = if p2.is_empty() { p2 } else { (mj + p2).intersect(xj) };
    c1.hull(&c2)
}

/// Interval propagation over the linearization `g_mid + J·(x - m) = 0`.
///
/// Rows are swept forward then in reverse, each row updating every column in
/// increasing order. The double sweep is repeated once when it shrank some
/// component by more than `repeat_gain`.
pub fn centered_linear_propagate_with(
    g_mid: &[Interval],
    jac: &IntervalMatrix,
    x: &IntervalBox,
    m: &[f64],
    repeat_gain: f64,
) -> IntervalBox {
    let (p, n) = (jac.rows(), jac.cols());
    assert_eq!(g_mid.len(), p);
    assert_eq!(x.dim(), n);
    assert_eq!(m.len(), n);
    let rows: Vec<Vec<Interval>> = (0..p).map(|i| (0..n).map(|j| jac.get(i, j)).collect()).collect();
    let mut cur = x.clone();
    if cur.is_empty() {
        return cur;
    }
    for pass in 0..2 {
        let before = cur.clone();
        for i in (0..p).chain((0..p).rev()) {
            for j in 0..n {
                if rows[i][j] == Interval::ZERO {
                    continue;
                }
                let xj = centered_update(g_mid[i], &rows[i], &cur, m, j);
                if xj.is_empty() {
                    return IntervalBox::empty(n);
                }
                cur[j] = xj;
            }
        }
        if pass == 0 && relative_gain(&before, &cur) <= repeat_gain {
            break;
        }
    }
    cur
}

pub fn centered_linear_propagate(g_mid: &[Interval], jac: &IntervalMatrix, x: &IntervalBox, m: &[f64]) -> IntervalBox {
    centered_linear_propagate_with(g_mid, jac, x, m, CenteredConfig::default().repeat_gain)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredConfig {
    pub linalg: LinalgConfig,
    /// Skip the Gauss-Jordan step (identity preconditioner).
    pub precondition: bool,
    pub repeat_gain: f64,
}

impl Default for CenteredConfig {
    fn default() -> Self {
        CenteredConfig {
            linalg: LinalgConfig::default(),
            precondition: true,
            repeat_gain: 0.01,
        }
    }
}

/// Centered-form contractor with Gauss-Jordan preconditioning.
///
/// 1. `m = center([x])`
/// 2. `Q` makes `Q · df/dx(m)` a tree (band) matrix; identity if singular
/// 3. `g = Q·f`, whose Jacobian enclosure is `Q · [df/dx]([x])`
/// 4. propagate over `g(m) + [J]·(x - m) = 0`
///
/// `g(m)` is enclosed by evaluating `f` on the degenerate box `[m, m]`.
#[derive(Clone, Debug)]
pub struct CenteredContractor {
    f: Function,
    cfg: CenteredConfig,
}

impl CenteredContractor {
    pub fn new(f: Function) -> Self {
        Self::with_config(f, CenteredConfig::default())
    }

    pub fn with_config(f: Function, cfg: CenteredConfig) -> Self {
        CenteredContractor { f, cfg }
    }

    pub fn function(&self) -> &Function {
        &self.f
    }

    fn preconditioner(&self, m: &[f64]) -> RealMatrix {
        let p = self.f.p();
        if !self.cfg.precondition {
            return RealMatrix::identity(p);
        }
        let a = self.f.jacobian_real(m);
        match gauss_jordan_preconditioner_with(&a, &self.cfg.linalg) {
            Ok(pc) if pc.q.is_finite() => pc.q,
            _ => RealMatrix::identity(p),
        }
    }
}

impl Contractor for CenteredContractor {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        if x.is_empty() || x.iter().any(|c| !c.is_bounded()) {
            return x.clone();
        }
        let m = x.center();
        let fm = self.f.eval_interval(&IntervalBox::from_point(&m));
        if fm.iter().any(Interval::is_empty) {
            return x.clone();
        }
        let q = self.preconditioner(&m);
        let jac = self.f.jacobian_interval(x).left_mul_real(&q);
        let g_mid: Vec<Interval> = (0..q.rows())
            .map(|i| {
                fm.iter().enumerate().fold(Interval::ZERO, |acc, (k, v)| {
                    let c = q.get(i, k);
                    if c == 0.0 {
                        acc
                    } else {
                        acc + v.scale(c)
                    }
                })
            })
            .collect();
        let out = centered_linear_propagate_with(&g_mid, &jac, x, &m, self.cfg.repeat_gain);
        out.intersect(x)
    }

    fn name(&self) -> String {
        "centered".into()
    }
}

/// `centered_contract(f, x)` with default settings.
pub fn centered_contract(f: &Function, x: &IntervalBox) -> IntervalBox {
    CenteredContractor::new(f.clone()).contract(x)
}

/// HC4-Revise on a single constraint.
#[derive(Clone, Debug)]
pub struct Hc4Revise {
    c: Expression,
}

impl Hc4Revise {
    pub fn new(c: Expression) -> Self {
        Hc4Revise { c }
    }
}

impl Contractor for Hc4Revise {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        hc4_revise(&self.c, x)
    }

    fn name(&self) -> String {
        "hc4-revise".into()
    }
}

/// HC4: HC4-Revise on every constraint, iterated to a fixpoint.
///
/// `fix_tol = ∞` stops after one round over the constraints.
#[derive(Clone, Debug)]
pub struct Hc4 {
    f: Function,
    pub fix_tol: f64,
}

impl Hc4 {
    pub fn new(f: Function) -> Self {
        Hc4 {
            f,
            fix_tol: DEFAULT_FIX_TOL,
        }
    }

    /// One HC4-Revise per constraint; the paver is the outer loop.
    pub fn single_round(f: Function) -> Self {
        Hc4 {
            f,
            fix_tol: f64::INFINITY,
        }
    }
}

impl Contractor for Hc4 {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        hc4_fixpoint(&self.f, x, self.fix_tol)
    }

    fn name(&self) -> String {
        if self.fix_tol.is_infinite() {
            "hc4".into()
        } else {
            "hc4-fixpoint".into()
        }
    }
}

pub struct Identity;

impl Contractor for Identity {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        x.clone()
    }

    fn name(&self) -> String {
        "identity".into()
    }
}

/// Sequential application of several contractors.
pub struct Compose(pub Vec<Box<dyn Contractor>>);

impl Contractor for Compose {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        let mut cur = x.clone();
        for c in &self.0 {
            if cur.is_empty() {
                break;
            }
            cur = c.contract(&cur);
        }
        cur
    }

    fn name(&self) -> String {
        self.0.iter().map(|c| c.name()).collect::<Vec<_>>().join("+")
    }
}

pub fn compose(contractors: Vec<Box<dyn Contractor>>) -> Compose {
    Compose(contractors)
}

/// Repeats a contractor until its relative width gain drops below `fix_tol`.
pub struct Fixpoint<C> {
    pub inner: C,
    pub fix_tol: f64,
    pub max_rounds: usize,
}

impl<C: Contractor> Contractor for Fixpoint<C> {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        let mut cur = x.clone();
        for _ in 0..self.max_rounds {
            if cur.is_empty() {
                break;
            }
            let next = self.inner.contract(&cur).intersect(&cur);
            let gain = relative_gain(&cur, &next);
            cur = next;
            if gain < self.fix_tol {
                break;
            }
        }
        cur
    }

    fn name(&self) -> String {
        format!("{}-fixpoint", self.inner.name())
    }
}

pub fn repeat_until_fixpoint<C: Contractor>(inner: C) -> Fixpoint<C> {
    Fixpoint {
        inner,
        fix_tol: DEFAULT_FIX_TOL,
        max_rounds: 1000,
    }
}

/// Contractor selector used by the paver and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContractorKind {
    /// One HC4-Revise round per box.
    Hc4,
    /// HC4-Revise rounds until the gain drops below [`DEFAULT_FIX_TOL`].
    Hc4Fixpoint,
    /// Centered contractor re-centered until the gain drops below [`DEFAULT_FIX_TOL`].
    Centered,
    /// A single centered contraction per box.
    CenteredSingle,
}

impl ContractorKind {
    pub const ALL: [ContractorKind; 4] = [
        ContractorKind::Hc4,
        ContractorKind::Hc4Fixpoint,
        ContractorKind::Centered,
        ContractorKind::CenteredSingle,
    ];

    pub fn build(self, f: &Function) -> Box<dyn Contractor> {
        match self {
            ContractorKind::Hc4 => Box::new(Hc4::single_round(f.clone())),
            ContractorKind::Hc4Fixpoint => Box::new(Hc4::new(f.clone())),
            ContractorKind::Centered => Box::new(Named {
                inner: repeat_until_fixpoint(CenteredContractor::new(f.clone())),
                name: "centered",
            }),
            ContractorKind::CenteredSingle => Box::new(Named {
                inner: CenteredContractor::new(f.clone()),
                name: "centered-single",
            }),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ContractorKind::Hc4 => "hc4",
            ContractorKind::Hc4Fixpoint => "hc4-fixpoint",
            ContractorKind::Centered => "centered",
            ContractorKind::CenteredSingle => "centered-single",
        }
    }
}

struct Named<C> {
    inner: C,
    name: &'static str,
}

impl<C: Contractor> Contractor for Named<C> {
    fn contract(&self, x: &IntervalBox) -> IntervalBox {
        self.inner.contract(x)
    }

    fn name(&self) -> String {
        self.name.into()
    }
}

impl fmt::Display for ContractorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ContractorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ContractorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown contractor '{s}' (expected hc4, hc4-fixpoint, centered or centered-single)"))
    }
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

    fn bx(b: &[(f64, f64)]) -> IntervalBox {
        IntervalBox::from_bounds(b)
    }

    #[test]
    fn hc4_revise_examples() {
        let v = ["x1", "x2"];
        let c = parse_expression("x1 + x2", &v).unwrap();
        assert!(hc4_revise(&c, &bx(&[(0.0, 2.0), (1.0, 3.0)])).is_empty());
        let c = parse_expression("x1 - x2", &v).unwrap();
        assert_eq!(hc4_revise(&c, &bx(&[(0.0, 1.0), (0.5, 2.0)])), bx(&[(0.5, 1.0), (0.5, 1.0)]));
        let c = parse_expression("sqr(x1) + sqr(x2) - 1", &v).unwrap();
        let x = bx(&[(0.0, 1.0), (0.0, 1.0)]);
        assert_eq!(hc4_revise(&c, &x), x);
    }

    #[test]
    fn hc4_fixpoint_on_a_coupled_linear_system() {
        // each equation alone is consistent with the whole square, so HC4
        // stalls while the centered form solves the system exactly
        let f = func(&["x1", "x2"], &["x1 + x2", "x1 - x2"]);
        let x = bx(&[(-1.0, 1.0), (-1.0, 1.0)]);
        assert_eq!(hc4_fixpoint(&f, &x, DEFAULT_FIX_TOL), x);
        assert_eq!(centered_contract(&f, &x), bx(&[(0.0, 0.0), (0.0, 0.0)]));
        let g = func(&["x1", "x2"], &["x1 - x2", "x2 - 0.5"]);
        assert_eq!(hc4_fixpoint(&g, &x, DEFAULT_FIX_TOL), bx(&[(0.5, 0.5), (0.5, 0.5)]));
        assert!(hc4_fixpoint(&f, &IntervalBox::empty(2), DEFAULT_FIX_TOL).is_empty());
    }

    #[test]
    fn shared_operand_backward() {
        // x*x is one node with both operands equal
        let c = parse_expression("x*x - 4", &["x"]).unwrap();
        let out = hc4_revise(&c, &bx(&[(0.0, 10.0)]));
        assert_eq!(out, bx(&[(2.0, 2.0)]));
    }

    #[test]
    fn linear_propagation_examples() {
        let one = Interval::point(1.0);
        let j = IntervalMatrix::from_fn(1, 2, |_, _| one);
        let x = bx(&[(0.0, 0.4), (0.0, 0.4)]);
        let out = centered_linear_propagate(&[Interval::point(-0.6)], &j, &x, &[0.2, 0.2]);
        assert!(out.is_empty());

        let j = IntervalMatrix::from_fn(1, 2, |_, k| if k == 0 { one } else { -one });
        let x = bx(&[(0.0, 1.0), (0.4, 0.6)]);
        let m = x.center();
        let g = Interval::point(m[0] - m[1]);
        let out = centered_linear_propagate(&[g], &j, &x, &m);
        assert_eq!(out[0], Interval::new(0.4, 0.6));
    }

    #[test]
    fn centered_on_linear_tree_system() {
        // x1 + x2 = 1, x2 - x3 = 0 on [0,1]^3: x1 = 1 - x3, x2 = x3
        let f = func(&["x1", "x2", "x3"], &["x1 + x2 - 1", "x2 - x3"]);
        let x = bx(&[(0.0, 0.3), (0.0, 1.0), (0.0, 1.0)]);
        let out = centered_contract(&f, &x);
        let expect = bx(&[(0.0, 0.3), (0.7, 1.0), (0.7, 1.0)]);
        for i in 0..3 {
            assert!((out[i].lo() - expect[i].lo()).abs() < 1e-12, "{out}");
            assert!((out[i].hi() - expect[i].hi()).abs() < 1e-12, "{out}");
        }
    }

    #[test]
    fn centered_keeps_point_solution() {
        let f = func(&["x", "y"], &["x^2 + y^2 - 1"]);
        let s = [0.6, 0.8];
        let x = IntervalBox::from_point(&s);
        let out = centered_contract(&f, &x);
        assert!(out.contains_point(&s));
    }

    #[test]
    fn compose_and_fixpoint() {
        let f = func(&["x", "y"], &["x^2 + y^2 - 1", "x - y"]);
        let x = bx(&[(0.0, 2.0), (0.0, 2.0)]);
        let c = Compose(vec![Box::new(Hc4::new(f.clone())), Box::new(Identity)]);
        assert_eq!(c.contract(&x), Hc4::new(f.clone()).contract(&x));
        let fp = repeat_until_fixpoint(CenteredContractor::new(f));
        let out = fp.contract(&x);
        assert!(out.is_subset(&x));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(out.contains_point(&[r, r]));
    }

    #[test]
    fn contractor_kind_parses() {
        assert_eq!("hc4".parse::<ContractorKind>(), Ok(ContractorKind::Hc4));
        assert_eq!("centered".parse::<ContractorKind>(), Ok(ContractorKind::Centered));
        assert!("newton".parse::<ContractorKind>().is_err());
    }
}
