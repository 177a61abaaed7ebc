//! Expression DAGs over a fixed list of variables.
//!
//! Nodes are stored in topological order (children before parents) and the
//! root is the last node. Structurally identical subexpressions are shared
//! through hash-consing in [`ExprBuilder`].

mod diff;
mod function;
mod parse;
mod print;
mod problem;

use crate::interval::{BinaryOp, Interval, IntervalBox, UnaryOp};
use std::collections::HashMap;

pub use function::{Function, FunctionError, IntervalMatrix};
pub use parse::{parse_expression, ParseError, ParseErrorKind};
pub use print::ExprDisplay;
pub use problem::{builtin_delay2, ProblemError, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Node {
    Var(usize),
    Const(f64),
    Unary(UnaryOp, usize),
    Binary(BinaryOp, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Var(usize),
    Const(u64),
    Unary(UnaryOp, usize),
    Binary(BinaryOp, usize, usize),
}

impl From<Node> for Key {
    fn from(n: Node) -> Key {
        match n {
            Node::Var(i) => Key::Var(i),
            Node::Const(c) => Key::Const(c.to_bits()),
            Node::Unary(op, a) => Key::Unary(op, a),
            Node::Binary(op, a, b) => Key::Binary(op, a, b),
        }
    }
}

/// A scalar expression `R^n -> R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    nodes: Vec<Node>,
    n_vars: usize,
}

/// Hash-consing node arena used to assemble expressions.
#[derive(Debug, Default)]
pub struct ExprBuilder {
    nodes: Vec<Node>,
    memo: HashMap<Key, usize>,
    n_vars: usize,
}

impl ExprBuilder {
    pub fn new(n_vars: usize) -> Self {
        ExprBuilder {
            n_vars,
            ..Default::default()
        }
    }

    fn push(&mut self, node: Node) -> usize {
        let key = Key::from(node);
        if let Some(&i) = self.memo.get(&key) {
            return i;
        }
        self.nodes.push(node);
        let i = self.nodes.len() - 1;
        self.memo.insert(key, i);
        i
    }

    pub fn var(&mut self, i: usize) -> usize {
        assert!(i < self.n_vars, "variable index {i} out of range");
        self.push(Node::Var(i))
    }

    pub fn constant(&mut self, c: f64) -> usize {
        self.push(Node::Const(c))
    }

    pub fn unary(&mut self, op: UnaryOp, a: usize) -> usize {
        self.push(Node::Unary(op, a))
    }

    pub fn binary(&mut self, op: BinaryOp, a: usize, b: usize) -> usize {
        self.push(Node::Binary(op, a, b))
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    fn const_value(&self, i: usize) -> Option<f64> {
        match self.nodes[i] {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    fn negated(&self, i: usize) -> Option<usize> {
        match self.nodes[i] {
            Node::Unary(UnaryOp::Neg, u) => Some(u),
            _ => None,
        }
    }

    /// `a + b` with `u + 0 -> u` and `u + -v -> u - v`.
    pub fn add_s(&mut self, a: usize, b: usize) -> usize {
        match (self.const_value(a), self.const_value(b)) {
            (Some(x), _) if x == 0.0 => b,
            (_, Some(y)) if y == 0.0 => a,
            _ => match self.negated(b) {
                Some(v) => self.binary(BinaryOp::Sub, a, v),
                None => self.binary(BinaryOp::Add, a, b),
            },
        }
    }

    /// `a * b` with `0 * u -> 0`, `1 * u -> u` and negations pulled out.
    pub fn mul_s(&mut self, a: usize, b: usize) -> usize {
        match (self.const_value(a), self.const_value(b)) {
            (Some(x), _) if x == 0.0 => a,
            (_, Some(y)) if y == 0.0 => b,
            (Some(x), _) if x == 1.0 => b,
            (_, Some(y)) if y == 1.0 => a,
            _ => match (self.negated(a), self.negated(b)) {
                (Some(u), Some(v)) => self.mul_s(u, v),
                (Some(u), None) => {
                    let m = self.mul_s(u, b);
                    self.unary(UnaryOp::Neg, m)
                }
                (None, Some(v)) => {
                    let m = self.mul_s(a, v);
                    self.unary(UnaryOp::Neg, m)
                }
                (None, None) => self.binary(BinaryOp::Mul, a, b),
            },
        }
    }

    /// Copies the nodes of `e` into this arena; returns the new root index.
    pub fn import(&mut self, e: &Expression) -> usize {
        assert!(e.n_vars <= self.n_vars);
        let mut map = Vec::with_capacity(e.nodes.len());
        for node in &e.nodes {
            let idx = match *node {
                Node::Var(i) => self.push(Node::Var(i)),
                Node::Const(c) => self.push(Node::Const(c)),
                Node::Unary(op, a) => self.push(Node::Unary(op, map[a])),
                Node::Binary(op, a, b) => self.push(Node::Binary(op, map[a], map[b])),
            };
            map.push(idx);
        }
        *map.last().expect("expression has a root")
    }

    /// Finishes an expression rooted at `root`, dropping unreachable nodes.
    pub fn finish(&self, root: usize) -> Expression {
        let mut live = vec![false; root + 1];
        live[root] = true;
        for i in (0..=root).rev() {
            if !live[i] {
                continue;
            }
            match self.nodes[i] {
                Node::Unary(_, a) => live[a] = true,
                Node::Binary(_, a, b) => {
                    live[a] = true;
                    live[b] = true;
                }
                _ => {}
            }
        }
        let mut remap = vec![usize::MAX; root + 1];
        let mut nodes = Vec::new();
        for i in 0..=root {
            if !live[i] {
                continue;
            }
            let node = match self.nodes[i] {
                Node::Unary(op, a) => Node::Unary(op, remap[a]),
                Node::Binary(op, a, b) => Node::Binary(op, remap[a], remap[b]),
                n => n,
            };
            remap[i] = nodes.len();
            nodes.push(node);
        }
        Expression {
            nodes,
            n_vars: self.n_vars,
        }
    }
}

fn real_unary(op: UnaryOp, a: f64) -> f64 {
    match op {
        UnaryOp::Neg => -a,
        UnaryOp::Sqr => a * a,
        UnaryOp::Exp => a.exp(),
        UnaryOp::Sin => a.sin(),
        UnaryOp::Cos => a.cos(),
        UnaryOp::Pow(k) => a.powi(k as i32),
    }
}

fn real_binary(op: BinaryOp, a: f64, b: f64) -> f64 {
    match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div if b == 0.0 => f64::NAN,
        BinaryOp::Div => a / b,
    }
}

impl Expression {
    pub fn constant(c: f64, n_vars: usize) -> Self {
        Expression {
            nodes: vec![Node::Const(c)],
            n_vars,
        }
    }

    pub fn var(i: usize, n_vars: usize) -> Self {
        assert!(i < n_vars);
        Expression {
            nodes: vec![Node::Var(i)],
            n_vars,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Variable indices referenced anywhere in the expression.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Var(i) => Some(*i),
                _ => None,
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Floating-point evaluation. Division by zero yields NaN.
    pub fn eval_real(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n_vars, "point dimension mismatch");
        let mut vals = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => x[i],
                Node::Const(c) => c,
                Node::Unary(op, a) => real_unary(op, vals[a]),
                Node::Binary(op, a, b) => real_binary(op, vals[a], vals[b]),
            };
            vals.push(v);
        }
        vals[self.root()]
    }

    /// Natural interval extension: an enclosure of every node over `x`.
    pub fn forward(&self, x: &IntervalBox) -> Vec<Interval> {
        assert_eq!(x.dim(), self.n_vars, "box dimension mismatch");
        let mut vals: Vec<Interval> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                Node::Var(i) => x[i],
                Node::Const(c) => Interval::point(c),
                Node::Unary(op, a) => vals[a].apply_unary(op),
                // a shared operand is one value, not two independent ones
                Node::Binary(BinaryOp::Mul, a, b) if a == b => vals[a].sqr(),
                Node::Binary(BinaryOp::Sub, a, b) if a == b && !vals[a].is_empty() => Interval::ZERO,
                Node::Binary(op, a, b) => vals[a].apply_binary(op, vals[b]),
            };
            vals.push(v);
        }
        vals
    }

    pub fn eval_interval(&self, x: &IntervalBox) -> Interval {
        let vals = self.forward(x);
        vals[vals.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_shares_subexpressions() {
        let mut b = ExprBuilder::new(2);
        let x = b.var(0);
        let y = b.var(1);
        let p1 = b.binary(BinaryOp::Mul, x, y);
        let p2 = b.binary(BinaryOp::Mul, x, y);
        assert_eq!(p1, p2);
        let s = b.unary(UnaryOp::Sin, p1);
        let c = b.unary(UnaryOp::Cos, p2);
        let root = b.binary(BinaryOp::Add, s, c);
        let e = b.finish(root);
        assert_eq!(e.nodes().len(), 6);
    }

    #[test]
    fn finish_drops_dead_nodes() {
        let mut b = ExprBuilder::new(1);
        let x = b.var(0);
        let _dead = b.constant(7.0);
        let root = b.unary(UnaryOp::Exp, x);
        let e = b.finish(root);
        assert_eq!(e.nodes(), &[Node::Var(0), Node::Unary(UnaryOp::Exp, 0)]);
    }

    #[test]
    fn simplifying_constructors() {
        let mut b = ExprBuilder::new(1);
        let x = b.var(0);
        let zero = b.constant(0.0);
        let one = b.constant(1.0);
        assert_eq!(b.add_s(x, zero), x);
        assert_eq!(b.mul_s(one, x), x);
        assert_eq!(b.mul_s(x, zero), zero);
    }

    #[test]
    fn real_division_by_zero_is_nan() {
        let e = parse_expression("1 / x", &["x"]).unwrap();
        assert!(e.eval_real(&[0.0]).is_nan());
    }
}
