//! Symbolic differentiation over the DAG.

use super::{ExprBuilder, Expression, Node};
use crate::interval::{BinaryOp, UnaryOp};

impl Expression {
    /// Partial derivative with respect to variable `var`.
    ///
    /// Only the identities `0·u → 0`, `1·u → u` and `u + 0 → u` are applied.
    pub fn differentiate(&self, var: usize) -> Expression {
        assert!(var < self.n_vars, "variable index {var} out of range");
        let mut b = ExprBuilder::new(self.n_vars);
        // map[i]: node i of `self` inside the new arena
        let mut map = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let idx = match *node {
                Node::Var(i) => b.var(i),
                Node::Const(c) => b.constant(c),
                Node::Unary(op, a) => b.unary(op, map[a]),
                Node::Binary(op, l, r) => b.binary(op, map[l], map[r]),
            };
            map.push(idx);
        }

        // None stands for an identically zero derivative
        let mut d: Vec<Option<usize>> = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let di = match *node {
                Node::Var(j) if j == var => Some(b.constant(1.0)),
                Node::Var(_) | Node::Const(_) => None,
                Node::Unary(op, a) => d[a].and_then(|da| {
                    let u = map[a];
                    match op {
                        UnaryOp::Neg => Some(b.unary(UnaryOp::Neg, da)),
                        UnaryOp::Sqr | UnaryOp::Pow(2) => {
                            let two = b.constant(2.0);
                            let t = b.mul_s(two, u);
                            Some(b.mul_s(t, da))
                        }
                        UnaryOp::Pow(0) => None,
                        UnaryOp::Pow(1) => Some(da),
                        UnaryOp::Pow(k) => {
                            let kc = b.constant(k as f64);
                            let p = if k == 3 {
                                b.unary(UnaryOp::Sqr, u)
                            } else {
                                b.unary(UnaryOp::Pow(k - 1), u)
                            };
                            let t = b.mul_s(kc, p);
                            Some(b.mul_s(t, da))
                        }
                        UnaryOp::Exp => Some(b.mul_s(da, map[i])),
                        UnaryOp::Sin => {
                            let c = b.unary(UnaryOp::Cos, u);
                            Some(b.mul_s(da, c))
                        }
                        UnaryOp::Cos => {
                            let s = b.unary(UnaryOp::Sin, u);
                            let t = b.mul_s(da, s);
                            Some(b.unary(UnaryOp::Neg, t))
                        }
                    }
                }),
                Node::Binary(op, l, r) => {
                    let (u, v) = (map[l], map[r]);
                    match (op, d[l], d[r]) {
                        (_, None, None) => None,
                        (BinaryOp::Add, Some(du), None) | (BinaryOp::Sub, Some(du), None) => Some(du),
                        (BinaryOp::Add, None, Some(dv)) => Some(dv),
                        (BinaryOp::Add, Some(du), Some(dv)) => Some(b.add_s(du, dv)),
                        (BinaryOp::Sub, None, Some(dv)) => Some(b.unary(UnaryOp::Neg, dv)),
                        (BinaryOp::Sub, Some(du), Some(dv)) => {
                            Some(b.binary(BinaryOp::Sub, du, dv))
                        }
                        (BinaryOp::Mul, du, dv) => {
                            let left = du.map(|du| b.mul_s(du, v));
                            let right = dv.map(|dv| b.mul_s(u, dv));
                            match (left, right) {
                                (Some(x), Some(y)) => Some(b.add_s(x, y)),
                                (x, y) => x.or(y),
                            }
                        }
                        (BinaryOp::Div, Some(du), None) => Some(b.binary(BinaryOp::Div, du, v)),
                        (BinaryOp::Div, du, Some(dv)) => {
                            // (du·v − u·dv) / v²
                            let udv = b.mul_s(u, dv);
                            let num = match du {
                                Some(du) => {
                                    let duv = b.mul_s(du, v);
                                    b.binary(BinaryOp::Sub, duv, udv)
                                }
                                None => b.unary(UnaryOp::Neg, udv),
                            };
                            let den = b.unary(UnaryOp::Sqr, v);
                            Some(b.binary(BinaryOp::Div, num, den))
                        }
                    }
                }
            };
            d.push(di);
        }
        match d[self.root()] {
            Some(root) => b.finish(root),
            None => Expression::constant(0.0, self.n_vars),
        }
    }
}
