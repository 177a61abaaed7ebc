#![allow(dead_code)]

use ivpave::expr::ExprBuilder;
use ivpave::interval::{BinaryOp, UnaryOp};
use ivpave::{Expression, Function, IntervalBox};
use proptest::prelude::*;

/// Recipe for a random expression, replayed through [`ExprBuilder`].
#[derive(Debug, Clone)]
pub enum Tree {
    Var(usize),
    Const(f64),
    Unary(UnaryOp, Box<Tree>),
    Binary(BinaryOp, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn build(&self, n: usize) -> Expression {
        fn go(t: &Tree, b: &mut ExprBuilder) -> usize {
            match t {
                Tree::Var(i) => b.var(*i),
                Tree::Const(c) => b.constant(*c),
                Tree::Unary(op, a) => {
                    let a = go(a, b);
                    b.unary(*op, a)
                }
                Tree::Binary(op, l, r) => {
                    let l = go(l, b);
                    let r = go(r, b);
                    b.binary(*op, l, r)
                }
            }
        }
        let mut b = ExprBuilder::new(n);
        let root = go(self, &mut b);
        b.finish(root)
    }
}

fn unary_op(smooth: bool) -> BoxedStrategy<UnaryOp> {
    let ops = if smooth {
        vec![UnaryOp::Neg, UnaryOp::Sqr, UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Pow(3)]
    } else {
        vec![UnaryOp::Neg, UnaryOp::Sqr, UnaryOp::Exp, UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Pow(3), UnaryOp::Pow(4)]
    };
    proptest::sample::select(ops).boxed()
}

/// Random expression in `n` variables; `smooth` leaves out division and exp.
pub fn tree(n: usize, smooth: bool) -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![
        3 => (0..n).prop_map(Tree::Var),
        1 => (-24i32..=24).prop_map(|k| Tree::Const(k as f64 / 8.0)),
    ];
    let binops = if smooth {
        vec![BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul]
    } else {
        vec![BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div]
    };
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (unary_op(smooth), inner.clone()).prop_map(|(op, a)| Tree::Unary(op, Box::new(a))),
            (proptest::sample::select(binops.clone()), inner.clone(), inner)
                .prop_map(|(op, l, r)| Tree::Binary(op, Box::new(l), Box::new(r))),
        ]
    })
}

/// A box with centers in [-4, 4] and a point inside it.
pub fn box_and_point(n: usize) -> impl Strategy<Value = (IntervalBox, Vec<f64>)> {
    proptest::collection::vec((-4.0f64..4.0, -8.0f64..0.7, 0.0f64..=1.0, 0.0f64..=1.0), n).prop_map(|v| {
        let bounds: Vec<(f64, f64)> = v
            .iter()
            .map(|&(c, lw, a, _)| {
                let w = 10f64.powf(lw);
                (c - a * w, c + (1.0 - a) * w)
            })
            .collect();
        let x = IntervalBox::from_bounds(&bounds);
        let pt = v
            .iter()
            .zip(x.iter())
            .map(|(&(_, _, _, t), c)| (c.lo() + t * (c.hi() - c.lo())).clamp(c.lo(), c.hi()))
            .collect();
        (x, pt)
    })
}

pub fn func(vars: &[&str], comps: &[&str]) -> Function {
    let names = vars.iter().map(|s| s.to_string()).collect();
    let comps = comps
        .iter()
        .map(|c| ivpave::parse_expression(c, vars).unwrap())
        .collect();
    Function::new(names, comps).unwrap()
}
