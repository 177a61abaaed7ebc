//! Infix printing with the minimal parentheses the parser needs.

use super::{Expression, Node};
use crate::interval::{BinaryOp, UnaryOp};
use std::fmt;

/// Borrowing wrapper that prints an expression with variable names.
pub struct ExprDisplay<'a> {
    expr: &'a Expression,
    names: Option<&'a [String]>,
}

impl Expression {
    /// Displays the expression using `names[i]` for variable `i`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay {
            expr: self,
            names: Some(names),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ExprDisplay {
            expr: self,
            names: None,
        }
        .fmt(f)
    }
}

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn level(node: &Node) -> u8 {
    match node {
        Node::Const(c) if c.is_sign_negative() => NEG,
        Node::Var(_) | Node::Const(_) => ATOM,
        Node::Unary(UnaryOp::Neg, _) => NEG,
        Node::Unary(UnaryOp::Pow(_), _) => POW,
        Node::Unary(..) => ATOM,
        Node::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => ADD,
        Node::Binary(..) => MUL,
    }
}

impl ExprDisplay<'_> {
    fn write_node(&self, f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
        let nodes = self.expr.nodes();
        match nodes[i] {
            Node::Var(v) => match self.names {
                Some(names) => write!(f, "{}", names[v]),
                None => write!(f, "x{v}"),
            },
            Node::Const(c) => write!(f, "{c}"),
            Node::Unary(op, a) => {
                let name = match op {
                    UnaryOp::Neg => {
                        write!(f, "-")?;
                        return self.write_child(f, a, level(&nodes[a]) < NEG);
                    }
                    UnaryOp::Pow(k) => {
                        self.write_child(f, a, level(&nodes[a]) < ATOM)?;
                        return write!(f, "^{k}");
                    }
                    UnaryOp::Sqr => "sqr",
                    UnaryOp::Exp => "exp",
                    UnaryOp::Sin => "sin",
                    UnaryOp::Cos => "cos",
                };
                write!(f, "{name}(")?;
                self.write_node(f, a)?;
                write!(f, ")")
            }
            Node::Binary(op, a, b) => {
                let (sym, lvl) = match op {
                    BinaryOp::Add => (" + ", ADD),
                    BinaryOp::Sub => (" - ", ADD),
                    BinaryOp::Mul => ("*", MUL),
                    BinaryOp::Div => ("/", MUL),
                };
                self.write_child(f, a, level(&nodes[a]) < lvl)?;
                write!(f, "{sym}")?;
                self.write_child(f, b, level(&nodes[b]) <= lvl)
            }
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, i: usize, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "(")?;
            self.write_node(f, i)?;
            write!(f, ")")
        } else {
            self.write_node(f, i)
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(f, self.expr.root())
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse_expression;

    fn reprint(s: &str, vars: &[&str]) -> String {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_expression(s, vars).unwrap().display(&names).to_string()
    }

    #[test]
    fn minimal_parentheses() {
        let v = ["x", "y", "z"];
        assert_eq!(reprint("((x)+(y*z))", &v), "x + y*z");
        assert_eq!(reprint("x - (y - z)", &v), "x - (y - z)");
        assert_eq!(reprint("(x - y) - z", &v), "x - y - z");
        assert_eq!(reprint("-(x*y)", &v), "-(x*y)");
        assert_eq!(reprint("(-x)^2", &v), "(-x)^2");
        assert_eq!(reprint("-x^2", &v), "-x^2");
        assert_eq!(reprint("x / (y * z)", &v), "x/(y*z)");
        assert_eq!(reprint("sin( x*y ) + sqr(z)", &v), "sin(x*y) + sqr(z)");
    }

    #[test]
    fn unnamed_variables() {
        let e = parse_expression("a*b", &["a", "b"]).unwrap();
        assert_eq!(e.to_string(), "x0*x1");
    }
}
