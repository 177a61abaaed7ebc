//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | ident | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | exp | sqr
//! ```

use super::{Expression, ExprBuilder};
use crate::interval::{BinaryOp, UnaryOp};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown function '{0}'")]
    UnknownFunction(String),
    #[error("invalid number '{0}'")]
    InvalidNumber(String),
    #[error("exponent must be a non-negative integer")]
    InvalidExponent,
}

/// A parse failure at a 0-based character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at column {}", .pos + 1)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64, String),
    Ident(String),
    Op(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_, s) => format!("number '{s}'"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| ParseError {
                kind: ParseErrorKind::InvalidNumber(s.clone()),
                pos: start,
            })?;
            out.push((Tok::Num(v, s), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::UnexpectedChar(c),
                pos: i,
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [&'a str],
    b: ExprBuilder,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Unexpected {
                found: self.peek().describe(),
                expected,
            },
            pos: self.pos(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(if c == ')' { "')'" } else { "'('" }))
        }
    }

    fn expr(&mut self) -> Result<usize, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinaryOp::Add,
                Tok::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = self.b.binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<usize, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinaryOp::Mul,
                Tok::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = self.b.binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<usize, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            let a = self.unary()?;
            return Ok(self.b.unary(UnaryOp::Neg, a));
        }
        self.power()
    }

    fn power(&mut self) -> Result<usize, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v, s) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 && !s.contains('.') => {
                Ok(self.b.unary(UnaryOp::Pow(v as u32), base))
            }
            _ => Err(ParseError {
                kind: ParseErrorKind::InvalidExponent,
                pos,
            }),
        }
    }

    fn atom(&mut self) -> Result<usize, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(v, _) => {
                self.bump();
                Ok(self.b.constant(v))
            }
            Tok::Op('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::Op('(') {
                    let op = match name.as_str() {
                        "sin" => UnaryOp::Sin,
                        "cos" => UnaryOp::Cos,
                        "exp" => UnaryOp::Exp,
                        "sqr" => UnaryOp::Sqr,
                        _ => {
                            return Err(ParseError {
                                kind: ParseErrorKind::UnknownFunction(name),
                                pos,
                            })
                        }
                    };
                    self.bump();
                    let a = self.expr()?;
                    self.expect(')')?;
                    return Ok(self.b.unary(op, a));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(self.b.var(i)),
                    None => Err(ParseError {
                        kind: ParseErrorKind::UnknownVariable(name),
                        pos,
                    }),
                }
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

/// Parses `text` over the ordered variable list `vars`.
pub fn parse_expression(text: &str, vars: &[&str]) -> Result<Expression, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        vars,
        b: ExprBuilder::new(vars.len()),
    };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(p.b.finish(root))
}
