use super::{ExprBuilder, Expression};
use crate::interval::{BinaryOp, Interval, IntervalBox};
use crate::linalg::RealMatrix;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionError {
    #[error("component {component} references variable {var} but only {n} are declared")]
    UndeclaredVariable { component: usize, var: usize, n: usize },
    #[error("expected {expected} variable names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// A dense `rows × cols` matrix of intervals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Interval) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntervalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Interval {
        self.data[i * self.cols + j]
    }

    /// `Q · self` with each entry accumulated in interval arithmetic.
    pub fn left_mul_real(&self, q: &RealMatrix) -> IntervalMatrix {
        assert_eq!(q.cols(), self.rows, "dimension mismatch");
        IntervalMatrix::from_fn(q.rows(), self.cols, |i, j| {
            (0..self.rows).fold(Interval::ZERO, |acc, k| {
                let c = q.get(i, k);
                if c == 0.0 {
                    acc
                } else {
                    acc + self.get(k, j).scale(c)
                }
            })
        })
    }

    /// Midpoint matrix.
    pub fn mid(&self) -> RealMatrix {
        RealMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mid())
    }
}

/// A vector function `R^n -> R^p` with its symbolic Jacobian.
#[derive(Clone, Debug)]
pub struct Function {
    names: Vec<String>,
    components: Vec<Expression>,
    /// `jacobian[i][j] = ∂f_i/∂x_j`
    jacobian: Vec<Vec<Expression>>,
}

impl Function {
    pub fn new(names: Vec<String>, components: Vec<Expression>) -> Result<Self, FunctionError> {
        let n = names.len();
        for (c, e) in components.iter().enumerate() {
            if e.n_vars() != n {
                return Err(FunctionError::NameCount {
                    expected: e.n_vars(),
                    got: n,
                });
            }
            if let Some(&var) = e.variables().iter().find(|&&v| v >= n) {
                return Err(FunctionError::UndeclaredVariable { component: c, var, n });
            }
        }
        let jacobian = components
            .iter()
            .map(|e| (0..n).map(|j| e.differentiate(j)).collect())
            .collect();
        Ok(Function {
            names,
            components,
            jacobian,
        })
    }

    /// Input dimension.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Output dimension.
    pub fn p(&self) -> usize {
        self.components.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn components(&self) -> &[Expression] {
        &self.components
    }

    pub fn partial(&self, i: usize, j: usize) -> &Expression {
        &self.jacobian[i][j]
    }

    pub fn eval_real(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|e| e.eval_real(x)).collect()
    }

    pub fn eval_interval(&self, x: &IntervalBox) -> Vec<Interval> {
        self.components.iter().map(|e| e.eval_interval(x)).collect()
    }

    pub fn jacobian_real(&self, x: &[f64]) -> RealMatrix {
        RealMatrix::from_fn(self.p(), self.n(), |i, j| self.jacobian[i][j].eval_real(x))
    }

    pub fn jacobian_interval(&self, x: &IntervalBox) -> IntervalMatrix {
        IntervalMatrix::from_fn(self.p(), self.n(), |i, j| self.jacobian[i][j].eval_interval(x))
    }

    /// `g = Q·f`, built structurally as linear combinations of components.
    ///
    /// The Jacobian of `g` is assembled the same way from the Jacobian of `f`,
    /// which equals `Q·J_f` exactly.
    pub fn linear_combination(&self, q: &RealMatrix) -> Function {
        assert_eq!(q.cols(), self.p(), "dimension mismatch");
        let n = self.n();
        let combine = |exprs: &mut dyn Iterator<Item = &Expression>, row: usize| {
            let mut b = ExprBuilder::new(n);
            let mut acc: Option<usize> = None;
            for (k, e) in exprs.enumerate() {
                let c = q.get(row, k);
                if c == 0.0 {
                    continue;
                }
                let sub = b.import(e);
                let coeff = b.constant(c);
                let term = b.mul_s(coeff, sub);
                acc = Some(match acc {
                    Some(a) => b.binary(BinaryOp::Add, a, term),
                    None => term,
                });
            }
            match acc {
                Some(root) => b.finish(root),
                None => Expression::constant(0.0, n),
            }
        };
        let components = (0..q.rows())
            .map(|i| combine(&mut self.components.iter(), i))
            .collect();
        let jacobian = (0..q.rows())
            .map(|i| {
                (0..n)
                    .map(|j| combine(&mut self.jacobian.iter().map(|row| &row[j]), i))
                    .collect()
            })
            .collect();
        Function {
            names: self.names.clone(),
            components,
            jacobian,
        }
    }
}
