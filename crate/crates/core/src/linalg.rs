//! Small dense real matrices and the Gauss-Jordan preconditioner.
//!
//! The preconditioner returns an invertible `Q` such that `Q·A` is a tree
//! matrix whenever that is guaranteed: the reduced row echelon form for
//! `n - p <= 1`, optionally upgraded to the two-diagonal band form when
//! `n = p + 1` and every kernel coordinate of `A` is nonzero.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is rank deficient (pivot {pivot:e} below tolerance {tol:e})")]
    RankDeficient { pivot: f64, tol: f64 },
    #[error("matrix is ill conditioned (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Tolerances. Pivot and zero thresholds are relative to the largest entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinalgConfig {
    pub pivot_tol: f64,
    pub cond_tol: f64,
    pub zero_tol: f64,
    /// Try the band rewrite when `n = p + 1`. Off by default: RREF is already a tree there.
    pub band: bool,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        LinalgConfig {
            pivot_tol: 1e-12,
            zero_tol: 1e-12,
            cond_tol: 1e12,
            band: false,
        }
    }
}

/// Dense row-major real matrix.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RealMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn transpose(&self) -> RealMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: f64) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v *= s;
        }
    }

    /// `row[dst] -= s * row[src]`
    fn axpy_row(&mut self, dst: usize, src: usize, s: f64) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            self.data[dst * self.cols + j] -= s * v;
        }
    }

    /// Infinity norm (max row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn invert(&self) -> Result<RealMatrix, LinalgError> {
        self.invert_with(&LinalgConfig::default())
    }

    pub fn invert_with(&self, cfg: &LinalgConfig) -> Result<RealMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape(format!("cannot invert {}×{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let tol = cfg.pivot_tol * self.max_abs();
        let mut m = self.clone();
        let mut inv = RealMatrix::identity(n);
        for c in 0..n {
            let (r, piv) = (c..n)
                .map(|r| (r, m.get(r, c).abs()))
                .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(piv > tol) {
                return Err(LinalgError::RankDeficient { pivot: piv, tol });
            }
            m.swap_rows(c, r);
            inv.swap_rows(c, r);
            let s = 1.0 / m.get(c, c);
            m.scale_row(c, s);
            inv.scale_row(c, s);
            for k in 0..n {
                if k != c {
                    let f = m.get(k, c);
                    if f != 0.0 {
                        m.axpy_row(k, c, f);
                        inv.axpy_row(k, c, f);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(LinalgError::Shape("solve needs a square system".into()));
        }
        let n = self.rows;
        let tol = LinalgConfig::default().pivot_tol * self.max_abs();
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for c in 0..n {
            let (r, piv) = (c..n)
                .map(|r| (r, m.get(r, c).abs()))
                .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(piv > tol) {
                return Err(LinalgError::RankDeficient { pivot: piv, tol });
            }
            m.swap_rows(c, r);
            rhs.swap(c, r);
            for k in c + 1..n {
                let f = m.get(k, c) / m.get(c, c);
                if f != 0.0 {
                    m.axpy_row(k, c, f);
                    rhs[k] -= f * rhs[c];
                }
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| m.get(i, j) * x[j]).sum();
            x[i] = (rhs[i] - s) / m.get(i, i);
        }
        Ok(x)
    }

    /// Nonzero pattern with threshold `zero_tol · max|entry|`.
    pub fn pattern(&self, zero_tol: f64) -> Vec<Vec<bool>> {
        let tol = zero_tol * self.max_abs();
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs() > tol).collect())
            .collect()
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Shape of `Q·A` produced by the preconditioner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreconditionForm {
    /// Row `r` has a unit pivot at column `pivots[r]`, zeros in the other
    /// pivot columns, and arbitrary entries in the free columns.
    Rref { pivots: Vec<usize> },
    /// Row `i` is supported on columns `i` and `i + 1`.
    Band,
}

impl PreconditionForm {
    /// Structural pattern of `Q·A` for a `p × n` input.
    pub fn pattern(&self, p: usize, n: usize) -> Vec<Vec<bool>> {
        match self {
            PreconditionForm::Rref { pivots } => (0..p)
                .map(|r| (0..n).map(|j| j == pivots[r] || !pivots.contains(&j)).collect())
                .collect(),
            PreconditionForm::Band => (0..p).map(|r| (0..n).map(|j| j == r || j == r + 1).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Preconditioner {
    pub q: RealMatrix,
    pub form: PreconditionForm,
}

pub fn gauss_jordan_preconditioner(a: &RealMatrix) -> Result<Preconditioner, LinalgError> {
    gauss_jordan_preconditioner_with(a, &LinalgConfig::default())
}

/// Computes `Q` (`p × p`) such that `Q·A` is in reduced row echelon form with
/// greatest-magnitude pivoting, or band form (see module docs).
pub fn gauss_jordan_preconditioner_with(a: &RealMatrix, cfg: &LinalgConfig) -> Result<Preconditioner, LinalgError> {
    let (p, n) = (a.rows(), a.cols());
    if p > n {
        return Err(LinalgError::Shape(format!("{p}×{n} has more rows than columns")));
    }
    if !a.is_finite() {
        return Err(LinalgError::RankDeficient {
            pivot: f64::NAN,
            tol: 0.0,
        });
    }
    let tol = cfg.pivot_tol * a.max_abs();
    let mut m = a.clone();
    let mut q = RealMatrix::identity(p);
    let mut pivots = Vec::with_capacity(p);
    for r in 0..p {
        let mut best = (r, 0, -1.0);
        for i in r..p {
            for j in (0..n).filter(|j| !pivots.contains(j)) {
                let v = m.get(i, j).abs();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        let (i, j, piv) = best;
        if !(piv > tol) {
            return Err(LinalgError::RankDeficient { pivot: piv.max(0.0), tol });
        }
        m.swap_rows(r, i);
        q.swap_rows(r, i);
        let s = 1.0 / m.get(r, j);
        m.scale_row(r, s);
        q.scale_row(r, s);
        m.set(r, j, 1.0);
        for k in 0..p {
            if k != r {
                let f = m.get(k, j);
                if f != 0.0 {
                    m.axpy_row(k, r, f);
                    q.axpy_row(k, r, f);
                    m.set(k, j, 0.0);
                }
            }
        }
        pivots.push(j);
    }
    // order rows by pivot column so that Q·A is a true RREF
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&r| pivots[r]);
    let q = RealMatrix::from_fn(p, p, |i, k| q.get(order[i], k));
    let m = RealMatrix::from_fn(p, n, |i, j| m.get(order[i], j));
    let pivots: Vec<usize> = order.iter().map(|&r| pivots[r]).collect();

    if cfg.band && n == p + 1 && p > 0 {
        if let Some(band) = band_upgrade(&m, &q, &pivots, cfg) {
            return Ok(band);
        }
    }
    Ok(Preconditioner {
        q,
        form: PreconditionForm::Rref { pivots },
    })
}

/// Rewrites an RREF `R = Q·A` (one free column) into band form.
///
/// With `v` spanning `ker A`, the rows `(v[i+1], -v[i])` at columns `i, i+1`
/// lie in the row space of `A`; they are independent when every `v[i] != 0`.
/// Since `R` restricted to pivot columns is the identity, `D = T·R` with
/// `T[:, r] = D[:, pivots[r]]`, so the band preconditioner is `T·Q`.
fn band_upgrade(r: &RealMatrix, q: &RealMatrix, pivots: &[usize], cfg: &LinalgConfig) -> Option<Preconditioner> {
    let (p, n) = (r.rows(), r.cols());
    let free = (0..n).find(|j| !pivots.contains(j))?;
    let mut v = vec![0.0; n];
    v[free] = 1.0;
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -r.get(row, free);
    }
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if v.iter().any(|x| !(x.abs() > cfg.zero_tol * vmax)) {
        return None;
    }
    let d = RealMatrix::from_fn(p, n, |i, j| {
        let s = v[i].abs().max(v[i + 1].abs());
        if j == i {
            v[i + 1] / s
        } else if j == i + 1 {
            -v[i] / s
        } else {
            0.0
        }
    });
    let t = RealMatrix::from_fn(p, p, |i, k| d.get(i, pivots[k]));
    Some(Preconditioner {
        q: t.mul(q),
        form: PreconditionForm::Band,
    })
}

/// True iff the bipartite row/column incidence graph of `pattern` is acyclic.
pub fn is_tree_matrix(pattern: &[Vec<bool>]) -> bool {
    let p = pattern.len();
    let n = pattern.first().map_or(0, Vec::len);
    // vertices: rows 0..p, columns p..p+n
    let adj = |v: usize| -> Vec<usize> {
        if v < p {
            (0..n).filter(|&j| pattern[v][j]).map(|j| p + j).collect()
        } else {
            (0..p).filter(|&i| pattern[i][v - p]).collect()
        }
    };
    let mut seen = vec![false; p + n];
    for start in 0..p + n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![(start, usize::MAX)];
        while let Some((v, parent)) = stack.pop() {
            for w in adj(v) {
                if w == parent {
                    continue;
                }
                if seen[w] {
                    return false;
                }
                seen[w] = true;
                stack.push((w, v));
            }
        }
    }
    true
}

/// `Aᵀ(A·Aᵀ)⁻¹` for full-row-rank `A`.
pub fn pseudo_inverse(a: &RealMatrix) -> Result<RealMatrix, LinalgError> {
    pseudo_inverse_with(a, &LinalgConfig::default())
}

pub fn pseudo_inverse_with(a: &RealMatrix, cfg: &LinalgConfig) -> Result<RealMatrix, LinalgError> {
    let at = a.transpose();
    let gram = a.mul(&at);
    let inv = gram.invert_with(cfg)?;
    let cond = gram.norm_inf() * inv.norm_inf();
    if !(cond <= cfg.cond_tol) {
        return Err(LinalgError::IllConditioned(cond));
    }
    Ok(at.mul(&inv))
}
