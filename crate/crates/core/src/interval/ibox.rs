use super::Interval;
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

/// A box: one interval per variable. Empty iff some component is empty.
#[derive(Clone, PartialEq, Default)]
pub struct IntervalBox(Vec<Interval>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectError {
    #[error("cannot bisect an empty box")]
    Empty,
    #[error("dimension {0} is out of range")]
    OutOfRange(usize),
    #[error("dimension {0} is degenerate")]
    Degenerate(usize),
}

impl IntervalBox {
    pub fn new(components: Vec<Interval>) -> Self {
        IntervalBox(components)
    }

    pub fn from_bounds(bounds: &[(f64, f64)]) -> Self {
        IntervalBox(bounds.iter().map(|&(lo, hi)| Interval::new(lo, hi)).collect())
    }

    pub fn from_point(p: &[f64]) -> Self {
        IntervalBox(p.iter().map(|&x| Interval::point(x)).collect())
    }

    /// An empty box of dimension `n`.
    pub fn empty(n: usize) -> Self {
        IntervalBox(vec![Interval::EMPTY; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().any(Interval::is_empty)
    }

    /// Marks the whole box empty.
    pub fn set_empty(&mut self) {
        self.0.iter_mut().for_each(|c| *c = Interval::EMPTY);
    }

    pub fn components(&self) -> &[Interval] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    /// L∞ width: the largest component width.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.0.iter().map(Interval::width).fold(0.0, f64::max)
    }

    pub fn center(&self) -> Vec<f64> {
        self.0.iter().map(Interval::mid).collect()
    }

    /// Index of the widest component; ties go to the lowest index.
    pub fn widest_dim(&self) -> usize {
        let mut best = 0;
        let mut best_w = f64::NEG_INFINITY;
        for (i, c) in self.0.iter().enumerate() {
            let w = c.width();
            if w > best_w {
                best = i;
                best_w = w;
            }
        }
        best
    }

    pub fn intersect(&self, other: &IntervalBox) -> IntervalBox {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let out: Vec<_> = self.0.iter().zip(&other.0).map(|(a, b)| a.intersect(b)).collect();
        let mut out = IntervalBox(out);
        if out.is_empty() {
            out.set_empty();
        }
        out
    }

    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        IntervalBox(self.0.iter().zip(&other.0).map(|(a, b)| a.hull(b)).collect())
    }

    pub fn is_subset(&self, other: &IntervalBox) -> bool {
        self.is_empty() || self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset(b))
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        p.len() == self.dim() && self.0.iter().zip(p).all(|(c, &x)| c.contains(x))
    }

    pub fn inflate_ulps(&self, n: u32) -> IntervalBox {
        IntervalBox(self.0.iter().map(|c| c.inflate_ulps(n)).collect())
    }

    /// Splits component `dim` at its midpoint.
    pub fn bisect(&self, dim: usize) -> Result<(IntervalBox, IntervalBox), BisectError> {
        if self.is_empty() {
            return Err(BisectError::Empty);
        }
        let c = *self.0.get(dim).ok_or(BisectError::OutOfRange(dim))?;
        let m = c.mid();
        if c.is_degenerate() || m <= c.lo() || m >= c.hi() {
            return Err(BisectError::Degenerate(dim));
        }
        let mut left = self.clone();
        let mut right = self.clone();
        left.0[dim] = Interval::new(c.lo(), m);
        right.0[dim] = Interval::new(m, c.hi());
        Ok((left, right))
    }

    /// Lower corner, used for deterministic ordering.
    pub fn lower_corner(&self) -> Vec<f64> {
        self.0.iter().map(Interval::lo).collect()
    }

    /// All `2^n` corners of a bounded box.
    pub fn corners(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 0 { self.0[i].lo() } else { self.0[i].hi() })
                    .collect()
            })
            .collect()
    }
}

impl Index<usize> for IntervalBox {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntervalBox {
    fn index_mut(&mut self, i: usize) -> &mut Interval {
        &mut self.0[i]
    }
}

impl From<Vec<Interval>> for IntervalBox {
    fn from(v: Vec<Interval>) -> Self {
        IntervalBox(v)
    }
}

impl fmt::Debug for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "EMPTY^{}", self.dim());
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " × ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
