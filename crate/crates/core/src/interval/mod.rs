//! Closed real intervals with outward rounding.
//!
//! An [`Interval`] is either empty or `[lo, hi]` with `lo <= hi`, where the
//! endpoints may be infinite. Every forward operation returns a superset of
//! the exact real image of its operands.

mod backward;
mod ibox;
pub mod round;
mod trig;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use backward::{backward_binary, backward_unary};
pub use ibox::{BisectError, IntervalBox};

/// A closed interval of extended reals, or the empty set.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Binary primitives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Unary primitives. `Pow(k)` is the integer power `x^k`, `k >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sqr,
    Exp,
    Sin,
    Cos,
    Pow(u32),
}

impl Interval {
    pub const EMPTY: Interval = Interval {
        lo: f64::INFINITY,
        hi: f64::NEG_INFINITY,
    };

    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Builds `[lo, hi]`.
    ///
    /// Panics if either bound is NaN or `lo > hi`; use [`Interval::checked`]
    /// for untrusted input.
    pub fn new(lo: f64, hi: f64) -> Self {
        Self::checked(lo, hi).unwrap_or_else(|| panic!("invalid interval [{lo}, {hi}]"))
    }

    pub fn checked(lo: f64, hi: f64) -> Option<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY
        {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    /// `[lo, hi]`, or EMPTY when `lo > hi`.
    fn ordered(lo: f64, hi: f64) -> Self {
        if lo <= hi {
            Interval { lo, hi }
        } else {
            Self::EMPTY
        }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Width rounded up; 0 for EMPTY.
    pub fn width(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            round::sub_up(self.hi, self.lo)
        }
    }

    /// A finite point inside the interval (the midpoint when bounded).
    pub fn mid(&self) -> f64 {
        debug_assert!(!self.is_empty());
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.lo + 0.5 * self.hi;
                m.clamp(self.lo, self.hi)
            }
            (false, false) => 0.0,
            (true, false) => self.lo.max(0.0),
            (false, true) => self.hi.min(0.0),
        }
    }

    /// Largest absolute value of any member.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Self::ordered(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        if self.is_empty() {
            *other
        } else if other.is_empty() {
            *self
        } else {
            Interval {
                lo: self.lo.min(other.lo),
                hi: self.hi.max(other.hi),
            }
        }
    }

    /// Moves each finite endpoint `n` ulps outward.
    pub fn inflate_ulps(&self, n: u32) -> Interval {
        if self.is_empty() {
            return *self;
        }
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..n {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    pub fn sqr(self) -> Interval {
        if self.is_empty() {
            return self;
        }
        if self.lo >= 0.0 {
            Interval::new(round::mul_down(self.lo, self.lo), round::mul_up(self.hi, self.hi))
        } else if self.hi <= 0.0 {
            Interval::new(round::mul_down(self.hi, self.hi), round::mul_up(self.lo, self.lo))
        } else {
            let m = self.mag();
            Interval::new(0.0, round::mul_up(m, m))
        }
    }

    pub fn powi(self, k: u32) -> Interval {
        if self.is_empty() {
            return self;
        }
        match k {
            0 => Interval::point(1.0),
            1 => self,
            _ if k % 2 == 0 => {
                if self.lo >= 0.0 {
                    Interval::new(round::powi_down(self.lo, k), round::powi_up(self.hi, k))
                } else if self.hi <= 0.0 {
                    Interval::new(round::powi_down(-self.hi, k), round::powi_up(-self.lo, k))
                } else {
                    Interval::new(0.0, round::powi_up(self.mag(), k))
                }
            }
            _ => {
                let lo = if self.lo >= 0.0 {
                    round::powi_down(self.lo, k)
                } else {
                    -round::powi_up(-self.lo, k)
                };
                let hi = if self.hi >= 0.0 {
                    round::powi_up(self.hi, k)
                } else {
                    -round::powi_down(-self.hi, k)
                };
                Interval::new(lo, hi)
            }
        }
    }

    pub fn exp(self) -> Interval {
        if self.is_empty() {
            return self;
        }
        Interval::new(round::exp_down(self.lo), round::exp_up(self.hi))
    }

    /// Natural logarithm over the positive part; EMPTY if `hi < 0`.
    pub fn ln(self) -> Interval {
        let pos = self.intersect(&Interval::new(0.0, f64::INFINITY));
        if pos.is_empty() || pos.hi == 0.0 {
            return Interval::EMPTY;
        }
        Interval::new(round::ln_down(pos.lo), round::ln_up(pos.hi))
    }

    pub fn sqrt(self) -> Interval {
        let pos = self.intersect(&Interval::new(0.0, f64::INFINITY));
        if pos.is_empty() {
            return pos;
        }
        Interval::new(round::sqrt_down(pos.lo), round::sqrt_up(pos.hi))
    }

    pub fn sin(self) -> Interval {
        trig::sin(self)
    }

    pub fn cos(self) -> Interval {
        trig::cos(self)
    }

    /// Two-piece (Kahan) division.
    ///
    /// The union of the returned intervals contains `{a / b : b != 0}`. When
    /// `0` is not in `b` the second piece is EMPTY and the first equals `a / b`.
    pub fn div_extended(self, b: Interval) -> (Interval, Interval) {
        let a = self;
        if a.is_empty() || b.is_empty() {
            return (Interval::EMPTY, Interval::EMPTY);
        }
        if !b.contains_zero() {
            return (div_nonzero(a, b), Interval::EMPTY);
        }
        if b.lo == 0.0 && b.hi == 0.0 {
            return (Interval::EMPTY, Interval::EMPTY);
        }
        if a.contains_zero() {
            return (Interval::ENTIRE, Interval::EMPTY);
        }
        let inf = f64::INFINITY;
        if a.hi < 0.0 {
            if b.lo == 0.0 {
                (Interval::new(-inf, round::div_up(a.hi, b.hi)), Interval::EMPTY)
            } else if b.hi == 0.0 {
                (Interval::new(round::div_down(a.hi, b.lo), inf), Interval::EMPTY)
            } else {
                (
                    Interval::new(-inf, round::div_up(a.hi, b.hi)),
                    Interval::new(round::div_down(a.hi, b.lo), inf),
                )
            }
        } else if b.lo == 0.0 {
            (Interval::new(round::div_down(a.lo, b.hi), inf), Interval::EMPTY)
        } else if b.hi == 0.0 {
            (Interval::new(-inf, round::div_up(a.lo, b.lo)), Interval::EMPTY)
        } else {
            (
                Interval::new(-inf, round::div_up(a.lo, b.lo)),
                Interval::new(round::div_down(a.lo, b.hi), inf),
            )
        }
    }

    /// Hull of `(self / b) ∩ within`, taking each Kahan piece separately.
    pub fn div_within(self, b: Interval, within: &Interval) -> Interval {
        let (p, q) = self.div_extended(b);
        p.intersect(within).hull(&q.intersect(within))
    }

    pub fn apply_unary(self, op: UnaryOp) -> Interval {
        match op {
            UnaryOp::Neg => -self,
            UnaryOp::Sqr => self.sqr(),
            UnaryOp::Exp => self.exp(),
            UnaryOp::Sin => self.sin(),
            UnaryOp::Cos => self.cos(),
            UnaryOp::Pow(k) => self.powi(k),
        }
    }

    pub fn apply_binary(self, op: BinaryOp, rhs: Interval) -> Interval {
        match op {
            BinaryOp::Add => self + rhs,
            BinaryOp::Sub => self - rhs,
            BinaryOp::Mul => self * rhs,
            BinaryOp::Div => self / rhs,
        }
    }

    /// Multiplication by an exact scalar.
    pub fn scale(self, c: f64) -> Interval {
        self * Interval::point(c)
    }
}

fn div_nonzero(a: Interval, b: Interval) -> Interval {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in &[a.lo, a.hi] {
        for &y in &[b.lo, b.hi] {
            // NaN from inf/inf is ignored by min/max
            lo = lo.min(round::div_down(x, y));
            hi = hi.max(round::div_up(x, y));
        }
    }
    Interval::ordered(lo, hi)
}

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "EMPTY")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        if self.is_empty() {
            self
        } else {
            Interval {
                lo: -self.hi,
                hi: -self.lo,
            }
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::ordered(round::add_down(self.lo, rhs.lo), round::add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        Interval::ordered(round::sub_down(self.lo, rhs.hi), round::sub_up(self.hi, rhs.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        if self.is_empty() || rhs.is_empty() {
            return Interval::EMPTY;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &x in &[self.lo, self.hi] {
            for &y in &[rhs.lo, rhs.hi] {
                lo = lo.min(round::mul_down(x, y));
                hi = hi.max(round::mul_up(x, y));
            }
        }
        Interval::ordered(lo, hi)
    }
}

/// Single-interval division: the hull of [`Interval::div_extended`].
impl Div for Interval {
    type Output = Interval;
    fn div(self, rhs: Interval) -> Interval {
        let (p, q) = self.div_extended(rhs);
        p.hull(&q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn binary_examples() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 4.0), iv(4.0, 6.0));
        assert_eq!(iv(-1.0, 1.0) * iv(2.0, 3.0), iv(-3.0, 3.0));
        assert_eq!(iv(1.0, 1.0) / iv(2.0, 4.0), iv(0.25, 0.5));
    }

    #[test]
    fn extended_division_examples() {
        let inf = f64::INFINITY;
        assert_eq!(
            iv(1.0, 1.0).div_extended(iv(-1.0, 1.0)),
            (iv(-inf, -1.0), iv(1.0, inf))
        );
        assert_eq!(iv(0.0, 0.0).div_extended(iv(1.0, 2.0)), (iv(0.0, 0.0), Interval::EMPTY));
        assert_eq!(iv(1.0, 2.0).div_extended(iv(0.0, 1.0)), (iv(1.0, inf), Interval::EMPTY));
        assert_eq!(iv(1.0, 2.0).div_extended(Interval::ZERO), (Interval::EMPTY, Interval::EMPTY));
        assert_eq!(iv(-2.0, 3.0).div_extended(iv(-1.0, 1.0)).0, Interval::ENTIRE);
    }

    #[test]
    fn division_by_zero_straddling_interval_is_hull() {
        assert_eq!(iv(1.0, 1.0) / iv(-1.0, 1.0), Interval::ENTIRE);
        assert_eq!(iv(1.0, 2.0) / iv(0.0, 1.0), iv(1.0, f64::INFINITY));
    }

    #[test]
    fn unary_examples() {
        let s = iv(0.0, PI).sin();
        assert!(s.contains(0.0) && s.contains(1.0));
        assert!(s.lo() > -1e-15 && s.hi() == 1.0);
        assert_eq!(iv(-2.0, 1.0).sqr(), iv(0.0, 4.0));
        assert_eq!(Interval::ZERO.exp(), iv(1.0, 1.0));
        let e = Interval::point(1.0).exp();
        assert!(e.contains(std::f64::consts::E));
        assert!(e.width() < 1e-14);
    }

    #[test]
    fn powers() {
        assert_eq!(iv(-2.0, 1.0).powi(2), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, 1.0).powi(3), iv(-8.0, 1.0));
        assert_eq!(iv(-2.0, -1.0).powi(4), iv(1.0, 16.0));
        assert_eq!(iv(-5.0, 7.0).powi(0), iv(1.0, 1.0));
    }

    #[test]
    fn empty_absorbs() {
        let e = Interval::EMPTY;
        let a = iv(1.0, 2.0);
        assert!((e + a).is_empty());
        assert!((a - e).is_empty());
        assert!((e * a).is_empty());
        assert!((a / e).is_empty());
        assert!((-e).is_empty());
        for op in [UnaryOp::Sqr, UnaryOp::Exp, UnaryOp::Sin, UnaryOp::Cos, UnaryOp::Pow(3)] {
            assert!(e.apply_unary(op).is_empty(), "{op:?}");
        }
        assert_eq!(e.hull(&a), a);
    }

    #[test]
    fn checked_rejects_bad_bounds() {
        assert!(Interval::checked(2.0, 1.0).is_none());
        assert!(Interval::checked(f64::NAN, 1.0).is_none());
        assert!(Interval::checked(f64::NEG_INFINITY, f64::INFINITY).is_some());
    }
}
