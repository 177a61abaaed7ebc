//! Range enclosures for `sin` and `cos`, forward and backward.
//!
//! Critical points `phase + 2kπ` are located by explicit period counting.
//! Every comparison against a critical point is padded by a margin that
//! dominates the floating error of computing `phase + 2kπ`, so the result can
//! only err toward a wider enclosure.

use super::{round, Interval};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Beyond this magnitude the period count itself becomes unreliable.
const MAX_ARG: f64 = 1e15;

fn margin(a: f64, b: f64) -> f64 {
    4e-15 * (1.0 + a.abs().max(b.abs()))
}

/// True if some `phase + 2kπ` lies in `[a, b]` (padded).
fn hits_critical(a: f64, b: f64, phase: f64) -> bool {
    let d = margin(a, b);
    let k0 = ((a - d - phase) / TAU).ceil();
    (-1..=1).any(|off| {
        let c = phase + (k0 + off as f64) * TAU;
        c >= a - d && c <= b + d
    })
}

fn unit_range(x: Interval) -> Option<Interval> {
    if x.is_empty() {
        return Some(Interval::EMPTY);
    }
    if !x.is_bounded() || x.mag() > MAX_ARG || x.hi() - x.lo() >= TAU {
        return Some(Interval::new(-1.0, 1.0));
    }
    None
}

fn range(x: Interval, f: fn(f64) -> f64, max_phase: f64, min_phase: f64) -> Interval {
    if let Some(r) = unit_range(x) {
        return r;
    }
    let (fa, fb) = (f(x.lo()), f(x.hi()));
    let mut lo = round::libm_bounded_down(fa.min(fb));
    let mut hi = round::libm_bounded_up(fa.max(fb));
    if hits_critical(x.lo(), x.hi(), max_phase) {
        hi = 1.0;
    }
    if hits_critical(x.lo(), x.hi(), min_phase) {
        lo = -1.0;
    }
    Interval::new(lo, hi)
}

pub fn sin(x: Interval) -> Interval {
    range(x, f64::sin, FRAC_PI_2, -FRAC_PI_2)
}

pub fn cos(x: Interval) -> Interval {
    range(x, f64::cos, 0.0, PI)
}

/// Pad for a preimage bound near `j·π`.
fn branch_pad(j: f64) -> f64 {
    // |j|·|π - PI| plus rounding of the multiply and add
    (j.abs() + 4.0) * 4.0 * f64::EPSILON * (1.0 + j.abs() * PI)
}

fn preimage_setup(y: Interval, x: Interval) -> Option<Interval> {
    let y = y.intersect(&Interval::new(-1.0, 1.0));
    if y.is_empty() || x.is_empty() {
        return Some(Interval::EMPTY);
    }
    if !x.is_bounded() || x.mag() > MAX_ARG || x.width() > 4.0 * TAU {
        return Some(x);
    }
    None
}

/// Contracts `x` given `sin(x) ∈ y`.
pub fn sin_backward(y: Interval, x: Interval) -> Interval {
    if let Some(r) = preimage_setup(y, x) {
        return r;
    }
    let y = y.intersect(&Interval::new(-1.0, 1.0));
    let as_lo = round::libm_down(y.lo().asin());
    let as_hi = round::libm_up(y.hi().asin());
    // branch j covers [jπ - π/2, jπ + π/2]
    let j0 = ((x.lo() + FRAC_PI_2) / PI).floor() - 1.0;
    let j1 = ((x.hi() + FRAC_PI_2) / PI).floor() + 1.0;
    let mut out = Interval::EMPTY;
    let mut j = j0;
    while j <= j1 {
        let c = j * PI;
        let pad = branch_pad(j);
        let (u, v) = if (j as i64).rem_euclid(2) == 0 {
            (c + as_lo, c + as_hi)
        } else {
            (c - as_hi, c - as_lo)
        };
        let piece = Interval::new(u - pad, v + pad);
        out = out.hull(&piece.intersect(&x));
        j += 1.0;
    }
    out
}

/// Contracts `x` given `cos(x) ∈ y`.
pub fn cos_backward(y: Interval, x: Interval) -> Interval {
    if let Some(r) = preimage_setup(y, x) {
        return r;
    }
    let y = y.intersect(&Interval::new(-1.0, 1.0));
    let ac_lo = round::libm_down(y.hi().acos()).max(0.0);
    let ac_hi = round::libm_up(y.lo().acos());
    // branch j covers [jπ, (j+1)π]
    let j0 = (x.lo() / PI).floor() - 1.0;
    let j1 = (x.hi() / PI).floor() + 1.0;
    let mut out = Interval::EMPTY;
    let mut j = j0;
    while j <= j1 {
        let pad = branch_pad(j + 1.0);
        let (u, v) = if (j as i64).rem_euclid(2) == 0 {
            let c = j * PI;
            (c + ac_lo, c + ac_hi)
        } else {
            let c = (j + 1.0) * PI;
            (c - ac_hi, c - ac_lo)
        };
        let piece = Interval::new(u - pad, v + pad);
        out = out.hull(&piece.intersect(&x));
        j += 1.0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_half_period() {
        let r = sin(Interval::new(0.0, PI));
        assert_eq!(r.hi(), 1.0);
        assert!(r.lo() <= 0.0 && r.lo() > -1e-15);
    }

    #[test]
    fn wide_arguments_give_unit_interval() {
        assert_eq!(sin(Interval::new(-10.0, 10.0)), Interval::new(-1.0, 1.0));
        assert_eq!(cos(Interval::new(0.0, f64::INFINITY)), Interval::new(-1.0, 1.0));
    }

    #[test]
    fn cos_around_pi_hits_minimum() {
        let r = cos(Interval::new(3.0, 3.3));
        assert_eq!(r.lo(), -1.0);
        assert!(r.hi() < -0.98);
    }

    #[test]
    fn multi_period_argument() {
        // contains 5π/2 + 2π but not a minimum
        let r = sin(Interval::new(13.0, 15.0));
        assert_eq!(r.hi(), 1.0);
        assert!(r.lo() > 0.4);
    }

    #[test]
    fn sin_backward_picks_all_branches() {
        let x = sin_backward(Interval::point(0.0), Interval::new(-1.0, 7.0));
        // zeros at 0, π, 2π
        assert!(x.contains(0.0) && x.contains(2.0 * PI));
        assert!(x.lo() > -1e-12 && x.hi() < 2.0 * PI + 1e-12);
    }

    #[test]
    fn cos_backward_single_branch() {
        let x = cos_backward(Interval::new(0.5, 0.5), Interval::new(0.0, 2.0));
        assert!(x.contains(PI / 3.0));
        assert!(x.width() < 1e-12);
    }

    #[test]
    fn backward_infeasible() {
        assert!(sin_backward(Interval::new(2.0, 3.0), Interval::new(0.0, 1.0)).is_empty());
        assert!(cos_backward(Interval::new(0.9, 1.0), Interval::new(2.0, 3.0)).is_empty());
    }
}
