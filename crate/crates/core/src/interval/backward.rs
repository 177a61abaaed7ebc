//! Backward (inverse) contraction rules for each primitive.
//!
//! Given an enclosure `y` of the result and enclosures of the operands, each
//! rule returns operand enclosures that are subsets of the inputs and still
//! contain every operand value consistent with `op(...) ∈ y`. EMPTY means no
//! consistent tuple exists.

use super::{round, trig, BinaryOp, Interval, UnaryOp};

/// Contracts `(a, b)` under `a op b ∈ y`.
pub fn backward_binary(op: BinaryOp, y: Interval, a: Interval, b: Interval) -> (Interval, Interval) {
    let y = y.intersect(&a.apply_binary(op, b));
    if y.is_empty() {
        return (Interval::EMPTY, Interval::EMPTY);
    }
    let (a, b) = match op {
        BinaryOp::Add => {
            let a = a.intersect(&(y - b));
            let b = b.intersect(&(y - a));
            (a, b)
        }
        BinaryOp::Sub => {
            let a = a.intersect(&(y + b));
            let b = b.intersect(&(a - y));
            (a, b)
        }
        BinaryOp::Mul => {
            let a = mul_inverse(y, b, a);
            let b = mul_inverse(y, a, b);
            (a, b)
        }
        BinaryOp::Div => {
            let a = a.intersect(&(y * b));
            // a = y·b
            let b = mul_inverse(a, y, b);
            (a, b)
        }
    };
    if a.is_empty() || b.is_empty() {
        (Interval::EMPTY, Interval::EMPTY)
    } else {
        (a, b)
    }
}

/// `{x ∈ within : x·other ∩ y ≠ ∅}` enclosure; unlike division, a zero
/// factor leaves `within` unconstrained when `0 ∈ y`.
fn mul_inverse(y: Interval, other: Interval, within: Interval) -> Interval {
    if other.contains_zero() && y.contains_zero() {
        within
    } else {
        y.div_within(other, &within)
    }
}

/// Contracts `a` under `op(a) ∈ y`.
pub fn backward_unary(op: UnaryOp, y: Interval, a: Interval) -> Interval {
    let y = y.intersect(&a.apply_unary(op));
    if y.is_empty() {
        return Interval::EMPTY;
    }
    match op {
        UnaryOp::Neg => a.intersect(&-y),
        UnaryOp::Sqr => even_root_backward(y, a, 2),
        UnaryOp::Pow(0) => a,
        UnaryOp::Pow(1) => a.intersect(&y),
        UnaryOp::Pow(k) if k % 2 == 0 => even_root_backward(y, a, k),
        UnaryOp::Pow(k) => {
            let lo = signed_root(y.lo(), k, false);
            let hi = signed_root(y.hi(), k, true);
            a.intersect(&Interval::new(lo, hi))
        }
        UnaryOp::Exp => a.intersect(&y.ln()),
        UnaryOp::Sin => trig::sin_backward(y, a),
        UnaryOp::Cos => trig::cos_backward(y, a),
    }
}

fn even_root_backward(y: Interval, a: Interval, k: u32) -> Interval {
    let y = y.intersect(&Interval::new(0.0, f64::INFINITY));
    if y.is_empty() {
        return Interval::EMPTY;
    }
    let (r_lo, r_hi) = if k == 2 {
        (round::sqrt_down(y.lo()), round::sqrt_up(y.hi()))
    } else {
        (round::root_down(y.lo(), k), round::root_up(y.hi(), k))
    };
    let pos = Interval::new(r_lo, r_hi);
    a.intersect(&pos).hull(&a.intersect(&-pos))
}

/// Outward-rounded real `k`-th root of `v` for odd `k`.
fn signed_root(v: f64, k: u32, upper: bool) -> f64 {
    if v >= 0.0 {
        if upper {
            round::root_up(v, k)
        } else {
            round::root_down(v, k)
        }
    } else if upper {
        -round::root_down(-v, k)
    } else {
        -round::root_up(-v, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn add_infeasible() {
        let (x1, _) = backward_binary(BinaryOp::Add, iv(0.0, 0.0), iv(0.0, 2.0), iv(1.0, 3.0));
        assert!(x1.is_empty());
    }

    #[test]
    fn sqr_positive_root() {
        assert_eq!(backward_unary(UnaryOp::Sqr, iv(4.0, 4.0), iv(0.0, 10.0)), iv(2.0, 2.0));
        assert_eq!(backward_unary(UnaryOp::Sqr, iv(4.0, 4.0), iv(-10.0, 10.0)), iv(-2.0, 2.0));
    }

    #[test]
    fn mul_exact_division() {
        let (_, x2) = backward_binary(BinaryOp::Mul, iv(2.0, 2.0), iv(1.0, 1.0), iv(-10.0, 10.0));
        assert_eq!(x2, iv(2.0, 2.0));
    }

    #[test]
    fn zero_numerator_keeps_denominator() {
        let (a, b) = backward_binary(BinaryOp::Div, iv(0.0, 0.0), iv(0.0, 0.0), iv(1.0, 2.0));
        assert_eq!(a, iv(0.0, 0.0));
        assert_eq!(b, iv(1.0, 2.0));
    }

    #[test]
    fn mul_with_zero_keeps_operand() {
        let (a, b) = backward_binary(BinaryOp::Mul, iv(0.0, 0.0), iv(-1.0, 1.0), iv(2.0, 3.0));
        assert_eq!(a, iv(0.0, 0.0));
        assert_eq!(b, iv(2.0, 3.0));
    }

    #[test]
    fn sub_and_div() {
        let (a, b) = backward_binary(BinaryOp::Sub, iv(0.0, 0.0), iv(0.0, 1.0), iv(0.5, 2.0));
        assert_eq!(a, iv(0.5, 1.0));
        assert_eq!(b, iv(0.5, 1.0));
        let (a, b) = backward_binary(BinaryOp::Div, iv(2.0, 2.0), iv(-4.0, 4.0), iv(1.0, 4.0));
        assert_eq!(a, iv(2.0, 4.0));
        assert_eq!(b, iv(1.0, 2.0));
    }

    #[test]
    fn odd_power_and_exp() {
        let a = backward_unary(UnaryOp::Pow(3), iv(-8.0, 27.0), iv(-10.0, 10.0));
        assert!(a.contains(-2.0) && a.contains(3.0));
        assert!(a.lo() > -2.0 - 1e-12 && a.hi() < 3.0 + 1e-12);
        let a = backward_unary(UnaryOp::Exp, iv(1.0, 1.0), iv(-5.0, 5.0));
        assert_eq!(a, iv(0.0, 0.0));
        assert!(backward_unary(UnaryOp::Exp, iv(-2.0, -1.0), iv(-5.0, 5.0)).is_empty());
    }
}
