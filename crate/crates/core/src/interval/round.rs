//! Directed-rounding scalar kernels.
//!
//! Every `*_down` result is `<=` the exact real result and every `*_up`
//! result is `>=` it. Basic arithmetic uses error-free transformations
//! (TwoSum, FMA residuals) so that exact results are returned unchanged and
//! inexact ones move by exactly one ulp. Library transcendentals are not
//! correctly rounded, so those are widened by a fixed number of ulps.

/// Ulps of widening applied to results of libm transcendentals.
const LIBM_ULPS: u32 = 2;

/// Below this magnitude FMA residuals can underflow; widen blindly instead.
const TINY: f64 = 1e-290;

#[inline]
pub fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
pub fn up(x: f64) -> f64 {
    x.next_up()
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

/// Error term of `a + b` such that `a + b == s + err` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bp = s - a;
    let ap = s - bp;
    (s, (a - ap) + (b - bp))
}

pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, err) = two_sum(a, b);
    if s.is_finite() {
        if err < 0.0 {
            down(s)
        } else {
            s
        }
    } else if s == f64::INFINITY && a.is_finite() && b.is_finite() {
        f64::MAX
    } else {
        s
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, err) = two_sum(a, b);
    if s.is_finite() {
        if err > 0.0 {
            up(s)
        } else {
            s
        }
    } else if s == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
        f64::MIN
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Product with the interval convention `0 * inf = 0`.
fn mul_with(a: f64, b: f64, round_up: bool) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        if a.is_finite() && b.is_finite() {
            // overflow of a finite product
            return match (p > 0.0, round_up) {
                (true, false) => f64::MAX,
                (false, true) => f64::MIN,
                _ => p,
            };
        }
        return p;
    }
    if p.abs() < TINY {
        return if round_up { up(p) } else { down(p) };
    }
    let err = a.mul_add(b, -p);
    match (round_up, err) {
        (false, e) if e < 0.0 => down(p),
        (true, e) if e > 0.0 => up(p),
        _ => p,
    }
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    mul_with(a, b, false)
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    mul_with(a, b, true)
}

/// Quotient for `b != 0`. `inf / inf` yields NaN, which callers discard.
fn div_with(a: f64, b: f64, round_up: bool) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        if a.is_finite() && b.is_finite() {
            return match (q > 0.0, round_up) {
                (true, false) => f64::MAX,
                (false, true) => f64::MIN,
                _ => q,
            };
        }
        return q;
    }
    if !a.is_finite() || !b.is_finite() {
        // finite / inf is an exact zero
        return q;
    }
    if q == 0.0 {
        return if a == 0.0 {
            0.0
        } else if round_up {
            if (a > 0.0) == (b > 0.0) {
                up(0.0)
            } else {
                0.0
            }
        } else if (a > 0.0) == (b > 0.0) {
            0.0
        } else {
            down(0.0)
        };
    }
    if q.abs() < TINY || b.abs() < TINY {
        return if round_up { up(q) } else { down(q) };
    }
    // a - q*b, exact; a/b = q + r/b
    let r = (-q).mul_add(b, a);
    let sign = if b > 0.0 { r } else { -r };
    match (round_up, sign) {
        (false, s) if s < 0.0 => down(q),
        (true, s) if s > 0.0 => up(q),
        _ => q,
    }
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    div_with(a, b, false)
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    div_with(a, b, true)
}

pub fn sqrt_down(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if !s.is_finite() || s < TINY {
        return down(s).max(0.0);
    }
    let r = (-s).mul_add(s, x);
    if r < 0.0 {
        down(s)
    } else {
        s
    }
}

pub fn sqrt_up(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if !s.is_finite() {
        return s;
    }
    if s < TINY {
        return up(s);
    }
    let r = (-s).mul_add(s, x);
    if r > 0.0 {
        up(s)
    } else {
        s
    }
}

/// `x^k` for `x >= 0`, rounded down.
pub fn powi_down(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut acc = 1.0;
    for _ in 0..k {
        acc = mul_down(acc, x);
    }
    acc
}

/// `x^k` for `x >= 0`, rounded up.
pub fn powi_up(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut acc = 1.0;
    for _ in 0..k {
        acc = mul_up(acc, x);
    }
    acc
}

/// Lower bound of the real `k`-th root of `v >= 0`.
pub fn root_down(v: f64, k: u32) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    if v == f64::INFINITY {
        return f64::INFINITY;
    }
    if k == 1 {
        return v;
    }
    let mut r = v.powf(1.0 / k as f64);
    for _ in 0..64 {
        if powi_up(r, k) <= v {
            return r;
        }
        r = down(r);
    }
    0.0
}

/// Upper bound of the real `k`-th root of `v >= 0`.
pub fn root_up(v: f64, k: u32) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    if v == f64::INFINITY || k == 1 {
        return v;
    }
    let mut r = v.powf(1.0 / k as f64);
    for _ in 0..64 {
        if powi_down(r, k) >= v {
            return r;
        }
        r = up(r);
    }
    f64::INFINITY
}

pub fn exp_down(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    down_n(x.exp(), LIBM_ULPS).max(0.0)
}

pub fn exp_up(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    let e = x.exp();
    if e == f64::INFINITY {
        return e;
    }
    up_n(e, LIBM_ULPS)
}

/// Natural log rounded down; `ln(0) = -inf`.
pub fn ln_down(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if x == 1.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    down_n(x.ln(), LIBM_ULPS)
}

pub fn ln_up(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if x == 1.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    up_n(x.ln(), LIBM_ULPS)
}

/// Widen a libm result `v` of a function bounded in `[-1, 1]`.
pub fn libm_bounded_down(v: f64) -> f64 {
    down_n(v, LIBM_ULPS).max(-1.0)
}

pub fn libm_bounded_up(v: f64) -> f64 {
    up_n(v, LIBM_ULPS).min(1.0)
}

pub fn libm_down(v: f64) -> f64 {
    down_n(v, LIBM_ULPS)
}

pub fn libm_up(v: f64) -> f64 {
    up_n(v, LIBM_ULPS)
}
