//! Outward rounding checked against exact rational arithmetic.

use ivpave::interval::round;
use ivpave::Interval;
use num::{BigRational, Zero};
use proptest::prelude::*;

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        (-300i32..300, -1.0f64..1.0).prop_map(|(e, m)| m * 2f64.powi(e)),
        (-64i64..64).prop_map(|k| k as f64 / 16.0),
    ]
}

fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(a.to_bits() + 1) - a
    }
}

/// `lo <= exact <= hi`, and `[lo, hi]` is at most two ulps of the nearest result.
fn brackets(lo: f64, hi: f64, exact: &BigRational, nearest: f64) -> bool {
    let ok = q(lo) <= *exact && *exact <= q(hi);
    let tight = hi - lo <= 2.0 * ulp(nearest);
    let sandwich = lo <= nearest && nearest <= hi;
    ok && tight && sandwich
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn add_sub(a in finite(), b in finite()) {
        prop_assert!(brackets(round::add_down(a, b), round::add_up(a, b), &(q(a) + q(b)), a + b));
        prop_assert!(brackets(round::sub_down(a, b), round::sub_up(a, b), &(q(a) - q(b)), a - b));
    }

    #[test]
    fn mul(a in finite(), b in finite()) {
        let nearest = a * b;
        prop_assume!(nearest.is_finite() && (nearest == 0.0 || nearest.abs() > 1e-280));
        prop_assert!(brackets(round::mul_down(a, b), round::mul_up(a, b), &(q(a) * q(b)), nearest));
    }

    #[test]
    fn div(a in finite(), b in finite()) {
        prop_assume!(b != 0.0);
        let nearest = a / b;
        prop_assume!(nearest.is_finite() && (nearest == 0.0 || nearest.abs() > 1e-280));
        prop_assert!(brackets(round::div_down(a, b), round::div_up(a, b), &(q(a) / q(b)), nearest));
    }

    #[test]
    fn sqrt(x in 0.0f64..1e12) {
        let (lo, hi) = (round::sqrt_down(x), round::sqrt_up(x));
        prop_assert!(q(lo) * q(lo) <= q(x) && q(x) <= q(hi) * q(hi));
        prop_assert!(hi - lo <= 2.0 * ulp(x.sqrt()));
    }

    #[test]
    fn exact_results_stay_exact(k in -1000i64..1000, j in -1000i64..1000) {
        let (a, b) = (k as f64 / 64.0, j as f64 / 64.0);
        prop_assert_eq!(round::add_down(a, b), a + b);
        prop_assert_eq!(round::add_up(a, b), a + b);
        prop_assert_eq!(round::mul_down(a, b), a * b);
        prop_assert_eq!(round::mul_up(a, b), a * b);
    }

    #[test]
    fn interval_arithmetic_contains_exact_results(
        a in finite(), wa in 0.0f64..10.0, ta in 0.0f64..=1.0,
        b in finite(), wb in 0.0f64..10.0, tb in 0.0f64..=1.0,
    ) {
        let x = Interval::new(a, a + wa);
        let y = Interval::new(b, b + wb);
        let (px, py) = ((a + ta * wa).min(x.hi()), (b + tb * wb).min(y.hi()));
        let inside = |i: Interval, v: BigRational| q(i.lo()) <= v && v <= q(i.hi());
        prop_assert!(inside(x + y, q(px) + q(py)));
        prop_assert!(inside(x - y, q(px) - q(py)));
        let prod = x * y;
        prop_assume!(prod.is_bounded());
        prop_assert!(inside(prod, q(px) * q(py)));
        if !q(py).is_zero() {
            let quot = x / y;
            if quot.is_bounded() {
                prop_assert!(inside(quot, q(px) / q(py)));
            } else {
                prop_assert!(quot.contains(px / py));
            }
        }
    }

    #[test]
    fn transcendental_ranges_contain_samples(a in -50.0f64..50.0, w in 0.0f64..8.0, t in 0.0f64..=1.0) {
        let x = Interval::new(a, a + w);
        let p = (a + t * w).min(x.hi());
        prop_assert!(x.sin().contains(p.sin()));
        prop_assert!(x.cos().contains(p.cos()));
        if a + w < 700.0 {
            prop_assert!(x.exp().contains(p.exp()));
        }
        prop_assert!(x.sqr().contains(p * p));
    }
}

#[test]
fn sin_extrema_are_reached_exactly() {
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert_eq!(Interval::new(0.0, 2.0).sin().hi(), 1.0);
    assert_eq!(Interval::new(half_pi + 3.0, half_pi + 3.3).sin().lo(), -1.0);
    let narrow = Interval::new(0.1, 0.2).sin();
    assert!(narrow.hi() < 0.2 && narrow.lo() > 0.09);
}
