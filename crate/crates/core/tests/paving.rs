mod common;

use common::func;
use ivpave::contractor::{centered_contract, relative_gain, repeat_until_fixpoint, CenteredContractor, ContractorKind, DEFAULT_FIX_TOL};
use ivpave::paver::{box_proximity, curve_oracle, hull_of_points, pave, PaverConfig};
use ivpave::{builtin_delay2, Contractor, IntervalBox};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn interiors_overlap(a: &IntervalBox, b: &IntervalBox) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x.lo() < y.hi() && y.lo() < x.hi())
}

#[test]
fn delay2_paving_invariants() {
    let spec = builtin_delay2();
    let f = spec.function();
    let eps = 2f64.powi(-5);
    let p = pave(&f, &spec.domain, &PaverConfig::new(eps, ContractorKind::Centered)).unwrap();
    assert!(!p.truncated);
    assert_eq!(p.counts.boundary, p.boundary.len());
    for (k, b) in p.boundary.iter().enumerate() {
        assert!(b.width() <= eps);
        assert!(b.is_subset(&spec.domain));
        // sorted by lower corner
        if k > 0 {
            assert!(p.boundary[k - 1].lower_corner() <= b.lower_corner());
        }
    }
    for (i, a) in p.boundary.iter().enumerate() {
        for b in &p.boundary[i + 1..] {
            assert!(!interiors_overlap(a, b), "{a} and {b}");
        }
    }
    // completeness against an independent sampling of the curve
    for z in curve_oracle(&f, &spec.domain, 150) {
        assert!(p.boundary.iter().any(|b| b.inflate_ulps(4).contains_point(&z)), "{z:?} not covered");
    }
}

#[test]
fn threads_give_the_same_boxes() {
    let spec = builtin_delay2();
    let f = spec.function();
    let mut cfg = PaverConfig::new(2f64.powi(-5), ContractorKind::Hc4);
    let seq = pave(&f, &spec.domain, &cfg).unwrap();
    cfg.threads = 4;
    let par = pave(&f, &spec.domain, &cfg).unwrap();
    assert_eq!(seq.boundary, par.boundary);
    assert_eq!(seq.counts, par.counts);
}

#[test]
fn centered_beats_hc4_on_the_circle() {
    let f = func(&["x", "y"], &["x^2 + y^2 - 1"]);
    let x0 = IntervalBox::from_bounds(&[(-2.0, 2.0), (-2.0, 2.0)]);
    let eps = 2f64.powi(-8);
    let c = pave(&f, &x0, &PaverConfig::new(eps, ContractorKind::Centered)).unwrap();
    let h = pave(&f, &x0, &PaverConfig::new(eps, ContractorKind::Hc4)).unwrap();
    assert!(c.counts.boundary < h.counts.boundary, "{} vs {}", c.counts.boundary, h.counts.boundary);
    // each box covers at most eps of the circle's L∞ length 4·√2
    assert!(c.counts.boundary as f64 >= 4.0 * 2f64.sqrt() / eps);
}

#[test]
fn linearized_delay2_box_is_nearly_minimal() {
    let spec = builtin_delay2();
    let f = spec.function();
    let pts = curve_oracle(&f, &spec.domain, 40);
    let z = pts.iter().find(|p| (p[0] - 0.5).abs() < 0.05 && p[2] < 1.0).expect("point on the low-frequency branch");
    let w = 2f64.powi(-8);
    let x = IntervalBox::from_bounds(&z.iter().map(|&c| (c - w / 2.0, c + w / 2.0)).collect::<Vec<_>>());
    let got = centered_contract(&f, &x);
    let hull = hull_of_points(&curve_oracle(&f, &x, 300), 3);
    assert!(hull.is_subset(&got.inflate_ulps(4)));
    assert!(box_proximity(&got, &hull) <= 0.05 * w, "{got} vs {hull}");
}

#[test]
fn contractors_only_shrink() {
    let spec = builtin_delay2();
    let f = spec.function();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cs: Vec<_> = ContractorKind::ALL.iter().map(|k| k.build(&f)).collect();
    for _ in 0..300 {
        let b: Vec<(f64, f64)> = spec
            .domain
            .iter()
            .map(|d| {
                let a = rng.gen_range(d.lo()..d.hi());
                (a, (a + rng.gen_range(0.0..1.0)).min(d.hi()))
            })
            .collect();
        let x = IntervalBox::from_bounds(&b);
        for c in &cs {
            let y = c.contract(&x);
            assert!(y.is_empty() || y.is_subset(&x), "{} on {x}", c.name());
        }
    }
}

#[test]
fn centered_is_idempotent_near_its_fixpoint() {
    let spec = builtin_delay2();
    let f = spec.function();
    let fix = repeat_until_fixpoint(CenteredContractor::new(f.clone()));
    let single = CenteredContractor::new(f.clone());
    let pts = curve_oracle(&f, &spec.domain, 40);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 100 {
        let z = &pts[rng.gen_range(0..pts.len())];
        let w = 2f64.powi(-rng.gen_range(4..10));
        let x = IntervalBox::from_bounds(&z.iter().map(|&c| (c - w * rng.gen_range(0.1..0.9), c + w)).collect::<Vec<_>>());
        let y = fix.contract(&x);
        if y.is_empty() {
            continue;
        }
        let again = single.contract(&y);
        assert!(relative_gain(&y, &again) <= DEFAULT_FIX_TOL, "{y} -> {again}");
        checked += 1;
    }
}

#[test]
fn truncation_is_reported() {
    let spec = builtin_delay2();
    let mut cfg = PaverConfig::new(2f64.powi(-8), ContractorKind::Hc4);
    cfg.max_boxes = 100;
    let p = pave(&spec.function(), &spec.domain, &cfg).unwrap();
    assert!(p.truncated);
    assert!(p.boundary.len() <= 101);
    assert!(!p.pending.is_empty());
}
