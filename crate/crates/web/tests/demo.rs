use ivpave_web::{run_compare, run_pave, run_series};

#[test]
fn paving_the_builtin_returns_an_svg() {
    let r = run_pave("", 0.125, "centered").unwrap();
    assert!(r.boundary > 0 && !r.truncated);
    assert!(r.svg.starts_with("<svg") && r.svg.contains("<rect"));
}

#[test]
fn problem_text_and_errors() {
    let circle = "var x in [-2, 2]\nvar y in [-2, 2]\nconstraint x^2 + y^2 - 1 = 0\n";
    let r = run_pave(circle, 0.0625, "hc4").unwrap();
    assert!(r.boundary > 0);
    assert!(run_pave(circle, 0.1, "newton").unwrap_err().contains("unknown contractor"));
    assert!(run_pave("var x in [0, 1]\nconstraint x + q = 0\n", 0.1, "hc4").is_err());
    assert!(run_pave(circle, -1.0, "hc4").is_err());
}

#[test]
fn comparison_lists_every_contractor() {
    let text = run_compare("", &[0.4, 0.6, 2.6, 2.8, 0.4, 0.9]).unwrap();
    for name in ["input", "hc4 ", "hc4-fixpoint", "centered ", "centered-single"] {
        assert!(text.contains(name), "{name} missing in\n{text}");
    }
    assert!(run_compare("", &[0.0, 1.0]).is_err());
    assert!(run_compare("", &[1.0, 0.0, 2.0, 3.0, 0.0, 1.0]).is_err());
}

#[test]
fn series_shrinks() {
    let r = run_series("", 9).unwrap();
    assert_eq!(r.len(), 7);
    assert!(r[6] < r[0] && r[6] < 0.05, "{r:?}");
}
