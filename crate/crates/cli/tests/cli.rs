use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ivpave"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ivpave-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn builtin_run_writes_json_and_svg() {
    let (json, svg) = (tmp("d.json"), tmp("d.svg"));
    let o = bin()
        .args(["--builtin", "delay2", "--eps", "2^-3", "--contractor", "centered", "--out"])
        .arg(&json)
        .arg("--svg")
        .arg(&svg)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("boundary="));
    let doc = ivpave::io::paving_from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc.names, ["p1", "p2", "w"]);
    assert_eq!(doc.contractor, "centered");
    assert_eq!(doc.boundary.len(), doc.counts.boundary);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("frame [0, 2.5] x [2, 4]"));
}

#[test]
fn problem_file_and_projection() {
    let prob = tmp("sphere.txt");
    std::fs::write(
        &prob,
        "# unit sphere cut by a plane\nvar x in [-2, 2]\nvar y in [-2, 2]\nvar z in [-2, 2]\nconstraint x^2 + y^2 + z^2 - 1 = 0\nconstraint x + y + z = 0\n",
    )
    .unwrap();
    let svg = tmp("sphere.svg");
    let o = bin()
        .arg("--problem")
        .arg(&prob)
        .args(["--eps", "0.125", "--contractor", "hc4", "--project", "z", "x", "--out", "-", "--svg"])
        .arg(&svg)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let doc = ivpave::io::paving_from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(doc.counts.boundary > 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains(">z</text>"));
}

#[test]
fn truncation_exits_with_one() {
    let o = run(&["--builtin", "delay2", "--eps", "2^-8", "--contractor", "hc4", "--max-boxes", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("TRUNCATED"));
}

#[test]
fn input_errors_exit_with_two() {
    let o = run(&["--builtin", "delay3", "--eps", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown built-in problem"));

    let prob = tmp("bad.txt");
    std::fs::write(&prob, "var x in [0, 1]\nconstraint x + q = 0\n").unwrap();
    let o = bin().arg("--problem").arg(&prob).args(["--eps", "0.1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 16"), "{}", stderr(&o));

    let o = run(&["--builtin", "delay2", "--eps", "2^-8", "--svg", "/tmp/x.svg", "--project", "p1", "p1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_arguments_are_rejected_by_the_parser() {
    for args in [
        &["--builtin", "delay2", "--eps", "-1"][..],
        &["--builtin", "delay2", "--eps", "0.1", "--contractor", "newton"],
        &["--eps", "0.1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}
