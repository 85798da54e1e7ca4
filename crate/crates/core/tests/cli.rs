mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::fixture;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subinterval")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn simulate_reports_outcome() {
    let plus = fixture("m_plus.mm");
    let o = run(&["simulate", "--machine", path(&plus)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(q0, 0, 0)\n(q1, 1, 0)\n(qf, 2, 0)\nHALTED max-counter 2\n");
    let inf = fixture("m_inf.mm");
    let o = run(&["simulate", "--machine", path(&inf), "--max-steps", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("TIMEOUT max-counter 0\n"));
}

#[test]
fn witness_satisfies_compiled_formula() {
    let dir = tempfile::tempdir().unwrap();
    let (model, formula) = (dir.path().join("w.model"), dir.path().join("psi.f"));
    let plus = fixture("m_plus.mm");
    let o = run(&["witness", "--machine", path(&plus), "-o", path(&model)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "n 6 points 11\n");
    assert!(run(&["compile", "--machine", path(&plus), "-o", path(&formula)]).status.success());
    let manifest = fs::read_to_string(dir.path().join("psi.f.manifest")).unwrap();
    assert!(manifest.starts_with("L "));
    let o = run(&["check", "--model", path(&model), "--formula", path(&formula)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n".to_string()));

    let word = dir.path().join("w.model.word");
    let o = run(&["lang-check", "--machine", path(&plus), "--word", path(&word), "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "member: yes\nautomaton: accepts\ngeometry n=6: yes\n");
}

#[test]
fn probe_exit_code_follows_conjuncts() {
    let plus = fixture("m_plus.mm");
    let ok = run(&["probe", "--machine", path(&plus)]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).lines().count(), 21);
    let bad = run(&["probe", "--machine", path(&plus), "--variant", "verbatim"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("conjunct length.2c: FAIL at 1 5\n"));
}

#[test]
fn solve_and_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f");
    let cnf = dir.path().join("f.cnf");
    fs::write(&f, "<D> p & [D] ~q\n").unwrap();
    let o = run(&["solve", "--formula", path(&f), "--points", "2", "--dimacs", path(&cnf)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("points: 2\n"));
    assert!(fs::read_to_string(&cnf).unwrap().starts_with("p cnf "));

    fs::write(&f, "<D> p & [D] ~p\n").unwrap();
    let o = run(&["solve", "--formula", path(&f), "--points", "1", "--max-points", "4"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "UNSAT\n".to_string()));

    let pins = dir.path().join("pins");
    fs::write(&pins, "pin 0 0 p false\npin 1 1 p false\n").unwrap();
    fs::write(&f, "<D> p\n").unwrap();
    let o = run(&["solve", "--formula", path(&f), "--points", "2", "--pin", path(&pins)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f");
    fs::write(&f, "p &\n").unwrap();
    let o = run(&["solve", "--formula", path(&f), "--points", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    assert_eq!(run(&["simulate"]).status.code(), Some(2));
}
