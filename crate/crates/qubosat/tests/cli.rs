use std::path::Path;
use std::process::{Command, Output};

use qubosat::json::{translation_from_json, SolveReport};

fn qubosat(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qubosat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_ratio_and_explicit_m() {
    let dir = tempfile::tempdir().unwrap();
    let o = qubosat(&["gen", "-n", "12", "--ratio", "4.2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p cnf 12 51\n"));
    assert_eq!(stdout(&o).lines().count(), 52);

    let o = qubosat(&["--seed", "3", "gen", "-n", "5", "-m", "21", "-o", "f.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("f.cnf")).unwrap();
    assert!(text.starts_with("p cnf 5 21\n"));
    let again = qubosat(&["--seed", "3", "gen", "-n", "5", "-m", "21"], dir.path());
    assert_eq!(stdout(&again), text);
}

#[test]
fn gen_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qubosat(&["gen", "-m", "5"], dir.path()).status.code(), Some(2));
    let o = qubosat(&["gen", "-n", "5", "-m", "5", "--ratio", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qubosat(&["gen", "-n", "2", "-m", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(qubosat(&[], dir.path()).status.code(), Some(2));
}

#[test]
fn translate_reports_size() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "nm.cnf", "p cnf 3 2\n1 2 3 0\n1 -2 -3 0\n");
    write(dir.path(), "2nm.cnf", "p cnf 3 2\n1 2 -3 0\n1 -2 -3 0\n");
    let o = qubosat(&["translate", "nm.cnf", "--method", "nuessleinnm", "-o", "t.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5 logical qubits, 6 couplings\n");
    let t = translation_from_json(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(t.k(), 5);

    let o = qubosat(&["translate", "2nm.cnf", "--method", "nuesslein2nm"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("8 logical qubits"));
    assert_eq!(translation_from_json(&stdout(&o)).unwrap().k(), 8);
}

#[test]
fn translate_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f.cnf", "p cnf 3 1\n1 2 3 0\n");
    write(dir.path(), "bad.cnf", "p cnf 2 1\n1 2 0\n");
    write(dir.path(), "taut.cnf", "p cnf 3 1\n1 -1 2 0\n");
    let code = |args: &[&str]| qubosat(args, dir.path()).status.code();
    assert_eq!(code(&["translate", "f.cnf", "--method", "bogus"]), Some(2));
    assert_eq!(code(&["translate", "bad.cnf", "--method", "choi"]), Some(3));
    assert_eq!(code(&["translate", "missing.cnf", "--method", "choi"]), Some(3));
    assert_eq!(code(&["translate", "taut.cnf", "--method", "choi"]), Some(3));
    // permissive parsing accepts the clause, but translations stay strict
    assert_eq!(code(&["--permissive", "translate", "taut.cnf", "--method", "choi"]), Some(3));
    assert_eq!(code(&["translate", "f.cnf", "--method", "choi", "--choi-y", "2"]), Some(2));
}

#[test]
fn solve_formula_exhaustively() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "nm.cnf", "p cnf 3 2\n1 2 3 0\n1 -2 -3 0\n");
    write(dir.path(), "2nm.cnf", "p cnf 3 2\n1 2 -3 0\n1 -2 -3 0\n");
    let o = qubosat(
        &["solve", "nm.cnf", "--method", "nuessleinnm", "--solver", "exhaustive"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let r = SolveReport::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.energy, r.satisfied, r.m), (-1, Some(2), Some(2)));

    let o = qubosat(
        &["solve", "2nm.cnf", "--method", "nuesslein2nm", "--solver", "exhaustive"],
        dir.path(),
    );
    let r = SolveReport::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.energy, r.satisfied), (-2, Some(2)));
    assert_eq!(r.evaluations, 256);
}

#[test]
fn solve_json_inputs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "q.json", r#"{"k":2,"entries":[[0,0,-2],[0,1,3],[1,1,-1]]}"#);
    let o = qubosat(&["solve", "q.json", "--solver", "exhaustive"], dir.path());
    let r = SolveReport::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.best_bits.as_str(), r.energy), ("10", -2));
    assert_eq!(r.satisfied, None);

    write(dir.path(), "sa.json", r#"{"sweeps": 50, "restarts": 2}"#);
    let args = ["--seed", "5", "solve", "q.json", "--sa-config", "sa.json"];
    let a = qubosat(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    let r = SolveReport::from_json(&stdout(&a)).unwrap();
    assert_eq!((r.energy, r.evaluations, r.restarts), (-2, 200, Some(2)));
    assert_eq!(stdout(&a), stdout(&qubosat(&args, dir.path())));

    let csv = qubosat(&["--format", "csv", "solve", "q.json", "--solver", "exhaustive"], dir.path());
    assert_eq!(stdout(&csv), "best_bits,energy,evaluations,satisfied,m\n10,-2,4,,\n");
}

#[test]
fn solve_refusals() {
    let dir = tempfile::tempdir().unwrap();
    let o = qubosat(&["gen", "-n", "10", "-m", "20", "-o", "big.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let o = qubosat(
        &["solve", "big.cnf", "--method", "chancellor", "--solver", "exhaustive"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap 24"), "{}", stderr(&o));
    let o = qubosat(&["solve", "big.cnf"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = qubosat(&["solve", "big.cnf", "--method", "chancellor", "--sweeps", "0"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_warns_on_empty() {
    let dir = tempfile::tempdir().unwrap();
    let o = qubosat(&["verify", "--count", "8"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 formulas, 32 checks, 0 failures"));
    let o = qubosat(&["verify", "--count", "0"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    let o = qubosat(&["verify", "--n-range", "3-6"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = qubosat(&["verify", "--m-range", "1:20", "--methods", "choi"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scaling_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--seed", "9", "scaling", "--n", "20:60:20", "--replicates", "3", "-o", "s.csv"];
    let o = qubosat(&args, dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# n m"));
    let first = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(first.lines().count(), 1 + 2 * 3 * 3);
    assert!(first.starts_with("n,m,method,replicate,seed,logical_qubits,couplings,nonzeros\n"));
    qubosat(&args, dir.path());
    assert_eq!(std::fs::read_to_string(dir.path().join("s.csv")).unwrap(), first);
    let o = qubosat(&["scaling", "--n", "20::"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_table_layout() {
    let dir = tempfile::tempdir().unwrap();
    let o = qubosat(
        &["compare", "--sizes", "5x8", "--replicates", "2", "--solver", "exhaustive", "-o", "c.csv", "--summary", "t.txt"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[6], cells[7], "satisfied must equal the optimum: {line}");
    }
    let table = std::fs::read_to_string(dir.path().join("t.txt")).unwrap();
    assert_eq!(stdout(&o), table);
    assert!(table.starts_with(&format!("{:<16} {:>14}", "", "(V=5, C=8)")));
    let o = qubosat(&["compare", "--sizes", "5by21"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
