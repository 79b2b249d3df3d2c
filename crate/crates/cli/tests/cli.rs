use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn pdfa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdfa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compare_parity_words() {
    let parity = fixture("parity.pdfa.json");
    let o = pdfa(&["compare", "--pdfa", path(&parity), "b.b", "a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "first-strict\n");
}

#[test]
fn equiv_with_itself() {
    let parity = fixture("parity.pdfa.json");
    let o = pdfa(&["equiv", "--pdfa", path(&parity), "--pdfa2", path(&parity)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("equivalent\n"));
}

#[test]
fn learn_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("learned.json");
    let dot = dir.path().join("learned.dot");
    let sample = fixture("parity.sample");
    let o = pdfa(&[
        "learn",
        "--sample",
        path(&sample),
        "--trace",
        "--out",
        path(&out),
        "--dot",
        path(&dot),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = stdout(&o);
    assert!(trace.starts_with("i=1 u_i=a tried=[eps] accepted=none\n"));
    let learned = fs::read_to_string(&out).unwrap();
    let a = pdfa_core::format::parse_pdfa(&learned).unwrap();
    assert_eq!(a.num_states(), 4);
    assert!(fs::read_to_string(&dot).unwrap().contains("digraph order"));

    let parity = fixture("parity.pdfa.json");
    let o = pdfa(&["equiv", "--pdfa", path(&out), "--pdfa2", path(&parity)]);
    assert!(stdout(&o).starts_with("equivalent\n"));

    // Identical invocations give identical bytes.
    let again = dir.path().join("again.json");
    pdfa(&["learn", "--sample", path(&sample), "--out", path(&again)]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn validate_reports_problems() {
    let dir = tempfile::tempdir().unwrap();
    let ok = pdfa(&["validate", "--sample", path(&fixture("parity.sample"))]);
    assert!(ok.status.success());
    assert!(stdout(&ok).starts_with("ok: 14 comparisons, 11 words"));

    let bad = dir.path().join("bad.sample");
    fs::write(&bad, "alphabet: u v\nu > v\nu = v\n").unwrap();
    let o = pdfa(&["validate", "--sample", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 3"));

    let cyclic = dir.path().join("cyclic.sample");
    fs::write(&cyclic, "alphabet: u v w\nu > v\nv > w\nw > u\n").unwrap();
    let o = pdfa(&["validate", "--sample", path(&cyclic)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pdfa(&["learn"]).status.code(), Some(2));
    assert_eq!(pdfa(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn generate_check_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let garden = fixture("garden.pdfa.json");
    let s1 = dir.path().join("s1.sample");
    let s2 = dir.path().join("s2.sample");
    for s in [&s1, &s2] {
        let o = pdfa(&[
            "generate",
            "--pdfa",
            path(&garden),
            "--words",
            "80",
            "--fraction",
            "0.5",
            "--seed",
            "9",
            "--out",
            path(s),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&s1).unwrap(), fs::read(&s2).unwrap());

    let o = pdfa(&["consistent", "--pdfa", path(&garden), "--sample", path(&s1)]);
    assert!(stdout(&o).starts_with("consistent"));
    let o = pdfa(&[
        "check-characteristic",
        "--pdfa",
        path(&garden),
        "--sample",
        path(&s1),
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o)
            .lines()
            .filter(|l| l.starts_with("condition "))
            .count(),
        4
    );
}

#[test]
fn oracle_and_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let o = pdfa(&[
        "oracle",
        "--sample",
        path(&fixture("parity.sample")),
        "--k",
        "3",
        "--ranks",
        "3",
    ]);
    assert_eq!(stdout(&o), "none\n");

    let pos = dir.path().join("pos.words");
    let neg = dir.path().join("neg.words");
    fs::write(&pos, "alphabet: a b\na\n").unwrap();
    fs::write(&neg, "alphabet: a b\nb\n").unwrap();
    let out = dir.path().join("reduced.sample");
    let o = pdfa(&[
        "reduce",
        "--positive",
        path(&pos),
        "--negative",
        path(&neg),
        "--k",
        "2",
        "--out",
        path(&out),
    ]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "alphabet: a b\na = a\nb = b\na > b\n"
    );
    let o = pdfa(&["oracle", "--sample", path(&out), "--k", "2"]);
    assert!(stdout(&o).contains("\"states\""));
}

#[test]
fn experiment_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = pdfa(&[
        "experiment",
        "--pdfa",
        path(&fixture("garden.pdfa.json")),
        "--counts",
        "20,40",
        "--trials",
        "2",
        "--csv",
        path(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn dot_export() {
    let o = pdfa(&["dot", "--pdfa", path(&fixture("parity.pdfa.json"))]);
    assert!(stdout(&o).starts_with("digraph automaton {"));
}
