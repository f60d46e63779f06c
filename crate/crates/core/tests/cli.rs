use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mirkin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mirkin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

const EXAMPLE: &str = "p mirk 4 3\n0000\n0001\n1110\n";

#[test]
fn gadget_ell_one() {
    let o = mirkin(&["gadget", "--ell", "1"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "00\n01\n");
}

#[test]
fn sat2nae_on_stdin() {
    let o = mirkin(&["reduce", "sat2nae", "--in", "-", "--out", "-"], "p cnf 3 1\n1 -2 3 0\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "p nae 5 2\n1 -2 4 0\n3 5 -4 0\n");
}

#[test]
fn every_backend_solves_the_example() {
    for backend in ["brute", "types", "ilp"] {
        let o = mirkin(&["solve", "--backend", backend, "--input", "-"], EXAMPLE);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(stdout(&o), "OPT 3\nARG 0001\n", "{backend}");
    }
}

#[test]
fn budget_decisions() {
    for backend in ["brute", "types", "ilp"] {
        let yes = mirkin(&["solve", "--backend", backend, "--input", "-", "--k", "3"], EXAMPLE);
        assert_eq!(stdout(&yes), "OPT 3\nARG 0001\nDECISION YES\n");
        let no = mirkin(&["solve", "--backend", backend, "--input", "-", "--k", "2"], EXAMPLE);
        assert_eq!(no.status.code(), Some(0));
        assert_eq!(stdout(&no), "OPT 3\nARG 0001\nDECISION NO\n");
    }
}

#[test]
fn config_line_on_stderr() {
    let o = mirkin(&["gadget", "--ell", "2"], "");
    assert!(stderr(&o).starts_with("c config "));
    assert!(stderr(&o).contains("ell: 2"));
}

#[test]
fn parse_error_exit_two() {
    let o = mirkin(&["solve", "--backend", "brute", "--input", "-"], "p mirk 4 2\n0000\n01\n");
    assert_eq!(o.status.code(), Some(2));
    let last = stderr(&o).lines().last().unwrap();
    assert!(last.starts_with("error parse: "), "{last}");
    assert!(last.contains("line 3"), "{last}");
}

#[test]
fn usage_error_exit_two() {
    let o = mirkin(&["solve", "--backend", "simplex", "--input", "-"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exit_three() {
    let o = mirkin(&["--max-n", "3", "solve", "--backend", "brute", "--input", "-"], EXAMPLE);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).lines().last().unwrap().starts_with("error "));
}

#[test]
fn verify_gadget_suite() {
    let o = mirkin(&["verify", "--suite", "gadget", "--max-ell", "4"], "");
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("suite gadget PASS checks=155 failures=0\n"), "{}", stdout(&o));
}

#[test]
fn verify_claims_suite() {
    let o = mirkin(&["verify", "--suite", "claims", "--trials", "10"], "");
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("const B00 352\n"));
    assert!(stdout(&o).contains("const clause_optimum 64\n"));
}

#[test]
fn bench_rows() {
    let o = mirkin(&["bench", "--backend", "brute", "--n-range", "4..6", "--m", "3"], "");
    assert!(o.status.success());
    let rows: Vec<Vec<&str>> = stdout(&o).lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0], ["n", "backend", "candidates", "nanoseconds"]);
    assert_eq!(rows.len(), 4);
    for (row, n) in rows[1..].iter().zip(4u32..) {
        assert_eq!(row[0], n.to_string());
        assert_eq!(row[1], "brute");
        assert_eq!(row[2], (1u64 << (n - 1)).to_string());
        row[3].parse::<u128>().unwrap();
    }
}

#[test]
fn nae2mirkin_header_and_budget() {
    let o = mirkin(
        &["reduce", "nae2mirkin", "--in", "-", "--out", "-"],
        "p nae 3 1\n1 2 3 0\n",
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let header: Vec<&str> = lines[0].split_whitespace().collect();
    assert_eq!(header[..3], ["p", "mirk", "10"]);
    assert_eq!(lines[1], "k 132064");
    let body = &lines[2..];
    assert_eq!(body.len(), header[3].parse::<usize>().unwrap());
    let copies: u64 = body
        .iter()
        .map(|l| l.split_whitespace().nth(1).map_or(1, |m| m.parse().unwrap()))
        .sum();
    assert_eq!(copies, 5 * 16 * 75 + 3);
    let solved = mirkin(&["solve", "--backend", "types", "--input", "-"], text);
    assert!(stdout(&solved).ends_with("DECISION YES\n"), "{}", stdout(&solved));
}

#[test]
fn threads_do_not_change_the_answer() {
    let input = "p mirk 12 4\n101100111000 2\n000111000111\n111111000000 3\n010101010101\n";
    let base = mirkin(&["solve", "--backend", "brute", "--input", "-"], input);
    for t in ["2", "3", "8"] {
        let o = mirkin(&["--threads", t, "solve", "--backend", "brute", "--input", "-"], input);
        assert_eq!(o.stdout, base.stdout);
    }
}
