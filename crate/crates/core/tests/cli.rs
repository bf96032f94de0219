use std::path::PathBuf;
use std::process::{Command, Output};

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fqchol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqchol")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn classify_prints_pattern() {
    let a = write_tmp("diag13.txt", "7 1 2\n1 0\n0 3\n");
    let o = run(&["classify", a.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "+,-\n");
    let o = run(&["classify", "--tpm", a.to_str().unwrap()]);
    assert_eq!(stdout(&o), "-,-\n");
}

#[test]
fn factor_identity() {
    let a = write_tmp("id2.txt", "7 1 2\n1 0\n0 1\n");
    let o = run(&["factor", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "7 1 2\n1 0\n0 1\npattern +,+\n");
}

#[test]
fn factor_with_anchor_and_tpm() {
    let a = write_tmp("a4.txt", "2 2 2\n1 1 1\n2 1\n1 1\n");
    let o = run(&["factor", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o2 = run(&["factor", a.to_str().unwrap(), "--anchor", a.to_str().unwrap()]);
    assert_eq!(stdout(&o2), "2 2 2\n1 1 1\n1 0\n0 1\npattern +,+\n");
    let o3 = run(&["factor-tpm", a.to_str().unwrap(), "--anchor", a.to_str().unwrap()]);
    assert!(stdout(&o3).starts_with("2 2 2\n1 1 1\n1 0\n0 1\n"));
}

#[test]
fn census_table() {
    let o = run(&["census", "--p", "3", "--k", "1", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains(&format!("{:<16}{:>14}{:>14}", "total", 12, 12)), "{text}");
    assert_eq!(text, stdout(&run(&["census", "--p", "3", "--n", "2"])));
    let shard = stdout(&run(&["census", "--p", "3", "--n", "2", "--shard", "0/2"]));
    assert!(shard.contains("partial"));
}

#[test]
fn domain_errors_exit_2() {
    let a5 = write_tmp("f5.txt", "5 1 1\n1\n");
    let o = run(&["factor", a5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E_NONDEFINITE:"));

    let zero = write_tmp("zero.txt", "7 1 2\n0 1\n1 0\n");
    let o = run(&["factor", zero.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E_ZERO_MINOR:"));

    let a = write_tmp("pp.txt", "7 1 2\n1 0\n0 1\n");
    let b = write_tmp("pm.txt", "7 1 2\n1 0\n0 3\n");
    let o = run(&["factor", a.to_str().unwrap(), "--anchor", b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("E_PATTERN_MISMATCH:"));

    let o = run(&["witness-nonunique", "--p", "7", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["factor"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--p", "6", "--n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "/nonexistent/file"]).status.code(), Some(1));
    let bad = write_tmp("bad.txt", "7 1 2\n1 x\n0 1\n");
    let o = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("E_PARSE:"));
    let asym = write_tmp("asym.txt", "7 1 2\n1 2\n0 1\n");
    assert_eq!(run(&["classify", asym.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn help_documents_grammar() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("p k n") && text.contains("modulus coefficients"));
}

#[test]
fn transition_and_inverse_map() {
    let a = write_tmp("tr.txt", "7 1 2\n1 0\n0 3\n");
    let o = run(&["transition", a.to_str().unwrap(), "--to-pattern", "+,+"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // diag(1,3) = diag(1,2) diag(1,6) diag(1,2), carried to diag(1,4)
    assert_eq!(stdout(&o), "7 1 2\n1 0\n0 4\npattern +,+\n");
    let o = run(&["inverse-map", a.to_str().unwrap()]);
    assert_eq!(stdout(&o), "7 1 2\n1 0\n0 5\npattern lpm +,- -> tpm -,-\n");
}

#[test]
fn preservers_f3() {
    let o = run(&["preservers", "--p", "3", "--n", "2", "--s", "2", "--eps", "+,+"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "scan full members 3 from +,+ to +,+\nf 0 1 2\npreservers 1 family 1 verdict matches-frobenius-family\n");
}

#[test]
fn group_op_and_cayley() {
    let d = write_tmp("d.txt", "7 1 2\n1 0\n0 6\n");
    let o = run(&["group-op", "--law", "prod", d.to_str().unwrap(), d.to_str().unwrap()]);
    assert_eq!(stdout(&o), "7 1 2\n1 0\n0 1\npattern +,+\n");
    let o = run(&["group-op", "--law", "choladd", "--square", d.to_str().unwrap()]);
    assert!(stdout(&o).ends_with("pattern +,+\n"));
    let a = write_tmp("c3.txt", "3 1 2\n1 0\n0 1\n");
    let o = run(&["group-op", "--law", "choladd", "--internal", "--cayley", a.to_str().unwrap()]);
    assert!(stdout(&o).ends_with("group true abelian true order 3\n"), "{}", stdout(&o));
}

#[test]
fn witness_over_f5() {
    let o = run(&["witness-nonunique", "--p", "5", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "first\n5 1 1\n1\nsecond\n5 1 1\n4\nanchor\n5 1 1\n1\nimage\n5 1 1\n1\n");
}

#[test]
fn field_info() {
    let o = run(&["field-info", "--p", "3", "--k", "2"]);
    assert_eq!(
        stdout(&o),
        "field 3^2 [1,0,1]\norder 9\nclass non-definite\nomega_plus 1\nomega_minus 4\npositive 1 2 3 6\n"
    );
}
