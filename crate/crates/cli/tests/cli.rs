use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mixbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(args)
        .env_remove("MIXBOUND_BUDGET")
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(args)
        .env_remove("MIXBOUND_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn analyze_pure_birth() {
    let out = mixbound(&["analyze", "--example", "pure-birth", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("states: 5"));
    assert!(text.contains("beta_star: 0.5"));
}

#[test]
fn analyze_hypercube_gap() {
    let out = mixbound(&["analyze", "--example", "hypercube", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("gap: 0.333333333333"));
}

#[test]
fn bounds_table_layout_and_soundness() {
    let out = mixbound(&["bounds", "--example", "sticky-walk", "--n", "6", "--epsilon", "0.25,0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,epsilon,value,applicable,exact_tmix,ratio"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    for row in &rows {
        if row[3] != "true" {
            continue;
        }
        let ratio: f64 = row[5].parse().unwrap();
        if row[0].ends_with("lower") {
            assert!(ratio <= 1.0, "{row:?}");
        } else {
            assert!(ratio >= 1.0, "{row:?}");
        }
    }
}

#[test]
fn pure_birth_sst_bound_is_exact() {
    let out = mixbound(&["bounds", "--example", "pure-birth", "--epsilon", "0.25"]);
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("sst_upper,")).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2], fields[4]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["bounds", "--example", "random-lazy", "--n", "7", "--seed", "11"][..],
        &["profile", "--example", "biased-walk", "--n", "6", "--horizon", "30"][..],
        &["dual", "--example", "random-lazy", "--n", "5", "--seed", "2", "--horizon", "20"][..],
    ] {
        let a = mixbound(args);
        let b = mixbound(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn profile_csv_header_and_length() {
    let out = mixbound(&["profile", "--example", "sticky-walk", "--n", "4", "--horizon", "2"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["t,tv,sep", "0,0.833333333333,1", "1,0.666666666667,1", "2,0.604166666667,1"]);
}

#[test]
fn profile_until_stops_below_epsilon() {
    let out = mixbound(&["profile", "--example", "hypercube", "--n", "3", "--until", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let tv: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!(tv <= 0.1);
}

#[test]
fn dual_residual_is_small() {
    let out = mixbound(&["dual", "--example", "random-lazy", "--n", "6", "--seed", "3", "--horizon", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("# intertwining residual")).unwrap();
    let residual: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(residual < 1e-8);
    let link_rows = text.lines().take_while(|l| !l.is_empty()).count();
    assert_eq!(link_rows, 6);
}

#[test]
fn dual_rejects_complex_spectrum() {
    let out = mixbound(&["dual", "--example", "random", "--n", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schur_hook_count() {
    let out = mixbound(&["schur", "--shape", "2", "1", "--m", "3", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "8");
}

#[test]
fn example_round_trips_through_stdin() {
    let csv = stdout(&mixbound(&["example", "biased-walk", "--n", "5"]));
    let direct = mixbound(&["analyze", "--example", "biased-walk", "--n", "5"]);
    let piped = with_stdin(&["analyze", "-"], &csv);
    assert_eq!(piped.status.code(), Some(0), "{}", stderr(&piped));
    let pi = |o: &Output| stdout(o).lines().find(|l| l.starts_with("pi:")).unwrap().to_string();
    assert_eq!(pi(&direct), pi(&piped));
}

#[test]
fn json_example_is_accepted() {
    let json = stdout(&mixbound(&["example", "hypercube", "--n", "2", "--format", "json"]));
    let out = with_stdin(&["analyze", "-"], &json);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("00"));
}

#[test]
fn parse_errors_report_position_and_exit_two() {
    let out = with_stdin(&["analyze", "-"], "0.5,0.5\n0.5,abc\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 2"), "{}", stderr(&out));
}

#[test]
fn bad_row_sum_exits_two() {
    let out = with_stdin(&["analyze", "-"], "0.6,0.5\n0.5,0.5\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("row 0"));
}

#[test]
fn missing_input_exits_two() {
    assert_eq!(mixbound(&["analyze"]).status.code(), Some(2));
    assert_eq!(mixbound(&["analyze", "/nonexistent/matrix.csv"]).status.code(), Some(2));
}

#[test]
fn budget_env_limits_profiles() {
    let out = Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(["profile", "--example", "sticky-walk", "--n", "20", "--until", "0.001"])
        .env("MIXBOUND_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(["profile", "--example", "sticky-walk", "--n", "4", "--horizon", "3"])
        .env("MIXBOUND_BUDGET", "steps=100,states=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_mixbound"))
        .args(["profile", "--example", "sticky-walk", "--n", "4", "--horizon", "3"])
        .env("MIXBOUND_BUDGET", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
