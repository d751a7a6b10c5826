use std::process::{Command, Output};

use proptest::prelude::*;
use proptest::test_runner::Config;
use ptengine::report::format::to_json;
use ptengine::report::{read_comparison, run, Command as Cmd, RunSpec, EXIT_INFEASIBLE, EXIT_USAGE, EXIT_VALIDATION};

fn ptengine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptengine"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn otto_box_example() {
    let o = ptengine(&["otto", "--L1", "1", "--L3", "2", "--v0", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("\"eta_exact\": 0.75"));
    assert!(text.contains("\"eta_paper\": 0.5"));
    assert!(text.contains("\"discrepancy\""));
    let c = read_comparison(text.as_bytes()).unwrap();
    assert_eq!(c.inputs.l3, Some(2.0));
}

#[test]
fn jb_box_example() {
    let text = stdout(&ptengine(&["jb", "--L1", "1", "--rp", "8", "--v0", "0"]));
    assert!(text.contains("\"eta_exact\": 0.75"));
}

#[test]
fn spectrum_example() {
    let o = ptengine(&["spectrum", "--L", "1", "--v0", "9.8696044", "--n-max", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,e_analytic,e_oracle,rel_err"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for (n, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0], n.to_string());
        assert!(cells[3].parse::<f64>().unwrap() <= 1e-6);
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["jb", "--rp", "0.5"][..],
        &["jb"],
        &["otto", "--L3", "0.5"],
        &["spectrum", "--precision", "18"],
        &["spectrum", "--L", "-1"],
        &["spectrum", "--n-max", "900"],
        &["sweep", "--param", "rp", "--from", "2", "--to", "4", "--steps", "1"],
        &[
            "sweep", "--param", "v0", "--from", "0", "--to", "4", "--scale", "log", "--rp", "2",
        ],
        &["frobnicate"],
        &["jb", "--rp", "nan"],
    ] {
        let o = ptengine(args);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn sweep_with_unbuildable_points_exits_3() {
    let o = ptengine(&[
        "sweep", "--param", "L1", "--from", "1", "--to", "3", "--steps", "3", "--cycle", "otto", "--L3", "2.5",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_INFEASIBLE));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().last().unwrap().starts_with("3,,,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("L1 = 3"));
}

#[test]
fn sweep_rows_follow_parameter_order() {
    let text = stdout(&ptengine(&[
        "sweep", "--param", "rp", "--from", "8", "--to", "2", "--steps", "4", "--v0", "3",
    ]));
    let params: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(params, vec![8.0, 6.0, 4.0, 2.0]);
    assert!(text.starts_with("param,eta_exact,eta_paper,work,q_hot,q_cold\n"));
}

#[test]
fn validate_reports_and_exits_on_failures() {
    let o = ptengine(&["validate", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("name,value,reference,error,tolerance,expect,pass\n"));
    for prefix in [
        "oracle_level[",
        "hf_analytic[",
        "hf_oracle[",
        "pressure_paper_vs_exact[lambda=2,n=1]",
        "box_jb_exact[",
        "box_otto_paper[",
        "first_law:",
        "adiabatic_invariant_paper:",
        "adiabatic_invariant_exact:",
        "harmonic_limit[",
    ] {
        assert!(text.lines().any(|l| l.starts_with(prefix)), "missing {prefix}");
    }
    let failing: Vec<&str> = text.lines().filter(|l| l.ends_with(",false")).collect();
    let code = o.status.code().unwrap();
    if failing.is_empty() {
        assert_eq!(code, 0);
    } else {
        assert_eq!(code, EXIT_VALIDATION);
        assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
    }
}

#[test]
fn limits_carry_box_and_harmonic_rows() {
    let o = ptengine(&["limits"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"box_otto_exact[L3=2]"));
    assert!(names.iter().any(|n| n.starts_with("harmonic_limit")));
    let failed = v["failed"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { EXIT_VALIDATION }));
}

#[test]
fn cycle_csv_and_side_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("otto.svg");
    let strokes = dir.path().join("strokes.csv");
    let o = ptengine(&[
        "otto",
        "--v0",
        "2",
        "--L3",
        "1.8",
        "--format",
        "csv",
        "--mode",
        "paper",
        "--samples",
        "20",
        "--svg",
        svg.to_str().unwrap(),
        "--strokes-csv",
        strokes.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("exact,"));
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("paper mode"));
    let strokes = std::fs::read_to_string(strokes).unwrap();
    assert_eq!(strokes.lines().count(), 1 + 4 * 20);
}

#[test]
fn unwritable_svg_path_is_a_usage_error() {
    let o = ptengine(&["jb", "--rp", "4", "--svg", "/nonexistent/dir/x.svg"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

proptest! {
    #![proptest_config(Config { cases: 24, failure_persistence: None, ..Config::default() })]

    #[test]
    fn json_round_trip_is_lossless(v0 in 0.0f64..30.0, rp in 1.2f64..9.0, precision in 6usize..=17) {
        let mut spec = RunSpec::new(Cmd::Jb);
        spec.v0 = v0;
        spec.rp = Some(rp);
        spec.samples = 16;
        spec.precision = precision;
        let first = run(&spec);
        prop_assert_eq!(first.code, 0);
        let back = read_comparison(&first.stdout).unwrap();
        prop_assert_eq!(to_json(&back, precision).unwrap(), first.stdout.clone());
        prop_assert_eq!(run(&spec).stdout, first.stdout);
    }
}
