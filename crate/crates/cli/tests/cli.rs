//! End-to-end tests of the `qroulette` binary: exit codes, report schemas,
//! frozen sweep values, and byte-identical output for identical invocations.

use std::io::Write;
use std::process::Command;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qroulette"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

#[test]
fn run_noiseless_wins_and_reports_schema() {
    let (code, stdout, _) = run_cli(&["run", "--n", "3", "--initial", "2", "--target", "2"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(report["config"]["n"], 3);
    assert_eq!(report["config"]["noise_r"], serde_json::Value::Null);
    assert_eq!(report["win_probability"], 1.0);
    assert_eq!(report["paper_formula"], serde_json::Value::Null);
    assert_eq!(report["outcome"].as_array().unwrap().len(), 3);
    assert_eq!(report["rho3_diag"].as_array().unwrap().len(), 3);
    assert!(stdout.contains("\"win_probability\":1.00000000000"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["run", "--n", "4", "--initial", "3", "--target", "1", "--noise-r", "0.3"];
    let (c1, first, _) = run_cli(&args);
    let (c2, second, _) = run_cli(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
}

#[test]
fn zero_noise_report_carries_the_noiseless_numbers() {
    let (_, noiseless, _) = run_cli(&["run", "--n", "3", "--initial", "2", "--target", "2"]);
    let (_, zero_noise, _) = run_cli(&[
        "run", "--n", "3", "--initial", "2", "--target", "2", "--noise-r", "0.0",
    ]);
    let a: serde_json::Value = serde_json::from_str(&noiseless).unwrap();
    let b: serde_json::Value = serde_json::from_str(&zero_noise).unwrap();
    for field in ["outcome", "win_probability", "rho3_diag"] {
        assert_eq!(a[field], b[field], "{field} differs");
    }
    // The zero-noise run is still a noisy-variant run, so the reference
    // formula applies there (value 1, deviation 0).
    assert_eq!(b["paper_formula"]["value"], 1.0);
    assert_eq!(b["paper_formula"]["deviation"], 0.0);
}

#[test]
fn noisy_run_matches_the_channel_diagonal() {
    let (code, stdout, _) = run_cli(&[
        "run", "--n", "3", "--initial", "2", "--target", "2", "--noise-r", "0.4",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"win_probability\":0.700000000000"));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let outcome = report["outcome"].as_array().unwrap();
    assert_eq!(outcome[0], 0.15);
    assert_eq!(outcome[1], 0.70);
    assert_eq!(outcome[2], 0.15);
}

#[test]
fn strategy_file_feeds_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alice.json");
    let mut f = std::fs::File::create(&path).unwrap();
    write!(f, r#"{{"n":3,"probs":{{"2 1 3":0.25,"3 2 1":0.1}}}}"#).unwrap();

    let (code, stdout, _) = run_cli(&[
        "run", "--n", "3", "--initial", "1", "--target", "3",
        "--alice", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["config"]["alice"]["2 1 3"], 0.25);
    assert_eq!(report["config"]["alice"]["3 2 1"], 0.1);
    assert_eq!(report["win_probability"], 1.0);
}

#[test]
fn missing_strategy_file_means_identity_strategy() {
    let (code, stdout, stderr) = run_cli(&[
        "run", "--n", "3", "--initial", "2", "--target", "2",
        "--alice", "/no/such/strategy.json",
    ]);
    assert_eq!(code, 0);
    assert!(stderr.contains("identity-only strategy"));
    let (_, plain, _) = run_cli(&["run", "--n", "3", "--initial", "2", "--target", "2"]);
    assert_eq!(stdout, plain);
}

#[test]
fn malformed_strategy_files_are_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("junk.json", "not json"),
        ("unknown.json", r#"{"n":3,"probs":{},"extra":1}"#),
        ("identity.json", r#"{"n":3,"probs":{"1 2 3":0.5}}"#),
        ("overweight.json", r#"{"n":3,"probs":{"2 1 3":0.7,"3 2 1":0.7}}"#),
        ("wrong_n.json", r#"{"n":4,"probs":{}}"#),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let (code, _, stderr) = run_cli(&[
            "run", "--n", "3", "--initial", "1", "--target", "1",
            "--alice", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 2, "{name}: {stderr}");
        assert!(stderr.contains("--alice"), "{name}: {stderr}");
    }
}

#[test]
fn sweep_csv_matches_frozen_noise_grid() {
    let (code, stdout, _) = run_cli(&[
        "sweep", "--n", "3", "--initial", "2", "--target", "2", "--r", "0:1:0.5",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        "n,initial,target,r,win_probability,paper_formula,deviation"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].contains(",1.00000000000,"));
    assert!(lines[2].contains(",0.625000000000,"));
    assert!(lines[3].contains(",0.250000000000,"));
}

#[test]
fn sweep_deviation_column_is_nonzero_at_zero_noise() {
    let (code, stdout, _) = run_cli(&[
        "sweep", "--n", "3", "--initial", "2", "--target", "2",
        "--r", "0:0:1", "--p", "2 1 3=0:1:0.5",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,initial,target,r,2 1 3,win_probability,paper_formula,deviation");
    let deviations: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(deviations, vec!["0", "0.500000000000", "1.00000000000"]);
}

#[test]
fn single_point_sweep_agrees_with_run() {
    let (_, run_out, _) = run_cli(&[
        "run", "--n", "3", "--initial", "2", "--target", "2", "--noise-r", "0.4",
    ]);
    // Compare the printed digits themselves, not a re-serialized parse.
    let win_text = run_out
        .split("\"win_probability\":")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap();

    let (_, sweep_out, _) = run_cli(&[
        "sweep", "--n", "3", "--initial", "2", "--target", "2", "--r", "0.4:0.4:0",
    ]);
    let row = sweep_out.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[4], win_text);
}

#[test]
fn sweep_json_has_columns_and_ordered_rows() {
    let (code, stdout, _) = run_cli(&[
        "sweep", "--n", "3", "--initial", "2", "--target", "2",
        "--r", "0:1:0.5", "--p", "2 1 3=0:1:1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let columns = doc["columns"].as_array().unwrap();
    assert_eq!(columns.len(), 8);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    // Grid-lexicographic: r is the outer axis, the swept key the inner one.
    assert_eq!(rows[0][3], 0.0);
    assert_eq!(rows[0][4], 0.0);
    assert_eq!(rows[1][3], 0.0);
    assert_eq!(rows[1][4], 1.0);
    assert_eq!(rows[2][3], 0.5);
}

#[test]
fn sweep_writes_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let args = [
        "sweep", "--n", "2", "--initial", "1", "--target", "1", "--r", "0:1:0.25",
    ];
    let (_, stdout, _) = run_cli(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let (code, empty, _) = run_cli(&with_out);
    assert_eq!(code, 0);
    assert!(empty.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

#[test]
fn sweep_usage_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["sweep", "--n", "3", "--initial", "2", "--target", "2", "--r", "0:1:zz"],
        vec!["sweep", "--n", "3", "--initial", "2", "--target", "2", "--r", "1:0:0.5"],
        vec!["sweep", "--n", "3", "--initial", "2", "--target", "2", "--r", "0:2:0.5"],
        vec!["sweep", "--n", "3", "--initial", "2", "--target", "2", "--p", "1 2 3=0:1:0.5"],
        vec!["sweep", "--n", "3", "--initial", "2", "--target", "2", "--p", "2 1=0:1:0.5"],
        vec![
            "sweep", "--n", "3", "--initial", "2", "--target", "2",
            "--p", "2 1 3=0:1:0.5", "--p", "2 1 3=0:1:0.5",
        ],
        vec![
            "sweep", "--n", "3", "--initial", "2", "--target", "2",
            "--p", "2 1 3=0:1:0.5", "--p", "3 2 1=0:1:0.5",
        ],
        vec!["sweep", "--n", "3", "--initial", "5", "--target", "2", "--r", "0:0:1"],
        // 1001 x 1001 grid points exceed the 10^6 cap.
        vec![
            "sweep", "--n", "3", "--initial", "2", "--target", "2",
            "--r", "0:1:0.001", "--p", "2 1 3=0:1:0.001",
        ],
    ];
    for args in cases {
        let (code, _, stderr) = run_cli(&args);
        assert_eq!(code, 2, "args={args:?} stderr={stderr}");
    }
}

#[test]
fn io_failures_exit_3() {
    let (code, _, stderr) = run_cli(&[
        "sweep", "--n", "3", "--initial", "2", "--target", "2",
        "--r", "0:0:1", "--out", "/no/such/dir/rows.csv",
    ]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--n", "3", "--trials", "50", "--seed", "7"];
    let (c1, first, _) = run_cli(&args);
    let (c2, second, _) = run_cli(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
    assert!(first.contains("result: 11/11 checks passed"));
    assert_eq!(first.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}

#[test]
fn verify_single_state_game_is_degenerate_but_green() {
    let (code, stdout, _) = run_cli(&["verify", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("SKIP kraus_completeness"));
    assert!(stdout.contains("result: 9/9 checks passed"));
}

#[test]
fn clap_usage_errors_exit_2() {
    let (code, _, _) = run_cli(&["run", "--n", "3", "--initial", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_cli(&["run", "--n", "3", "--initial", "2", "--target", "2", "--bogus"]);
    assert_eq!(code, 2);
}
