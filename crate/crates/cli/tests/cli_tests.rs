//! End-to-end tests of the `pvlab` binary: exit codes, output formats,
//! and determinism.

use std::io::Write;
use std::path::PathBuf;

use assert_cmd::Command;

fn pvlab() -> Command {
    Command::cargo_bin("pvlab").unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn temp_csv(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::Builder::new()
        .suffix(".csv")
        .tempfile()
        .unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file
}

#[test]
fn help_and_version_exit_zero() {
    pvlab().arg("--help").assert().success();
    pvlab().arg("--version").assert().success();
    pvlab().args(["pv", "--help"]).assert().success();
}

#[test]
fn missing_subcommand_is_an_input_error() {
    pvlab().assert().code(1);
}

#[test]
fn unknown_flag_is_an_input_error() {
    pvlab()
        .args(["irr", "--frobnicate"])
        .assert()
        .code(1);
}

#[test]
fn unreadable_input_exits_one() {
    pvlab()
        .args(["pv", "/nonexistent/flows.csv", "--rate", "0.1"])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("error:"));
}

#[test]
fn wrong_csv_header_exits_one() {
    let file = temp_csv("time,value\n1,100\n");
    pvlab()
        .args(["pv", file.path().to_str().unwrap(), "--rate", "0.1"])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("expected header"));
}

#[test]
fn duplicate_period_exits_one() {
    let file = temp_csv("period,amount\n1,100\n1,200\n");
    pvlab()
        .args(["irr", file.path().to_str().unwrap()])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("duplicate period"));
}

#[test]
fn non_numeric_amount_exits_one() {
    let file = temp_csv("period,amount\n1,abc\n");
    pvlab()
        .args(["irr", file.path().to_str().unwrap()])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("not a number"));
}

#[test]
fn rate_at_or_below_minus_one_exits_one() {
    let file = temp_csv("period,amount\n0,-100\n1,110\n");
    pvlab()
        .args(["pv", file.path().to_str().unwrap(), "--rate=-1.5"])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("out of domain"));
}

#[test]
fn irr_without_sign_change_exits_two() {
    let file = temp_csv("period,amount\n0,100\n1,100\n");
    pvlab()
        .args(["irr", file.path().to_str().unwrap()])
        .assert()
        .code(2)
        .stderr(predicates::str::contains("no sign change"));
}

#[test]
fn zero_rate_pv_is_the_running_sum() {
    let file = temp_csv("period,amount\n1,100\n2,100\n");
    let assert = pvlab()
        .args(["pv", file.path().to_str().unwrap(), "--rate", "0"])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("direct: pv = 200, npv = 200"), "{stdout}");
    assert!(stdout.contains("forward: pv = 200, npv = 200"), "{stdout}");
    assert!(stdout.contains("backward: pv = 200, npv = 200"), "{stdout}");
}

#[test]
fn missing_interior_periods_are_zero_flows() {
    // Periods 1 and 2 are absent: the horizon is still 3.
    let file = temp_csv("period,amount\n0,-50\n3,100\n");
    let assert = pvlab()
        .args(["pv", file.path().to_str().unwrap(), "--rate", "0", "--scheme", "direct"])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("direct: pv = 100, npv = 50"), "{stdout}");
}

#[test]
fn solved_irr_is_reported_with_its_certificate() {
    let assert = pvlab()
        .args(["irr", fixture("fas91_cashflow.csv").to_str().unwrap()])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("rate = 0.10472983627870462"), "{stdout}");
    assert!(stdout.contains("uncertainty = "), "{stdout}");
    assert!(stdout.contains("iterations = "), "{stdout}");
    assert!(stdout.contains("residual = "), "{stdout}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for format in ["text", "csv", "json"] {
        let run = || {
            let assert = pvlab()
                .args([
                    "errors",
                    fixture("fas91_cashflow.csv").to_str().unwrap(),
                    "--format",
                    format,
                ])
                .assert()
                .success();
            assert.get_output().stdout.clone()
        };
        assert_eq!(run(), run(), "{format} output differs between runs");
    }
}

#[test]
fn schedule_text_has_inception_rows_and_footer() {
    let assert = pvlab()
        .args(["schedule", fixture("fas91_loan.txt").to_str().unwrap()])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("inception carrying amount = 98000.00"), "{stdout}");
    assert!(stdout.contains("91988.98"), "{stdout}");
    assert!(stdout.contains("total amortization: 1999.99"), "{stdout}");
    assert_eq!(stdout.lines().count(), 4 + 10 + 1, "{stdout}");
}

#[test]
fn schedule_csv_header_is_stable() {
    let assert = pvlab()
        .args([
            "schedule",
            fixture("fas91_loan.txt").to_str().unwrap(),
            "--format",
            "csv",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let header = stdout.lines().next().unwrap();
    assert_eq!(
        header,
        "period,col1_cash_inflow,col2_stated_interest,col3_amortization,\
         col4_interest_income,col5_unamortized_principal,col6_unamortized_fees,\
         col7_carrying_amount"
    );
    assert_eq!(stdout.lines().count(), 11);
}

#[test]
fn schedule_full_precision_mode_prints_shortest_roundtrip_values() {
    let assert = pvlab()
        .args([
            "schedule",
            fixture("fas91_loan.txt").to_str().unwrap(),
            "--rounding",
            "none",
            "--format",
            "csv",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    // Unrounded interest income in year 1 keeps its full fractional tail.
    let year1 = stdout.lines().nth(1).unwrap();
    let col4: f64 = year1.split(',').nth(4).unwrap().parse().unwrap();
    assert!((col4 - 98_000.0 * 0.104_729_836_278_704_62).abs() < 1e-9, "{year1}");
}

#[test]
fn loan_spec_with_unknown_key_exits_one() {
    let file = temp_csv("principal = 100\nnet_fees = 0\nstated_rate = 0.1\npayment = 20\nperiods = 6\nmaturity = 2031\n");
    pvlab()
        .args(["schedule", file.path().to_str().unwrap()])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("unknown key"));
}

#[test]
fn loan_spec_with_missing_key_exits_one() {
    let file = temp_csv("principal = 100\nnet_fees = 0\n");
    pvlab()
        .args(["schedule", file.path().to_str().unwrap()])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("missing key"));
}

#[test]
fn explicit_schedule_rate_overrides_the_solver() {
    let assert = pvlab()
        .args([
            "schedule",
            fixture("fas91_loan.txt").to_str().unwrap(),
            "--rate",
            "0.10",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("effective rate = 0.1\n"), "{stdout}");
    // At the stated rate there is nothing to amortize toward: income equals
    // stated interest only in year 1 before the carrying chains diverge.
    assert!(!stdout.contains("uncertainty"), "{stdout}");
}

#[test]
fn json_outputs_are_well_formed() {
    for (args, probe) in [
        (vec!["pv"], "schemes"),
        (vec!["irr"], "iterations"),
        (vec!["errors"], "dr_sweep"),
    ] {
        let mut full = args.clone();
        let path = fixture("fas91_cashflow.csv");
        full.push(path.to_str().unwrap());
        full.extend(["--format", "json"]);
        let assert = pvlab().args(&full).assert().success();
        let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
        let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert!(value.get(probe).is_some(), "{args:?} missing {probe}");
    }

    let assert = pvlab()
        .args([
            "schedule",
            fixture("fas91_loan.txt").to_str().unwrap(),
            "--format",
            "json",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 10);
    assert_eq!(value["engine"], "forward");
    assert_eq!(value["rounding"], "cents");
    assert_eq!(value["total_amortization"], 1999.99);
}

#[test]
fn errors_text_reports_verdicts_for_both_recursions() {
    let assert = pvlab()
        .args(["errors", fixture("fas91_cashflow.csv").to_str().unwrap()])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("forward: verdict = "), "{stdout}");
    assert!(stdout.contains("backward: verdict = "), "{stdout}");
}

#[test]
fn errors_csv_is_long_form_per_period() {
    let assert = pvlab()
        .args([
            "errors",
            fixture("fas91_cashflow.csv").to_str().unwrap(),
            "--format",
            "csv",
            "--scheme",
            "forward",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "k,scheme,abs_error,ratio");
    // Header plus one row per PV_0..PV_10.
    assert_eq!(lines.len(), 1 + 11, "{stdout}");
    assert!(lines[1].starts_with("0,forward,"), "{stdout}");
}

#[test]
fn errors_oracle_reference_runs() {
    let file = temp_csv(
        "period,amount\n0,-500\n1,100\n2,100\n3,100\n4,100\n5,100\n6,100\n",
    );
    pvlab()
        .args([
            "errors",
            file.path().to_str().unwrap(),
            "--reference",
            "oracle",
        ])
        .assert()
        .success();
}

#[test]
fn bad_tolerance_exits_one() {
    pvlab()
        .args([
            "irr",
            fixture("fas91_cashflow.csv").to_str().unwrap(),
            "--tolerance",
            "0",
        ])
        .assert()
        .code(1)
        .stderr(predicates::str::contains("tolerance"));
}
