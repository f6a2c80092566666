//! End-to-end tests of the `supercat` binary: output formats and the
//! exit-code contract.

use std::process::{Command, Output};

fn supercat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn supercat_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercat"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn compute_methods_and_usage_error() {
    let out = supercat(&["compute", "1", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "10");

    let out = supercat(&["compute", "2", "2", "vonszily"]);
    assert_eq!(stdout(&out).trim(), "6");

    let out = supercat(&["compute", "17", "20", "shifted"]);
    let direct = supercat(&["compute", "17", "20", "direct"]);
    assert_eq!(stdout(&out), stdout(&direct));

    // shifted with n < m is a usage error.
    let out = supercat(&["compute", "3", "2", "shifted"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn clap_usage_errors_exit_2() {
    let out = supercat(&["compute", "not-a-number", "3"]);
    assert_eq!(code(&out), 2);
    let out = supercat(&["no-such-subcommand"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_csv_and_json() {
    let out = supercat(&["table", "0", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "m,s=0,s=1,s=2,s=3,s=4");
    assert_eq!(lines.next().unwrap(), "0,1,2,6,20,70");

    let out = supercat(&["table", "2", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cells = doc["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 9);
    let cell = cells.iter().find(|c| c["m"] == 2 && c["s"] == 0).unwrap();
    assert_eq!(cell["value"], "6");

    let out = supercat(&["table", "1", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cell = doc["cells"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["m"] == 1 && c["s"] == 4)
        .cloned()
        .unwrap();
    assert_eq!(cell["value"], "84");
}

#[test]
fn verify_small_shift_passes() {
    let out = supercat(&[
        "verify",
        "small-shift",
        "--m",
        "0..6",
        "--s",
        "0..3",
        "--engine",
        "both",
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["summary"]["passed"], 28);
    assert_eq!(
        report["summary"]["resolved_variant"],
        serde_json::Value::Null
    );
}

#[test]
fn verify_shift4_records_resolved_variant() {
    let out = supercat(&["verify", "shift4", "--m", "0..5"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["resolved_variant"], "order-negated");
}

#[test]
fn verify_csv_format_and_out_file() {
    let dir = std::env::temp_dir().join("supercat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = supercat(&[
        "verify",
        "identities",
        "--m",
        "0..3",
        "--s",
        "0..3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("m,s,expected,actual,pass,detail"));
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn verify_budget_exceeded_exits_3() {
    let out = supercat_env(
        &["verify", "involution", "--m", "1", "--n", "9"],
        "SUPERCAT_ENUM_BUDGET",
        "1000",
    );
    assert_eq!(code(&out), 3);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["cases"][0]["detail"]
        .as_str()
        .unwrap()
        .starts_with("resource: "));

    // The same campaign fits in the default budget.
    let out = supercat(&["verify", "involution", "--m", "1", "--n", "9"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_rejects_bad_budget_and_bad_flags() {
    let out = supercat_env(
        &["verify", "involution", "--m", "1", "--n", "9"],
        "SUPERCAT_ENUM_BUDGET",
        "lots",
    );
    assert_eq!(code(&out), 2);

    let out = supercat(&["verify", "small-shift", "--m", "0..2", "--s", "0..4"]);
    assert_eq!(code(&out), 2);

    let out = supercat(&["verify", "small-shift", "--m", "0..2", "--n", "3"]);
    assert_eq!(code(&out), 2);

    let out = supercat(&["verify", "involution", "--m", "0..2", "--n", "3..4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn enumerate_lists_and_counts() {
    let out = supercat(&["enumerate", "--m", "1", "--s", "2", "--level", "-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "UURRRR");

    let out = supercat(&[
        "enumerate",
        "--m",
        "1",
        "--s",
        "2",
        "--level",
        "0",
        "--predicate",
        "small-shift",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "10");

    // The empty path prints as an empty line.
    let out = supercat(&["enumerate", "--m", "0", "--s", "0", "--level", "0"]);
    assert_eq!(stdout(&out), "\n");

    // Predicates only apply at level 0.
    let out = supercat(&[
        "enumerate",
        "--m",
        "1",
        "--s",
        "2",
        "--level",
        "1",
        "--predicate",
        "small-shift",
    ]);
    assert_eq!(code(&out), 2);

    let out = supercat(&["enumerate", "--m", "1", "--s", "2", "--level", "3"]);
    assert_eq!(code(&out), 2);

    let out = supercat_env(
        &["enumerate", "--m", "5", "--s", "2", "--level", "0"],
        "SUPERCAT_ENUM_BUDGET",
        "100",
    );
    assert_eq!(code(&out), 3);
}

#[test]
fn enumerate_shift4_predicates() {
    let out = supercat(&[
        "enumerate",
        "--m",
        "2",
        "--s",
        "4",
        "--level",
        "0",
        "--predicate",
        "shift4-order-negated",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "198");

    let out = supercat(&[
        "enumerate",
        "--m",
        "2",
        "--s",
        "4",
        "--level",
        "0",
        "--predicate",
        "band-l1-not-first",
    ]);
    let listed: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(listed, vec!["RUURRURURURU", "RUURURURURUR"]);

    // Shift-4 predicates need s = 4.
    let out = supercat(&[
        "enumerate",
        "--m",
        "2",
        "--s",
        "3",
        "--level",
        "0",
        "--predicate",
        "quad-l1-first",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn census_output() {
    let out = supercat(&["census", "--part", "tail", "--s", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("hit_l3,hit_l4,l3_then_l4,l4_then_l3,in_band_56,in_band_67,count"));
    assert!(text.trim_end().ends_with("total,,,,,,6"));

    let brute = supercat(&["census", "--part", "tail", "--s", "2", "--engine", "brute"]);
    assert_eq!(stdout(&brute), text);

    let out = supercat(&["census", "--part", "head", "--m", "2"]);
    let text = stdout(&out);
    assert!(text.contains("true,true,false,true,1"));
    assert!(text.trim_end().ends_with("total,,,,6"));

    let out = supercat(&["census", "--part", "head"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_figures_and_determinism() {
    let out = supercat(&[
        "render",
        "--m",
        "4",
        "--s",
        "3",
        "--lines",
        "l1,l2,l3,l4",
        "--grid",
    ]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    assert_eq!(svg.matches("<line ").count(), 4);

    let again = supercat(&[
        "render",
        "--m",
        "4",
        "--s",
        "3",
        "--lines",
        "l1,l2,l3,l4",
        "--grid",
    ]);
    assert_eq!(out.stdout, again.stdout, "byte-identical across runs");

    let out = supercat(&[
        "render",
        "--m",
        "4",
        "--s",
        "4",
        "--lines",
        "l1,l2,l3,l4,l5,l6,l7",
        "--grid",
    ]);
    assert_eq!(stdout(&out).matches("<line ").count(), 7);

    let out = supercat(&[
        "render",
        "--m",
        "2",
        "--s",
        "4",
        "--lines",
        "l6",
        "--path",
        "URRUUURRRRUU",
        "--path",
        "UURRRRUU@2,2",
    ]);
    assert_eq!(stdout(&out).matches("<polyline ").count(), 2);

    let out = supercat(&["render", "--m", "1", "--s", "4", "--lines", "l8"]);
    assert_eq!(code(&out), 2);

    let out = supercat(&[
        "render", "--m", "2", "--s", "2", "--lines", "l1", "--path", "RX",
    ]);
    assert_eq!(code(&out), 2);
}
