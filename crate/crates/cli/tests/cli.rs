//! End-to-end tests of the binary: flags, outputs, and exit codes.

use std::process::{Command, Output};

fn hyperval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn vp_prints_valuation() {
    let out = hyperval(&["vp", "-p", "5", "-m", "50"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn vp_rejects_composite_base() {
    let out = hyperval(&["vp", "-p", "4", "-m", "50"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("must be prime"));
}

#[test]
fn vp_rejects_zero() {
    let out = hyperval(&["vp", "-p", "2", "-m", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("undefined"));
}

#[test]
fn vp_json_schema() {
    let out = hyperval(&["vp", "-p", "5", "-m", "50", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"p\":5,\"m\":50,\"valuation\":2}\n");
}

#[test]
fn missing_argument_is_a_usage_error() {
    let out = hyperval(&["vp", "-p", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_decimal_input_is_a_usage_error() {
    let out = hyperval(&["vp", "-p", "5", "-m", "0x10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unsupported_csv_format_is_a_usage_error() {
    let out = hyperval(&["vp", "-p", "5", "-m", "50", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not supported"));
}

#[test]
fn vpfact_methods_agree() {
    for method in ["legendre", "digitsum"] {
        let out = hyperval(&["vpfact", "-p", "2", "-n", "10", "--method", method]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), "8\n", "method {method}");
    }
    let out = hyperval(&["vpfact", "-p", "7", "-n", "6"]);
    assert_eq!(stdout(&out), "0\n");
    let out = hyperval(&["vpfact", "-p", "7", "-n", "1000"]);
    assert_eq!(stdout(&out), "164\n");
}

#[test]
fn vpfact_oracle_respects_ceiling_and_override() {
    let out = hyperval(&["vpfact", "-p", "7", "-n", "1000", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("oracle ceiling"));

    let out = Command::new(env!("CARGO_BIN_EXE_hyperval"))
        .args(["vpfact", "-p", "7", "-n", "1000", "--method", "oracle"])
        .env("HYPERVAL_ORACLE_CEILING", "1000")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "164\n");
}

#[test]
fn invalid_ceiling_override_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperval"))
        .args(["vpfact", "-p", "2", "-n", "10", "--method", "oracle"])
        .env("HYPERVAL_ORACLE_CEILING", "two hundred")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vphyper_defaults_to_closed_form() {
    let out = hyperval(&["vphyper", "-p", "5", "-n", "60"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "465\n");
}

#[test]
fn vphyper_below_base_is_zero() {
    let out = hyperval(&["vphyper", "-p", "3", "-n", "2"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn vphyper_all_reports_each_algorithm() {
    let out = hyperval(&["vphyper", "-p", "7", "-n", "1000", "--algorithm", "all"]);
    assert!(out.status.success());
    // n = 1000 is past the oracle ceiling, so the three closed forms run.
    assert_eq!(
        stdout(&out),
        "direct 82390\ntheorem1 82390\ndoublesum 82390\n"
    );
}

#[test]
fn vphyper_all_includes_oracle_within_ceiling() {
    let out = hyperval(&["vphyper", "-p", "5", "-n", "60", "--algorithm", "all"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "direct 465\ntheorem1 465\ndoublesum 465\noracle 465\n"
    );
}

#[test]
fn vphyper_json_breakdown() {
    let out = hyperval(&["vphyper", "-p", "2", "-n", "10", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["p"], 2);
    assert_eq!(json["n"], 10);
    assert_eq!(json["results"][0]["algorithm"], "theorem1");
    assert_eq!(json["results"][0]["valuation"], 50);
    assert_eq!(json["breakdown"]["leading"], 80);
    assert_eq!(json["breakdown"]["correction"], 30);
    assert_eq!(json["breakdown"]["value"], 50);
}

#[test]
fn vphyper_direct_json_has_no_breakdown() {
    let out = hyperval(&[
        "vphyper", "-p", "2", "-n", "10", "--algorithm", "direct", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json.get("breakdown").is_none());
}

#[test]
fn asym_plain_output() {
    let out = hyperval(&["asym", "-p", "7", "-n", "1000"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("hyperfactorial 82390 251750/3 83916.7 83917 1.853%"));
    assert!(text.contains("factorial 164 500/3 166.667 167 1.626%"));
}

#[test]
fn asym_zero_case() {
    let out = hyperval(&["asym", "-p", "5", "-n", "0", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["hyperfactorial"]["exact"], 0);
    assert_eq!(json["hyperfactorial"]["asymptote"]["num"], 0);
    assert_eq!(json["hyperfactorial"]["relative_error"], serde_json::Value::Null);
}

#[test]
fn limits_json_target() {
    let out = hyperval(&["limits", "-p", "7", "--which", "quadratic", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["target"]["num"], 1);
    assert_eq!(json["target"]["den"], 3);
    assert_eq!(json["kind"], "quadratic");
    assert_eq!(json["samples"].as_array().unwrap().len(), 4);
    assert_eq!(json["samples"][3]["n"], 100_000);
}

#[test]
fn limits_plain_prints_rational_target() {
    let out = hyperval(&["limits", "-p", "7", "--which", "quadratic"]);
    let text = stdout(&out);
    assert!(text.starts_with("target 1/3\n"), "{text}");
    let out = hyperval(&["limits", "-p", "2", "--which", "linear"]);
    let text = stdout(&out);
    assert!(text.starts_with("target 0\n"), "{text}");
}

#[test]
fn limits_csv_format() {
    let out = hyperval(&[
        "limits", "-p", "2", "--which", "linear", "--schedule", "100,1000", "--format", "csv",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("100,"));
}

#[test]
fn limits_schedule_below_base_is_a_domain_error() {
    let out = hyperval(&["limits", "-p", "7", "--schedule", "3,100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("ratio undefined"));
}

#[test]
fn figure_to_stdout() {
    let out = hyperval(&["figure", "--which", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,exact_hyper\n"));
    assert!(text.contains("\n10,50\n"));
    assert_eq!(text.lines().count(), 1001);
}

#[test]
fn figure_out_of_range_is_a_usage_error() {
    let out = hyperval(&["figure", "--which", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_json_reports() {
    let out = hyperval(&[
        "bench", "-p", "2", "--ns", "10", "--repetitions", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for report in reports {
        assert_eq!(report["agreement"], true);
        assert_eq!(report["n"], 10);
    }
}

#[test]
fn bench_repetition_floor() {
    let out = hyperval(&["bench", "-p", "2", "--ns", "10", "--repetitions", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("at least 3"));
}

#[test]
fn selftest_quick_passes() {
    let out = hyperval(&["selftest", "--quick"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("selftest: ok"));
}

#[cfg(unix)]
#[test]
fn closed_pipe_does_not_panic() {
    use std::io::Read;
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperval"))
        .args(["figure", "--which", "1"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take()); // close the read end mid-stream
    let status = child.wait().unwrap();
    let mut err_text = String::new();
    child
        .stderr
        .take()
        .unwrap()
        .read_to_string(&mut err_text)
        .unwrap();
    assert!(!status.success()); // killed by SIGPIPE, like standard tools
    assert!(
        !err_text.contains("panicked"),
        "broken pipe produced a panic: {err_text}"
    );
}
