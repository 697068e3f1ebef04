use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn keyforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keyforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_config(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn documented_examples() {
    let sqrt2 = config("config_sqrt2.json");
    let sqrt17 = config("config_sqrt17.json");
    let o = keyforge(&["eval", "-f", "x^3", sqrt2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3/2");
    let o = keyforge(&["epsilon", "-f", "x^2+2", sqrt2.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("epsilon = 3/4, I = {2}"));
    let o = keyforge(&["chain", "classify", sqrt17.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("UB, H_S = coordinate 1"));
}

#[test]
fn verdict_failures_exit_with_one() {
    let sqrt2 = config("config_sqrt2.json");
    let o = keyforge(&["iskey", "-q", "x^2+2", sqrt2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("yes: structural"));
    let o = keyforge(&["iskey", "-q", "x^3", sqrt2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no: epsilon(x) = 1/2"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_with_two() {
    let sqrt2 = config("config_sqrt2.json");
    let p = sqrt2.to_str().unwrap();
    for args in [
        vec!["frobnicate", p],
        vec!["eval", "--frobnicate", "-f", "x", p],
        vec!["eval", "-f", "x^^3", p],
        vec!["eval", "-f", "x", "/nonexistent/config.json"],
        vec!["iskey", "-q", "2*x", p],
        vec!["residual", "-f", "x^4", "--phi", "x^2+2", "--u", "2", p],
        vec!["chain", "classify", p],
    ] {
        let o = keyforge(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = keyforge(&["eval", "-f", "x + y", p]);
    assert!(stderr(&o).contains("column 5"), "{}", stderr(&o));
}

#[test]
fn config_errors_report_position() {
    let f = temp_config("{\n  \"version\": 1,\n  \"base_field\": { \"kind\": \"rationals\" ,, }\n}\n");
    let o = keyforge(&["eval", "-f", "x", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let body = |extra: &str| {
        format!(
            r#"{{"version": {extra}, "base_field": {{"kind": "rationals"}},
                "base_valuation": {{"kind": "p-adic", "p": 2}}, "chain": [{{"phi": "x", "gamma": "1/2"}}]}}"#
        )
    };
    let bad_version = temp_config(&body("2"));
    let o = keyforge(&["eval", "-f", "x", bad_version.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("version 2"), "{}", stderr(&o));

    let unknown = temp_config(&body("1, \"colour\": \"red\""));
    let o = keyforge(&["eval", "-f", "x", unknown.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"), "{}", stderr(&o));

    let bad_phi = temp_config(
        r#"{"version": 1, "base_field": {"kind": "rationals"}, "base_valuation": {"kind": "p-adic", "p": 2},
            "chain": [{"phi": "x", "gamma": "1/2"}, {"phi": "x^2 + + 2", "gamma": "3/2"}]}"#,
    );
    let o = keyforge(&["eval", "-f", "x", bad_phi.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("chain[1].phi"), "{}", stderr(&o));
}

#[test]
fn json_is_sorted_and_deterministic() {
    let sqrt17 = config("config_sqrt17.json");
    let args = ["--json", "chain", "invariants", "--budget", "5", sqrt17.to_str().unwrap()];
    let (a, b) = (keyforge(&args), keyforge(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    // re-serializing through the sorted map reproduces the output exactly
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap(), stdout(&a).trim_end());
    assert_eq!(doc["result"]["betas"], serde_json::json!(["3", "5", "9", "17", "33"]));
    assert_eq!(doc["result"]["t_inf"], 1);
    assert_eq!(doc["ok"], true);
}

#[test]
fn chain_check_and_stability() {
    let sqrt17 = config("config_sqrt17.json");
    let p = sqrt17.to_str().unwrap();
    let o = keyforge(&["--json", "chain", "check", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["result"]["passed"], true);
    let o = keyforge(&["chain", "stable", "-f", "x - 1", p]);
    assert_eq!(stdout(&o).trim(), "stable: value 3 from step 1");
    let o = keyforge(&["chain", "stable", "-f", "x^2 - 17", p]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn function_field_sessions() {
    let f = temp_config(
        r#"{"version": 1,
            "base_field": {"kind": "rational-functions", "p": 3},
            "base_valuation": {"kind": "t-adic"},
            "chain": [{"phi": "x", "gamma": "1/2"}, {"phi": "x^2 + t", "gamma": "3/2"}]}"#,
    );
    let p = f.path().to_str().unwrap();
    let o = keyforge(&["eval", "-f", "(x^2 + t)*x", p]);
    assert_eq!(stdout(&o).trim(), "2");
    // in characteristic 3 the first derivative 2x dominates
    let o = keyforge(&["epsilon", "-f", "x^2 + t", p]);
    assert_eq!(stdout(&o).lines().next(), Some("epsilon = 1, I = {1}"));

    // an inessential chain: the witness has the chain degree
    let g = temp_config(
        r#"{"version": 1,
            "base_field": {"kind": "rational-functions", "p": 3},
            "base_valuation": {"kind": "t-adic"},
            "chain": [{"phi": "x", "gamma": "1"}],
            "limit_chain": {"rule": "explicit",
                "steps": [{"phi": "x - t", "gamma": "2"}, {"phi": "x - t - t^2", "gamma": "3"},
                          {"phi": "x - t - t^2 - t^3", "gamma": "4"}],
                "tail": {"kind": "affine", "coords": [{"slope": "1", "intercept": "1"}]},
                "declared_witness": "x - t/(1-t)"}}"#,
    );
    let p = g.path().to_str().unwrap();
    let o = keyforge(&["chain", "classify", "--witness", "x^2", p]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = keyforge(&["chain", "check", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not essential"), "{}", stderr(&o));
}

#[test]
fn selftest_passes() {
    let o = keyforge(&["selftest", "--quick", config("config_sqrt2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count() >= 8);
}
