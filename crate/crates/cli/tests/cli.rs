use std::process::{Command, Output};

use hydrocone::algebra::{rat, Monomial};
use hydrocone::green::AsymptoticTerm;
use serde::Deserialize;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hydrocone")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn parametrix_order_zero() {
    let o = run(&["parametrix", "--order", "0", "--channels", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2/((w − 2)(w − 3))"), "{}", stdout(&o));
}

#[test]
fn parametrix_table_and_json() {
    let o = run(&["parametrix", "--order", "2", "--channels", "0..2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("h⁻¹").count(), 9);

    let o = run(&["parametrix", "--order", "2", "--channels", "0..=2", "--format", "json-lines"]);
    let recs: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 9);
    assert!(recs.iter().all(|r| r["record"] == "parametrix"));
    assert_eq!(recs[0]["poles"], serde_json::json!([[2, 1], [3, 1]]));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["parametrix", "--order", "-1"])), 1);
    assert_eq!(code(&run(&["green", "--channels", "3..1"])), 1);
    assert_eq!(code(&run(&["green", "--E", "-1/2", "--n", "1"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn green_channel_zero_series() {
    let o = run(&["green", "--order", "2", "--channels", "0..2", "--gamma", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("series_0(r) = 1 − Z r + (1/3)(Z² − E) r²"), "{}", stdout(&o));
}

#[test]
fn green_bound_state_substitution() {
    let o = run(&["green", "--order", "3", "--channels", "0..3", "--gamma", "1", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("series_1(r) = Z r − (1/2)Z² r² + (1/8)Z³ r³"), "{}", stdout(&o));
}

#[test]
fn green_numeric_parameters() {
    let o = run(&["green", "--order", "2", "--channels", "0", "--Z", "1", "--E", "-1/2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("series_0(r) = 1 − r + (1/2) r²"), "{}", stdout(&o));
    assert_eq!(code(&run(&["green", "--E", "1/2"])), 1);
}

#[test]
fn green_inadmissible_weight() {
    let o = run(&["green", "--gamma", "0.5"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("inadmissible"));
    assert_eq!(code(&run(&["green", "--gamma", "3/2"])), 1);
}

#[derive(Deserialize)]
struct TermLine {
    record: String,
    #[serde(flatten)]
    term: AsymptoticTerm,
}

#[test]
fn json_terms_round_trip() {
    let args = ["green", "--order", "2", "--channels", "0..2", "--format", "json-lines"];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let term_lines: Vec<&str> = text.lines().filter(|l| l.contains(r#""record":"term""#)).collect();
    assert!(!term_lines.is_empty());
    let mut terms = Vec::new();
    for line in &term_lines {
        let parsed: TermLine = serde_json::from_str(line).unwrap();
        assert_eq!(parsed.record, "term");
        let again = serde_json::to_value(&parsed.term).unwrap();
        let mut original: Value = serde_json::from_str(line).unwrap();
        original.as_object_mut().unwrap().remove("record");
        assert_eq!(again, original);
        terms.push(parsed.term);
    }
    // First G_I term of channel 0 is −2Z at w = 1.
    let first = terms.iter().find(|t| t.channel.0 == 0 && t.r_power == 0 && t.marker.point == 1).unwrap();
    assert_eq!(first.coeff.coeff(Monomial::new(1, 0)), rat(-2, 1));

    let groups: Vec<Value> =
        text.lines().map(|l| serde_json::from_str::<Value>(l).unwrap()).filter(|v| v["record"] == "group").collect();
    assert_eq!(groups.len(), 3);
    assert_eq!(groups[0]["series_text"], "1 − Z r + (1/3)(Z² − E) r²");
    let z2 = groups[0]["series"][2].as_array().unwrap().iter().find(|m| m["z"] == 2 && m["e"] == 0).unwrap();
    assert_eq!(z2["coeff"], serde_json::json!({"num": "1", "den": "3"}));
}

#[test]
fn text_and_json_agree_on_terms() {
    let text = stdout(&run(&["green", "--order", "2", "--channels", "1"]));
    let json = stdout(&run(&["green", "--order", "2", "--channels", "1", "--format", "json-lines"]));
    let ledger = text.lines().filter(|l| l.starts_with("  [")).count();
    let records = json.lines().filter(|l| l.contains(r#""record":"term""#)).count();
    assert_eq!(ledger, records);
    for line in json.lines().filter(|l| l.contains(r#""record":"term""#)) {
        let t: TermLine = serde_json::from_str(line).unwrap();
        assert!(text.contains(&t.term.to_string()), "{}", t.term);
    }
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--order", "8", "--channels", "0..5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));
    assert!(stdout(&o).contains("sign differs"));
}

#[test]
fn verify_ground_state() {
    let o = run(&["verify", "--n", "1", "--format", "json-lines"]);
    assert_eq!(code(&o), 0);
    let recs: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let exp_check =
        recs.iter().find(|r| r["record"] == "check" && r["name"].as_str().unwrap().contains("e^(−Zr/1)")).unwrap();
    assert_eq!(exp_check["passed"], true);
    assert!(recs.iter().any(|r| r["record"] == "bound_state"));
}

#[test]
fn verify_detects_fault() {
    let o = run(&["verify", "--order", "4", "--channels", "0..2", "--inject-fault"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("[FAIL]"));
}

#[test]
fn qcheck_ground_state() {
    let o = run(&["qcheck", "--n", "1", "--Z", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("[PASS]").count(), 4);
}

#[test]
fn qcheck_2p() {
    let o = run(&["qcheck", "--n", "2", "--l", "1", "--Z", "1", "--format", "json-lines"]);
    assert_eq!(code(&o), 0);
    let recs: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let q = recs.iter().find(|r| r["record"] == "value" && r["name"] == "Q_1 printed formula").unwrap();
    assert!((q["value"].as_f64().unwrap() + 1.0).abs() < 1e-5);
}

#[test]
fn qcheck_scaled_charge() {
    let o = run(&["qcheck", "--n", "2", "--l", "1", "--Z", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn qcheck_quantum_number_error() {
    assert_eq!(code(&run(&["qcheck", "--n", "1", "--l", "1"])), 1);
    assert_eq!(code(&run(&["qcheck", "--n", "3", "--l", "2"])), 1);
    assert_eq!(code(&run(&["qcheck", "--Z", "sym"])), 1);
}

#[test]
fn qcheck_tight_tolerance_fails() {
    let o = run(&["qcheck", "--n", "1", "--tol", "1e-30"]);
    assert_eq!(code(&o), 2);
}
