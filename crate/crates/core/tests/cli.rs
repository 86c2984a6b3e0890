//! The command-line surface, driven through the built binary.

use std::process::Command;

use q2bkss::cli::{exit_code, EXIT_FAIL, EXIT_UNSTABLE, EXIT_USAGE};
use q2bkss::Error;
use serde_json::Value;

fn q2bkss(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_q2bkss"))
        .args(args)
        .env_remove("Q2BKSS_TRUNC")
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// The shared page-entry shape: `s`, `t`, `summands` of `{order, label}`
/// with order `"free"` or a power of 3, `relations`, `provenance`.
fn check_entry(e: &Value) -> Result<(), String> {
    let obj = e.as_object().ok_or("entry is not an object")?;
    for key in ["s", "t"] {
        obj.get(key).and_then(Value::as_i64).ok_or(format!("{key} missing"))?;
    }
    for s in obj.get("summands").and_then(Value::as_array).ok_or("summands missing")? {
        s.get("label").and_then(Value::as_str).ok_or("label missing")?;
        match s.get("order") {
            Some(Value::String(x)) if x == "free" => {}
            Some(Value::Number(n)) => {
                let mut n = n.as_u64().ok_or("order not an integer")?;
                while n % 3 == 0 && n > 1 {
                    n /= 3;
                }
                if n != 1 {
                    return Err(format!("order {s} is not a power of 3"));
                }
            }
            other => return Err(format!("bad order {other:?}")),
        }
    }
    obj.get("relations").and_then(Value::as_array).ok_or("relations missing")?;
    match obj.get("provenance").and_then(Value::as_str) {
        Some("direct" | "filtration" | "theorem") => Ok(()),
        p => Err(format!("bad provenance {p:?}")),
    }
}

#[test]
fn e2_json_follows_the_page_schema() {
    let (code, out, err) = q2bkss(&["e2", "--t-min", "-8", "--t-max", "8", "--trunc", "8", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    for page in ["direct", "filtration"] {
        let entries = v[page]["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 3 * 17);
        for e in entries {
            check_entry(e).unwrap_or_else(|m| panic!("{page}: {m} in {e}"));
        }
        let unit = entries.iter().find(|e| e["s"] == 0 && e["t"] == 0).unwrap();
        assert_eq!(unit["summands"], serde_json::json!([{"order": "free", "label": "C_0^0"}]));
    }
    assert_eq!(v["crossCheck"]["checks"].as_array().unwrap().len(), 3 * 17);
}

#[test]
fn chart_is_well_formed_svg() {
    let (code, out, _) = q2bkss(&["chart", "--t-min", "-4", "--t-max", "12", "--trunc", "8", "--format", "svg"]);
    assert_eq!(code, 0);
    let doc = roxmltree::Document::parse(&out).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let classes: Vec<&str> = root.descendants().filter_map(|n| n.attribute("class")).collect();
    for c in ["free", "z3", "z3k", "d2"] {
        assert!(classes.contains(&c), "no {c} glyph");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["e2", "--t-min", "-10", "--t-max", "10", "--trunc", "8", "--format", "json"];
    assert_eq!(q2bkss(&args).1, q2bkss(&args).1);
    let svg = ["e2", "--t-min", "-10", "--t-max", "10", "--trunc", "8", "--format", "svg"];
    assert_eq!(q2bkss(&svg).1, q2bkss(&svg).1);
}

#[test]
fn exit_codes() {
    assert_eq!(q2bkss(&["e2", "--t-min", "5", "--t-max", "4"]).0, EXIT_USAGE);
    assert_eq!(q2bkss(&["resolve-u", "--m", "14"]).0, EXIT_USAGE);
    assert_eq!(q2bkss(&["delta", "--eps", "2", "--m", "1"]).0, EXIT_USAGE);
    assert_eq!(q2bkss(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(q2bkss(&["--help"]).0, 0);
    assert_eq!(exit_code(&Error::NonStabilized { v: 8, v_next: 12, context: String::new() }), EXIT_UNSTABLE);
    assert_eq!(exit_code(&Error::Mismatch(String::new())), EXIT_FAIL);
}

#[test]
fn truncation_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_q2bkss"))
        .args(["resolve-u", "--m", "13", "--format", "json"])
        .env("Q2BKSS_TRUNC", "10")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trunc"], 10);
    assert_eq!(v["certificate"]["trunc_next"], 14);
}

#[test]
fn verify_reports_each_check() {
    let (code, out, _) = q2bkss(&["verify", "--suite", "tmf", "--trunc", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true && c["suite"] == "tmf"));
}

#[test]
fn delta_views() {
    let (code, out, _) = q2bkss(&["delta", "--eps", "1", "--m", "13", "--show", "kernel", "--trunc", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("ker delta1 = K'' + U^54"), "{out}");
    let (code, out, _) = q2bkss(&["delta", "--eps", "0", "--m", "-2", "--show", "case", "--trunc", "8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Case 1 at (eps=0, m=-2)"), "{out}");
}
