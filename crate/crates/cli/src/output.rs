//! JSON and table renderings of a run.

use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::run::{RunOutcome, Status, SuiteOutcome};

pub const SCHEMA: &str = "twistvo.verify/1";

fn suite_json(s: &SuiteOutcome, timing: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), json!(s.suite.name()));
    obj.insert("status".into(), json!(s.status.name()));
    obj.insert("checks".into(), json!(s.checks()));
    obj.insert("failed".into(), json!(s.failures()));
    let parts: Vec<Value> = s
        .parts
        .iter()
        .map(|p| {
            json!({
                "name": p.name,
                "checks": p.checks,
                "failed": p.failures,
                "status": if p.passed() { "pass" } else { "fail" },
                "notes": p.notes,
            })
        })
        .collect();
    obj.insert("parts".into(), Value::Array(parts));
    let first = s.first_failure().map(|(part, m)| {
        json!({
            "part": part,
            "context": m.context,
            "location": m.location,
            "lhs": m.lhs,
            "rhs": m.rhs,
        })
    });
    obj.insert("first_failure".into(), first.unwrap_or(Value::Null));
    let notes: Vec<&str> = s.reason.iter().map(String::as_str).collect();
    obj.insert("notes".into(), json!(notes));
    if timing {
        obj.insert("wall_clock_ms".into(), json!(s.wall_clock_ms as u64));
    }
    Value::Object(obj)
}

/// The report as a JSON value. Maps are ordered by key, so serialization is
/// deterministic apart from the wall-clock fields.
pub fn report_json(cfg: &RunConfig, out: &RunOutcome) -> Value {
    json!({
        "schema": SCHEMA,
        "config": cfg.echo(),
        "status": if out.passed() { "pass" } else { "fail" },
        "suites": out.suites.iter().map(|s| suite_json(s, cfg.timing)).collect::<Vec<_>>(),
    })
}

pub fn render_json(cfg: &RunConfig, out: &RunOutcome) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(cfg, out)).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_table(cfg: &RunConfig, out: &RunOutcome) -> String {
    let mut rows = vec![[
        "suite".to_string(),
        "checks".into(),
        "failed".into(),
        "status".into(),
        "ms".into(),
    ]];
    for s in &out.suites {
        rows.push([
            s.suite.name().into(),
            s.checks().to_string(),
            s.failures().to_string(),
            s.status.name().into(),
            if cfg.timing {
                s.wall_clock_ms.to_string()
            } else {
                "-".into()
            },
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut text = String::new();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{:<w$}", cell, w = w))
            .collect();
        text.push_str(line.join("  ").trim_end());
        text.push('\n');
    }
    for s in &out.suites {
        if let Some((part, m)) = s.first_failure() {
            text.push_str(&format!(
                "{}: first failure in {}: {}\n",
                s.suite.name(),
                part,
                m
            ));
        }
        if let (Some(why), Status::Skipped | Status::Error) = (&s.reason, s.status) {
            text.push_str(&format!("{}: {}\n", s.suite.name(), why));
        }
    }
    text.push_str(if out.passed() {
        "overall: pass\n"
    } else {
        "overall: fail\n"
    });
    text
}
