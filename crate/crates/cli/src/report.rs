//! Reports with a JSON rendering and a plain-text rendering.
//!
//! JSON schema: a top-level object with keys `input`, `ramification`, `classification`,
//! `splitting`, `verification` and `warnings`. The middle four are present only when the command
//! produced them; `warnings` is always an array of strings. Failures render as
//! `{"error": {"kind", "message", "exit_code"}}`.

use serde::Serialize;
use serde_json::{json, Value};

use tricover::classify::{geometry_notes, ClassificationEntry};

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ramification: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Value>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(input: Value) -> Self {
        Report {
            input,
            ..Report::default()
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = self.text.join("\n");
        for w in &self.warnings {
            out += &format!("\nwarning: {w}");
        }
        out.push('\n');
        out
    }
}

pub fn error_json(kind: &str, message: &str, exit_code: i32) -> String {
    let v = json!({"error": {"kind": kind, "message": message, "exit_code": exit_code}});
    serde_json::to_string_pretty(&v).expect("error serializes") + "\n"
}

/// JSON for a classification row, shared by `classify` and `analyze`.
pub fn classification_json(entry: &ClassificationEntry) -> Value {
    let geometry: Vec<Value> = entry
        .classes
        .iter()
        .filter_map(|c| {
            geometry_notes(entry.two_k, &c.bundle())
                .ok()
                .flatten()
                .map(|n| json!({"bundle": c.to_string(), "surface": n.surface, "map": n.map}))
        })
        .collect();
    let eliminations: Vec<Value> = entry
        .verdict
        .eliminations
        .iter()
        .map(|e| {
            let p = e.profile;
            json!({
                "m": p.m,
                "degrees": {"a": p.deg_a, "b": p.deg_b, "c": p.deg_c, "d": p.deg_d},
                "eliminated": e.eliminated(),
                "reasons": e.reasons.iter().map(|r| json!({"label": r.label(), "detail": r.to_string()})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "degree": entry.two_k,
        "status": entry.status.to_string(),
        "candidates": entry.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "c1": -entry.two_k / 2,
        "table_agrees": entry.table_agrees,
        "cubic_sections": entry.cubic_sections.iter().map(|(c, d)| json!({"bundle": c.to_string(), "line_bundle_degree": d})).collect::<Vec<_>>(),
        "m_bound": entry.verdict.m_bound,
        "eliminations": eliminations,
        "geometry": geometry,
    })
}

pub fn classification_text(entry: &ClassificationEntry, r: &mut Report) {
    r.line(format!("branch degree {}: {}", entry.two_k, entry.status));
    let names: Vec<String> = entry.classes.iter().map(|c| c.to_string()).collect();
    r.line(format!("  candidates: {}", names.join(", ")));
    match entry.table_agrees {
        Some(true) => r.line("  enumeration agrees with the known table"),
        Some(false) => r.line("  enumeration DISAGREES with the known table"),
        None => r.line("  no table row for this degree"),
    }
    for (c, d) in &entry.cubic_sections {
        r.line(format!("  cubic section: {c} is L^-1 + L^-2 with deg L = {d}"));
    }
    for e in &entry.verdict.eliminations {
        let p = e.profile;
        let reasons: Vec<String> = e.reasons.iter().map(|r| r.to_string()).collect();
        r.line(format!(
            "  jump m = {}: deg (a~, b~, c~, d~) = ({}, {}, {}, {}); {}",
            p.m,
            p.deg_a,
            p.deg_b,
            p.deg_c,
            p.deg_d,
            reasons.join("; ")
        ));
    }
    for c in &entry.classes {
        if let Ok(Some(n)) = geometry_notes(entry.two_k, &c.bundle()) {
            match n.map {
                Some(m) => r.line(format!("  {c}: {}; {m}", n.surface)),
                None => r.line(format!("  {c}: {}", n.surface)),
            }
        }
    }
}
