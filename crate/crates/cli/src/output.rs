//! Rendering: JSON documents, CSV rows and plain tables.

use std::time::Duration;

use coset_fusion::{CheckReport, CosetSector, Rational64, Weight};
use serde_json::{json, Map, Value};

/// A real as a decimal string with 12 significant digits.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

pub fn rational(r: Rational64) -> String {
    r.to_string()
}

pub fn weight(w: &Weight) -> Value {
    json!(w.labels())
}

pub fn sector(s: &CosetSector) -> Value {
    json!({
        "prime": weight(&s.prime),
        "double_prime": weight(&s.double_prime),
        "diagonal": weight(&s.diagonal),
    })
}

/// One named check: pass/fail, worst residual, bounded counterexamples and
/// wall-clock runtime.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub checked: u64,
    pub violations: u64,
    pub worst_residual: f64,
    pub counterexamples: Vec<String>,
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn from_check<T>(
        check: impl Into<String>,
        report: &CheckReport<T>,
        show: impl Fn(&T) -> String,
    ) -> Self {
        Self {
            check: check.into(),
            passed: report.passed(),
            checked: report.checked,
            violations: report.violations,
            worst_residual: report.worst_residual,
            counterexamples: report.counterexamples.iter().map(show).collect(),
            runtime: Duration::ZERO,
        }
    }

    /// A single yes/no check; `failure` is the counterexample on failure.
    pub fn boolean(check: impl Into<String>, ok: bool, failure: impl FnOnce() -> String) -> Self {
        Self {
            check: check.into(),
            passed: ok,
            checked: 1,
            violations: u64::from(!ok),
            worst_residual: 0.0,
            counterexamples: if ok { Vec::new() } else { vec![failure()] },
            runtime: Duration::ZERO,
        }
    }

    /// A single residual against a tolerance.
    pub fn residual(
        check: impl Into<String>,
        value: f64,
        tolerance: f64,
        item: impl FnOnce() -> String,
    ) -> Self {
        let ok = value < tolerance;
        Self {
            worst_residual: value,
            ..Self::boolean(check, ok, || {
                format!("{}: residual {}", item(), real(value))
            })
        }
    }

    pub fn timed(mut self, runtime: Duration) -> Self {
        self.runtime = runtime;
        self
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("passed".into(), json!(self.passed));
        m.insert("checked".into(), json!(self.checked));
        m.insert("violations".into(), json!(self.violations));
        m.insert("worst_residual".into(), json!(real(self.worst_residual)));
        m.insert("counterexamples".into(), json!(self.counterexamples));
        if timings {
            m.insert(
                "runtime_ms".into(),
                json!(real(self.runtime.as_secs_f64() * 1e3)),
            );
        }
        Value::Object(m)
    }
}

/// What a command produced, before rendering.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub result: Value,
    pub reports: Vec<VerificationReport>,
    /// Human-readable lines for `table` output.
    pub lines: Vec<String>,
    /// Header plus rows for `csv` output; reports are used when absent.
    pub rows: Option<Vec<Vec<String>>>,
    /// Messages for stderr.
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

pub fn document(command: &str, config: Value, outcome: &Outcome, timings: bool) -> Value {
    json!({
        "command": command,
        "config": config,
        "result": outcome.result,
        "reports": outcome.reports.iter().map(|r| r.to_json(timings)).collect::<Vec<_>>(),
    })
}

pub fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
    s.push('\n');
    s
}

pub fn render_csv(outcome: &Outcome) -> String {
    let rows = outcome.rows.clone().unwrap_or_else(|| {
        let mut rows = vec![vec![
            "check".to_string(),
            "passed".into(),
            "checked".into(),
            "violations".into(),
            "worst_residual".into(),
        ]];
        for r in &outcome.reports {
            rows.push(vec![
                r.check.clone(),
                r.passed.to_string(),
                r.checked.to_string(),
                r.violations.to_string(),
                real(r.worst_residual),
            ]);
        }
        rows
    });
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn render_table(outcome: &Outcome, timings: bool) -> String {
    let mut out = String::new();
    for line in &outcome.lines {
        out.push_str(line);
        out.push('\n');
    }
    for r in &outcome.reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "[{status}] {} ({} checked, {} violations, worst residual {})",
            r.check,
            r.checked,
            r.violations,
            real(r.worst_residual)
        ));
        if timings {
            out.push_str(&format!(" in {} ms", real(r.runtime.as_secs_f64() * 1e3)));
        }
        out.push('\n');
        for c in &r.counterexamples {
            out.push_str(&format!("    {c}\n"));
        }
    }
    out
}
