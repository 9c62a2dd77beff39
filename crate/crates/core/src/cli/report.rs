use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::constraints::ConstraintReport;

/// One JSON object per output line. Field order is fixed by declaration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub command: &'static str,
    pub family: String,
    pub label: String,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
    pub pass: Option<bool>,
    pub tolerance: f64,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportLine {
    pub fn new(command: &'static str, family: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            command,
            family: family.into(),
            label: label.into(),
            value: 0.0,
            threshold: 0.0,
            margin: 0.0,
            pass: None,
            tolerance: 0.0,
            elapsed_ms: 0.0,
            c_t: None,
            verdict: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Lines for every entry; the first carries the report notes, if any.
pub fn lines_from_report(command: &'static str, report: &ConstraintReport, elapsed: f64) -> Vec<ReportLine> {
    let notes = (!report.notes.is_empty()).then(|| report.notes.join("; "));
    let mut out: Vec<ReportLine> = report
        .entries
        .iter()
        .map(|e| ReportLine {
            value: e.value,
            threshold: e.threshold,
            margin: e.margin,
            pass: e.pass,
            tolerance: report.tolerance,
            elapsed_ms: elapsed,
            note: (!e.theorem).then(|| "non-theorem".to_string()),
            ..ReportLine::new(command, report.family.name(), e.label.render(report.parties))
        })
        .collect();
    match (out.first_mut(), notes) {
        (Some(first), Some(n)) => {
            first.note = Some(match first.note.take() {
                Some(prev) => format!("{prev}; {n}"),
                None => n,
            })
        }
        (None, Some(n)) => out.push(
            ReportLine {
                tolerance: report.tolerance,
                elapsed_ms: elapsed,
                ..ReportLine::new(command, report.family.name(), "-")
            }
            .with_note(n),
        ),
        _ => {}
    }
    out
}

pub fn emit(out: &mut dyn Write, line: &ReportLine) -> std::io::Result<()> {
    let text = serde_json::to_string(line).expect("report lines always serialize");
    writeln!(out, "{text}")
}
