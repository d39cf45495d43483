//! JSON and text renderings of classification results.
//!
//! JSON output is deterministic: keys are sorted, lines end in LF, and nothing
//! depends on time or on where the input file lives.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classifier::{AnalysisParams, Classification, Level, SweepEntry, TaxonomyMap, Variant};
use crate::diagnostic::Diagnostic;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub observee: String,
    pub trusted: Vec<String>,
}

impl From<&AnalysisParams> for ReportParams {
    fn from(params: &AnalysisParams) -> Self {
        ReportParams {
            observee: params.observee().to_owned(),
            trusted: params.trusted().iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub model: String,
    pub params: Option<ReportParams>,
    pub classification: Option<Classification>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn new(model: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_owned(),
            model: model.into(),
            params: None,
            classification: None,
            diagnostics: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub optional_trusted: Vec<String>,
    pub params: ReportParams,
    pub classification: Option<Classification>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: String,
    pub model: String,
    pub observee: String,
    pub optional: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn new(model: impl Into<String>, observee: &str, optional: Vec<String>, entries: &[SweepEntry]) -> Self {
        let rows = entries
            .iter()
            .map(|entry| {
                let (classification, diagnostics) = match &entry.outcome {
                    Ok(c) => (Some(c.clone()), Vec::new()),
                    Err(errors) => (None, errors.clone()),
                };
                SweepRow {
                    optional_trusted: entry.optional_trusted.clone(),
                    params: ReportParams::from(&entry.params),
                    classification,
                    diagnostics,
                }
            })
            .collect();
        SweepReport {
            schema_version: SCHEMA_VERSION.to_owned(),
            model: model.into(),
            observee: observee.to_owned(),
            optional,
            rows,
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    // Going through `Value` sorts every object's keys.
    let value = serde_json::to_value(value).expect("report types serialize infallibly");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize infallibly");
    text.push('\n');
    text
}

fn list_or_dash<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> String {
    let items: Vec<String> = items.into_iter().map(|s| s.as_ref().to_owned()).collect();
    if items.is_empty() {
        "-".to_owned()
    } else {
        items.join(", ")
    }
}

fn row(out: &mut String, label: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{label:<30}{value}");
}

pub fn taxonomy_rows(out: &mut String, map: &TaxonomyMap) {
    let cell = |c: &Option<crate::classifier::Correspondence>| c.as_ref().map_or("X".to_owned(), |c| c.to_string());
    row(out, "FLINN AND MAURER", cell(&map.flinn_maurer));
    row(out, "KOHNTOPP AND PFITZMANN", cell(&map.kohntopp_pfitzmann));
    row(out, "SEYS ET AL.", cell(&map.seys));
}

/// Human-readable report. Labels follow the column names of the class tables.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    row(&mut out, "SERVICE", &report.model);
    if let Some(params) = &report.params {
        row(&mut out, "OBSERVEE", &params.observee);
        row(&mut out, "TRUSTED SET", list_or_dash(&params.trusted));
    }
    if let Some(c) = &report.classification {
        row(&mut out, "LEVEL", format!("{} {}", c.level.degree(), c.level.abbr()));
        row(&mut out, "TYPE OF ANONYMITY", describe_type(c.level, c.variant));
        row(&mut out, "SCOPE OF TRUST", list_or_dash(&c.scope.members));
        row(&mut out, "RECOGNISABILITY TYPE", c.recognisability.conditionality);
        let sources: Vec<String> = c.recognisability.sources.iter().map(|s| s.to_string()).collect();
        let sources = if sources.is_empty() { "none".to_owned() } else { sources.join(", ") };
        row(&mut out, "RECOGNISABILITY SOURCE", sources);
        row(&mut out, "TYPE OF LINKABILITY", c.linkability.conditionality);
        row(&mut out, "TYPE OF LEGAL ACCOUNTABILITY", c.accountability);
        let publicity = match (c.publicity.satisfied, c.publicity.exception) {
            (true, true) => "satisfied (revocable exception)",
            (true, false) => "satisfied",
            (false, _) => "violated",
        };
        row(&mut out, "PUBLICITY CONSTRAINT", publicity);
        row(&mut out, "GROUP ANONYMITY", if c.group_anonymity { "yes" } else { "no" });
        taxonomy_rows(&mut out, &c.correspondences);
        for warning in &c.warnings {
            let _ = writeln!(out, "{warning}");
        }
    }
    for diagnostic in &report.diagnostics {
        let _ = writeln!(out, "{diagnostic}");
    }
    out
}

pub fn describe_type(level: Level, variant: Variant) -> String {
    match variant {
        Variant::None => format!("{} anonymity", level.name()),
        _ => format!("{variant} {} anonymity", level.name()),
    }
}

/// One row per trusted set: the optional participants trusted, then the result.
pub fn render_sweep_text(report: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "SERVICE {}  OBSERVEE {}", report.model, report.observee);
    let width = report
        .rows
        .iter()
        .map(|r| list_or_dash(&r.optional_trusted).len())
        .max()
        .unwrap_or(1)
        .max("TRUSTED".len());
    let _ = writeln!(out, "{:<width$}  DEG.  ABBR.  VARIANT", "TRUSTED");
    for r in &report.rows {
        let trusted = list_or_dash(&r.optional_trusted);
        match &r.classification {
            Some(c) => {
                let _ = writeln!(
                    out,
                    "{trusted:<width$}  {:<4}  {:<5}  {}",
                    c.level.degree(),
                    c.level.abbr(),
                    c.variant
                );
            }
            None => {
                let codes: Vec<&str> = r.diagnostics.iter().map(|d| d.code.as_str()).collect();
                let _ = writeln!(out, "{trusted:<width$}  error: {}", codes.join(", "));
            }
        }
    }
    out
}
