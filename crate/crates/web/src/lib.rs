//! Browser bindings for the classifier.
//!
//! Every export takes plain strings and returns a JSON document, so the page
//! needs no generated type glue. Failures come back as JSON too, with the
//! diagnostics that explain them.

use anonlevel::classifier::{self, map_taxonomies, AnalysisParams, Level, Variant};
use anonlevel::corpus;
use anonlevel::diagnostic::Diagnostic;
use anonlevel::dsl;
use anonlevel::model::ServiceModel;
use anonlevel::report::{self, Report, ReportParams, SweepReport};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn failure(diagnostics: Vec<Diagnostic>) -> String {
    report::to_json(&json!({ "diagnostics": diagnostics }))
}

fn load(text: &str) -> Result<ServiceModel, Vec<Diagnostic>> {
    dsl::parse(text).into_result()
}

/// An empty observee means the model's only role.
fn pick_observee<'a>(model: &'a ServiceModel, requested: &'a str) -> Result<&'a str, Vec<Diagnostic>> {
    if requested.trim().is_empty() {
        AnalysisParams::sole_role(model).map_err(|d| vec![d])
    } else {
        Ok(requested.trim())
    }
}

/// Bundled example models with their documented parameters.
#[wasm_bindgen]
pub fn corpus_entries() -> String {
    let entries: Vec<_> = corpus::ENTRIES
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "text": e.text,
                "observee": e.observee,
                "trusted": e.trusted,
                "level": e.level,
                "variant": e.variant,
            })
        })
        .collect();
    report::to_json(&entries)
}

/// Classifies `text` for `observee`, trusting the comma-separated `trusted`
/// participants on top of the observee and the TTPs.
#[wasm_bindgen]
pub fn classify(text: &str, observee: &str, trusted: &str) -> String {
    let run = || -> Result<String, Vec<Diagnostic>> {
        let model = load(text)?;
        let observee = pick_observee(&model, observee)?;
        let extra = trusted.split(',').map(str::trim).filter(|s| !s.is_empty());
        let params = AnalysisParams::new(&model, observee, extra).map_err(|d| vec![d])?;
        let classification = classifier::classify(&model, &params)?;
        let report = Report {
            params: Some(ReportParams::from(&params)),
            classification: Some(classification),
            ..Report::new(&model.name)
        };
        Ok(report::to_json(&report))
    };
    run().unwrap_or_else(failure)
}

/// Classifies `text` under every choice of trusted participants.
#[wasm_bindgen]
pub fn sweep(text: &str, observee: &str) -> String {
    let run = || -> Result<String, Vec<Diagnostic>> {
        let model = load(text)?;
        let observee = pick_observee(&model, observee)?;
        let entries = classifier::sweep(&model, observee).map_err(|d| vec![d])?;
        let optional = classifier::optional_participants(&model, observee);
        Ok(report::to_json(&SweepReport::new(&model.name, observee, optional, &entries)))
    };
    run().unwrap_or_else(failure)
}

/// Taxonomy correspondences for a level (`0`-`4` or `VA`..`UA`) and a variant
/// (`linkable`, `unlinkable` or `none`).
#[wasm_bindgen]
pub fn map(level: &str, variant: &str) -> String {
    let run = || -> Result<String, Vec<Diagnostic>> {
        let bad_input = |message: String| vec![Diagnostic::error(anonlevel::diagnostic::codes::CLS_BAD_VARIANT, message)];
        let level: Level = level.parse().map_err(|e: classifier::ParseLevelError| bad_input(e.to_string()))?;
        let variant: Variant = variant.parse().map_err(bad_input)?;
        let map = map_taxonomies(level, variant).map_err(|d| vec![d])?;
        Ok(report::to_json(&json!({ "level": level, "variant": variant, "correspondences": map })))
    };
    run().unwrap_or_else(failure)
}
