use super::{classify, AnalysisParams, Classification};
use crate::diagnostic::{codes, Diagnostic};
use crate::model::{EntityKind, ServiceModel};

/// Largest number of optionally trusted participants a sweep accepts.
pub const MAX_OPTIONAL: usize = 20;

#[derive(Debug, Clone)]
pub struct SweepEntry {
    /// The optional participants trusted in this entry, sorted.
    pub optional_trusted: Vec<String>,
    pub params: AnalysisParams,
    pub outcome: Result<Classification, Vec<Diagnostic>>,
}

/// Participants other than the observee, sorted. TTPs are always trusted
/// and DTPs never, so these are the only free choices.
pub fn optional_participants(model: &ServiceModel, observee: &str) -> Vec<String> {
    let mut names: Vec<String> = model
        .declared_entities()
        .filter(|e| e.kind == EntityKind::Participant && e.name != observee)
        .map(|e| e.name.clone())
        .collect();
    names.sort();
    names
}

/// Classifies the model under every subset of optional participants, ordered
/// by subset size and then lexicographically.
pub fn sweep(model: &ServiceModel, observee: &str) -> Result<Vec<SweepEntry>, Diagnostic> {
    AnalysisParams::with_default_trust(model, observee)?;
    let optional = optional_participants(model, observee);
    if optional.len() > MAX_OPTIONAL {
        return Err(Diagnostic::error(
            codes::CLS_SWEEP_TOO_LARGE,
            format!(
                "{} optional participants exceed the sweep limit of {MAX_OPTIONAL}",
                optional.len()
            ),
        ));
    }
    let mut subsets: Vec<Vec<String>> = (0u32..1 << optional.len())
        .map(|mask| {
            optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, name)| name.clone())
                .collect()
        })
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|subset| {
            let params = AnalysisParams::new(model, observee, &subset)?;
            let outcome = classify(model, &params);
            Ok(SweepEntry {
                optional_trusted: subset,
                params,
                outcome,
            })
        })
        .collect()
}
