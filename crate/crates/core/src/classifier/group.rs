use super::investigation::Investigation;
use super::{AnalysisParams, Classification, Level};
use crate::diagnostic::{codes, Diagnostic};
use crate::model::{Conditionality, ServiceModel};

/// Checks a declared group scheme against the classification obtained
/// without it. Returns nothing when the model declares no scheme.
pub fn validate_group_scheme(
    model: &ServiceModel,
    params: &AnalysisParams,
    classification: &Classification,
) -> Vec<Diagnostic> {
    let Some(scheme) = &model.group_scheme else {
        return Vec::new();
    };
    let mut found = Vec::new();
    let declared = [
        (scheme.operates_on_groups, "operates_on_groups"),
        (scheme.group_authentication, "group_authentication"),
        (scheme.acts_on_behalf, "acts_on_behalf"),
    ];
    for (_, name) in declared.iter().filter(|(holds, _)| !holds) {
        found.push(Diagnostic::error(
            codes::GS_CONDITION_FALSE,
            format!("group scheme condition '{name}' is false"),
        ));
    }
    let unconditional = [
        (classification.recognisability.conditionality, "recognisability"),
        (classification.linkability.conditionality, "linkability"),
    ];
    let unconditional: Vec<&str> = unconditional
        .iter()
        .filter(|(c, _)| *c == Conditionality::Unconditional)
        .map(|(_, name)| *name)
        .collect();
    if !unconditional.is_empty() {
        found.push(Diagnostic::error(
            codes::GS_UNCONDITIONAL,
            format!("group scheme admits unconditional {}", unconditional.join(" and ")),
        ));
    }
    if classification.level < Level::Revocable {
        found.push(Diagnostic::error(
            codes::GS_LOW_LEVEL,
            format!("group scheme yields {}, below revocable anonymity", classification.level),
        ));
    }
    match &scheme.manager {
        Some(manager) => {
            let managers = Investigation::new(model, params).identity_managers();
            if !managers.contains(manager) {
                found.push(Diagnostic::warning(
                    codes::GS_MANAGER_MISMATCH,
                    format!("declared group manager '{manager}' does not act as identity manager"),
                ));
            }
        }
        None if classification.level == Level::Revocable => found.push(Diagnostic::error(
            codes::GS_NO_MANAGER,
            "revocable group scheme declares no group manager",
        )),
        None => {}
    }
    found
}
