//! Places a service in the lowest anonymity level whose condition it meets.
//!
//! An investigation fixes an observee (a role of the service) and a trusted
//! set. The scope of trust collects the entities the observee is subject to
//! during ordinary operation. Each level's condition reads the model from the
//! observee's side; the first one satisfied, from void anonymity upwards,
//! becomes the classification.

mod derive;
mod group;
mod investigation;
mod invariants;
mod level;
mod params;
mod publicity;
mod sweep;
mod taxonomy;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{codes, has_errors, Diagnostic};
use crate::model::{validate_model, Accountability, Conditionality, Linkability, Recognisability, ServiceModel};

pub use derive::{derive_accountability, derive_linkability, derive_recognisability};
pub use group::validate_group_scheme;
pub use invariants::{allowed_accountability, allowed_linkability, self_check};
pub use level::{Level, ParseLevelError, Variant};
pub use params::AnalysisParams;
pub use publicity::{check_publicity, Publicity};
pub use sweep::{optional_participants, sweep, SweepEntry, MAX_OPTIONAL};
pub use taxonomy::{map_taxonomies, Correspondence, TaxonomyMap};

use investigation::Investigation;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScopeOfTrust {
    pub members: BTreeSet<String>,
}

impl ScopeOfTrust {
    pub fn contains(&self, name: &str) -> bool {
        self.members.contains(name)
    }
}

impl fmt::Display for ScopeOfTrust {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub level: Level,
    pub variant: Variant,
    #[serde(rename = "scope_of_trust")]
    pub scope: ScopeOfTrust,
    pub recognisability: Recognisability,
    pub linkability: Linkability,
    pub accountability: Accountability,
    pub publicity: Publicity,
    pub group_anonymity: bool,
    pub correspondences: TaxonomyMap,
    pub warnings: Vec<Diagnostic>,
}

impl Classification {
    pub fn publicity_constraint_satisfied(&self) -> bool {
        self.publicity.satisfied
    }

    pub fn publicity_exception_applied(&self) -> bool {
        self.publicity.exception
    }
}

pub fn scope_of_trust(model: &ServiceModel, params: &AnalysisParams) -> ScopeOfTrust {
    Investigation::new(model, params).scope()
}

/// Whether the defining condition of `level` holds, regardless of lower levels.
/// Level 4 holds when no resolvable observee PII is ever observable to others.
pub fn level_predicate(level: Level, model: &ServiceModel, params: &AnalysisParams) -> bool {
    Investigation::new(model, params).holds(level)
}

/// Linkable iff distrusted entities can link unconditionally.
fn variant_for(level: Level, linkability: Linkability) -> Variant {
    if !level.has_variants() {
        Variant::None
    } else if linkability.conditionality == Conditionality::Unconditional {
        Variant::Linkable
    } else {
        Variant::Unlinkable
    }
}

/// Classifies the model without looking at its group scheme.
fn classify_facts(model: &ServiceModel, params: &AnalysisParams) -> Classification {
    let inv = Investigation::new(model, params);
    let level = inv.level();
    let scope = inv.scope();
    let linkability = derive_linkability(model, params, level);
    let variant = variant_for(level, linkability);
    let correspondences = map_taxonomies(level, variant).expect("variant is derived to fit the level");
    Classification {
        level,
        variant,
        publicity: check_publicity(&scope, params, model),
        scope,
        recognisability: derive_recognisability(model, params, level),
        linkability,
        accountability: derive_accountability(model, params, level),
        group_anonymity: false,
        correspondences,
        warnings: Vec::new(),
    }
}

/// Classifies a well-formed model.
///
/// Fails with the model's validation errors plus `CLS-008` if it is not
/// well-formed, and with the group-scheme errors plus `CLS-002` (and `CLS-001`
/// below revocable anonymity) if a declared group scheme does not hold.
pub fn classify(model: &ServiceModel, params: &AnalysisParams) -> Result<Classification, Vec<Diagnostic>> {
    let problems = validate_model(model);
    if has_errors(&problems) {
        let mut errors: Vec<Diagnostic> = problems.into_iter().filter(Diagnostic::is_error).collect();
        errors.push(Diagnostic::error(codes::CLS_MODEL_INVALID, "model is not well-formed"));
        return Err(errors);
    }
    let mut classification = classify_facts(model, params);
    if model.group_scheme.is_none() {
        return Ok(classification);
    }
    let findings = validate_group_scheme(model, params, &classification);
    if has_errors(&findings) {
        let mut errors = findings;
        if classification.level < Level::Revocable {
            errors.push(Diagnostic::error(
                codes::CLS_GROUP_LOW_LEVEL,
                format!("group scheme declared but the service only reaches {}", classification.level),
            ));
        }
        errors.push(Diagnostic::error(codes::CLS_GROUP_INVALID, "group scheme validation failed"));
        return Err(errors);
    }
    classification.group_anonymity = true;
    classification.warnings = findings;
    Ok(classification)
}
