//! Derived security properties and the implication chain linking them.
//!
//! Observable PII makes individuals recognisable; traceable IOIs link
//! individuals to IOIs; that linkage in turn makes individuals accountable.
//! [`apply_implications`] checks a derived record against that chain. The
//! classifier never produces a violating record, so any finding here points at
//! an engine bug.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{codes, Diagnostic};

/// How far a property may be violated.
///
/// `Unconditional`: it holds for distrusted entities without proviso.
/// `Conditional`: only trusted parties, or a triggering event, can bring it about.
/// `Void`: it does not hold at all. `Undecided` is reserved for level-4
/// linkability in the class tables and is never derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditionality {
    Unconditional,
    Conditional,
    Void,
    Undecided,
}

impl fmt::Display for Conditionality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conditionality::Unconditional => "unconditional",
            Conditionality::Conditional => "conditional",
            Conditionality::Void => "void",
            Conditionality::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecognitionSource {
    /// Learned from data exchanged in the system.
    Identifiability,
    /// Learned from the communication context.
    Traceability,
}

impl fmt::Display for RecognitionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecognitionSource::Identifiability => "identifiability",
            RecognitionSource::Traceability => "traceability",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Recognisability {
    pub conditionality: Conditionality,
    pub sources: BTreeSet<RecognitionSource>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Linkability {
    pub conditionality: Conditionality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Accountability {
    Direct,
    Indirect,
    Void,
}

impl fmt::Display for Accountability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Accountability::Direct => "direct",
            Accountability::Indirect => "indirect",
            Accountability::Void => "void",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedProperties {
    pub recognisability: Recognisability,
    pub linkability: Linkability,
    pub accountability: Accountability,
}

pub fn apply_implications(derived: &DerivedProperties) -> Vec<Diagnostic> {
    let mut found = Vec::new();
    let recog = &derived.recognisability;
    let linkability = derived.linkability.conditionality;
    // IOIs count as traceable to individuals whenever they remain linkable at all.
    let iois_traceable = linkability != Conditionality::Void;

    if recog.conditionality == Conditionality::Unconditional && linkability == Conditionality::Void {
        found.push(Diagnostic::error(
            codes::IMP_UNCONDITIONAL_UNLINKABLE,
            "unconditional recognisability with void linkability",
        ));
    }
    if recog.conditionality != Conditionality::Void && derived.accountability == Accountability::Void {
        found.push(Diagnostic::error(
            codes::IMP_RECOGNISABLE_UNACCOUNTABLE,
            format!("{} recognisability with void accountability", recog.conditionality),
        ));
    }
    if recog.sources.contains(&RecognitionSource::Identifiability) && !iois_traceable {
        found.push(Diagnostic::error(
            codes::IMP_IDENTIFIABLE_UNTRACEABLE,
            "identifiability is a recognisability source but IOIs are not traceable",
        ));
    }
    let void = recog.conditionality == Conditionality::Void;
    if recog.conditionality == Conditionality::Undecided || void != recog.sources.is_empty() {
        found.push(Diagnostic::error(
            codes::IMP_SOURCES,
            format!(
                "recognisability {} inconsistent with {} source(s)",
                recog.conditionality,
                recog.sources.len()
            ),
        ));
    }
    found
}
