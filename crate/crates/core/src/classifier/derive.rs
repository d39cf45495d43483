//! Recognisability, linkability and accountability of the observee.

use std::collections::BTreeSet;

use super::investigation::{is_public, Fact, Investigation};
use super::{AnalysisParams, Level};
use crate::model::{
    Accountability, Channel, Conditionality, Linkability, Persistence, Recognisability, RecognitionSource,
    Resolvability, ServiceModel,
};

pub fn derive_recognisability(model: &ServiceModel, params: &AnalysisParams, level: Level) -> Recognisability {
    let inv = Investigation::new(model, params);
    let conditionality = match level {
        Level::Void | Level::Apparent => Conditionality::Unconditional,
        Level::Revocable | Level::Forfeitable => Conditionality::Conditional,
        Level::Unconditional => Conditionality::Void,
    };
    let sources: BTreeSet<RecognitionSource> = if level == Level::Unconditional {
        BTreeSet::new()
    } else {
        inv.witnesses(level)
            .iter()
            .map(|f| match f.via() {
                Channel::Data => RecognitionSource::Identifiability,
                Channel::Context => RecognitionSource::Traceability,
            })
            .collect()
    };
    Recognisability {
        conditionality,
        sources,
    }
}

/// Linkability is unconditional at levels 0 and 1, and wherever a persistent
/// observee PII value reaches a distrusted entity during ordinary operation.
/// Otherwise the conditionality follows from recognisability.
pub fn derive_linkability(model: &ServiceModel, params: &AnalysisParams, level: Level) -> Linkability {
    let inv = Investigation::new(model, params);
    let persistent_handle = inv
        .ordinary()
        .any(|(e, p)| p.persistence == Persistence::Persistent && !inv.is_trusted(&e.observer));
    let conditionality = match level {
        Level::Void | Level::Apparent => Conditionality::Unconditional,
        _ if persistent_handle => Conditionality::Unconditional,
        Level::Revocable | Level::Forfeitable => Conditionality::Conditional,
        Level::Unconditional => Conditionality::Void,
    };
    Linkability { conditionality }
}

/// Direct when the PII tying the observee to an IOI needs no mediator to
/// resolve: it is direct or authority-managed and reaches a distrusted party
/// or an IOI. Revocable anonymity is always indirect, since resolution runs
/// through the identity manager.
pub fn derive_accountability(model: &ServiceModel, params: &AnalysisParams, level: Level) -> Accountability {
    let inv = Investigation::new(model, params);
    match level {
        Level::Unconditional => return Accountability::Void,
        Level::Revocable => return Accountability::Indirect,
        _ => {}
    }
    let self_resolving =
        |f: &Fact| f.pii().resolvability == Resolvability::Direct || f.pii().authority_managed;
    let reaching: Vec<Fact> = inv
        .exposures()
        .filter(|(e, p)| p.is_resolvable() && (is_public(&e.observer) || !inv.is_trusted(&e.observer)))
        .map(|(e, p)| Fact::Exposure(e, p))
        .chain(
            inv.attachments()
                .filter(|(_, p)| p.is_resolvable())
                .map(|(a, p)| Fact::Attachment(a, p)),
        )
        .collect();
    if reaching.iter().any(self_resolving) {
        Accountability::Direct
    } else if !reaching.is_empty() || inv.exposures().any(|(_, p)| p.is_resolvable()) {
        Accountability::Indirect
    } else {
        Accountability::Void
    }
}
