use serde::{Deserialize, Serialize};

use super::investigation::Investigation;
use super::{AnalysisParams, ScopeOfTrust};
use crate::model::{Resolvability, ServiceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Publicity {
    /// Every member of the scope of trust is trusted.
    pub satisfied: bool,
    /// The constraint holds only because indirect PII seen by distrusted
    /// observers stays unresolvable to them.
    pub exception: bool,
}

/// The publicity constraint: the scope of trust must lie within the trusted set.
///
/// The exception flag needs the model: it is raised when a distrusted observer
/// sees indirect observee PII whose resolution is left to trusted record holders.
pub fn check_publicity(scope: &ScopeOfTrust, params: &AnalysisParams, model: &ServiceModel) -> Publicity {
    let satisfied = scope.members.iter().all(|m| params.is_trusted(m));
    let inv = Investigation::new(model, params);
    let exception = satisfied
        && inv
            .ordinary()
            .any(|(e, p)| p.resolvability == Resolvability::Indirect && !params.is_trusted(&e.observer));
    Publicity { satisfied, exception }
}
