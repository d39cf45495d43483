use std::collections::BTreeSet;

use super::{Form, PiiItem, Resolvability, ServiceModel};

/// PII in this form is both accessible and interpretable to whoever receives it.
///
/// Hashing and sealed encryption are irreversible for the observer; encoding and
/// recoverable encryption are not.
pub fn is_observable(form: Form) -> bool {
    match form {
        Form::Plain | Form::Encoded | Form::EncryptedRecoverable => true,
        Form::EncryptedSealed | Form::Hashed => false,
    }
}

/// Who can turn an observed PII value into an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolvers {
    /// Anyone who observes the value; no mediator is needed.
    Anyone,
    /// Only with the help of one of these record holders. Empty means nobody.
    Via(BTreeSet<String>),
}

impl Resolvers {
    pub fn is_empty(&self) -> bool {
        matches!(self, Resolvers::Via(holders) if holders.is_empty())
    }
}

pub fn effective_resolvers(pii: &PiiItem, _model: &ServiceModel) -> Resolvers {
    match pii.resolvability {
        Resolvability::Direct => Resolvers::Anyone,
        Resolvability::Indirect => Resolvers::Via(pii.record_holders.iter().cloned().collect()),
        Resolvability::Unresolvable => Resolvers::Via(BTreeSet::new()),
    }
}
