use std::collections::BTreeSet;

use crate::diagnostic::{codes, Diagnostic};
use crate::model::{EntityKind, ServiceModel};

/// The two inputs of an investigation: whose anonymity is examined, and whom
/// they trust.
///
/// The trusted set always contains the observee and every TTP. Other
/// participants are distrusted unless listed explicitly. DTPs and the
/// built-ins can never be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnalysisParams {
    observee: String,
    trusted: BTreeSet<String>,
}

impl AnalysisParams {
    pub fn new<I, S>(model: &ServiceModel, observee: &str, extra_trusted: I) -> Result<Self, Diagnostic>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        match model.entity(observee) {
            None => {
                return Err(Diagnostic::error(
                    codes::UNKNOWN_REFERENCE,
                    format!("unknown observee '{observee}'"),
                ))
            }
            Some(e) if !e.is_role => {
                return Err(Diagnostic::error(
                    codes::CLS_OBSERVEE_NOT_ROLE,
                    format!("observee '{observee}' is not a role"),
                ))
            }
            Some(_) => {}
        }
        let mut trusted: BTreeSet<String> = model
            .entities
            .iter()
            .filter(|e| e.kind == EntityKind::Ttp)
            .map(|e| e.name.clone())
            .collect();
        trusted.insert(observee.to_owned());
        for name in extra_trusted {
            let name = name.as_ref();
            match model.entity(name) {
                None => {
                    return Err(Diagnostic::error(
                        codes::UNKNOWN_REFERENCE,
                        format!("unknown entity '{name}' in trusted set"),
                    ))
                }
                Some(e) if matches!(e.kind, EntityKind::Participant | EntityKind::Ttp) => {
                    trusted.insert(e.name.clone());
                }
                Some(e) => {
                    return Err(Diagnostic::error(
                        codes::CLS_UNTRUSTABLE,
                        format!("'{name}' is {} and cannot be trusted", e.kind),
                    ))
                }
            }
        }
        Ok(AnalysisParams {
            observee: observee.to_owned(),
            trusted,
        })
    }

    /// Default trust: the observee and the TTPs.
    pub fn with_default_trust(model: &ServiceModel, observee: &str) -> Result<Self, Diagnostic> {
        Self::new(model, observee, std::iter::empty::<&str>())
    }

    /// The model's only role, if it has exactly one.
    pub fn sole_role(model: &ServiceModel) -> Result<&str, Diagnostic> {
        let mut roles = model.roles();
        match (roles.next(), roles.next()) {
            (Some(role), None) => Ok(&role.name),
            (None, _) => Err(Diagnostic::error(codes::CLS_OBSERVEE_AMBIGUOUS, "model declares no role")),
            (Some(_), Some(_)) => Err(Diagnostic::error(
                codes::CLS_OBSERVEE_AMBIGUOUS,
                "model declares several roles; choose an observee",
            )),
        }
    }

    pub fn observee(&self) -> &str {
        &self.observee
    }

    pub fn trusted(&self) -> &BTreeSet<String> {
        &self.trusted
    }

    pub fn is_trusted(&self, name: &str) -> bool {
        self.trusted.contains(name)
    }
}
