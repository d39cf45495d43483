//! Findings produced while parsing, validating, and classifying models.
//!
//! Every diagnostic carries a stable code. Codes are grouped by prefix:
//!
//! | prefix | producer                                  |
//! |--------|-------------------------------------------|
//! | `DSL`  | lexer, parser, name resolution            |
//! | `MOD`  | model well-formedness ([`validate_model`]) |
//! | `IMP`  | implication self-check                    |
//! | `CLS`  | classifier and analysis parameters        |
//! | `GS`   | group-scheme validation                   |
//! | `INV`  | engine invariant self-check               |
//!
//! [`validate_model`]: crate::model::validate_model

use std::fmt;

use serde::{Deserialize, Serialize};

/// Stable diagnostic codes.
pub mod codes {
    pub const LEXICAL: &str = "DSL-001";
    pub const SYNTAX: &str = "DSL-002";
    pub const DUPLICATE_NAME: &str = "DSL-003";
    pub const UNKNOWN_REFERENCE: &str = "DSL-004";

    pub const MOD_DUPLICATE_NAME: &str = "MOD-001";
    pub const MOD_BUILTIN: &str = "MOD-002";
    pub const MOD_INDIRECT_NEEDS_HOLDER: &str = "MOD-003";
    pub const MOD_DIRECT_HAS_HOLDER: &str = "MOD-004";
    pub const MOD_UNRESOLVABLE_RECORD: &str = "MOD-005";
    pub const MOD_BAD_RECORD_HOLDER: &str = "MOD-006";
    pub const MOD_CONTEXT_NOT_ALWAYS: &str = "MOD-007";
    pub const MOD_DANGLING: &str = "MOD-008";
    pub const MOD_SUBJECT_NOT_ROLE: &str = "MOD-009";
    pub const MOD_ROLE_NOT_PARTICIPANT: &str = "MOD-010";
    pub const MOD_ATTACH_ALWAYS: &str = "MOD-011";
    pub const MOD_ATTACH_CONTEXT: &str = "MOD-012";
    pub const MOD_ATTACH_UNRESOLVABLE: &str = "MOD-013";
    pub const MOD_MANAGER_KIND: &str = "MOD-014";
    pub const MOD_MANAGER_FLAG: &str = "MOD-015";
    pub const MOD_NO_ROLE: &str = "MOD-016";
    pub const MOD_BAD_IDENTIFIER: &str = "MOD-017";

    pub const IMP_UNCONDITIONAL_UNLINKABLE: &str = "IMP-001";
    pub const IMP_RECOGNISABLE_UNACCOUNTABLE: &str = "IMP-002";
    pub const IMP_IDENTIFIABLE_UNTRACEABLE: &str = "IMP-003";
    pub const IMP_SOURCES: &str = "IMP-004";

    pub const CLS_GROUP_LOW_LEVEL: &str = "CLS-001";
    pub const CLS_GROUP_INVALID: &str = "CLS-002";
    pub const CLS_BAD_VARIANT: &str = "CLS-003";
    pub const CLS_OBSERVEE_NOT_ROLE: &str = "CLS-004";
    pub const CLS_SWEEP_TOO_LARGE: &str = "CLS-005";
    pub const CLS_UNTRUSTABLE: &str = "CLS-006";
    pub const CLS_OBSERVEE_AMBIGUOUS: &str = "CLS-007";
    pub const CLS_MODEL_INVALID: &str = "CLS-008";

    pub const GS_CONDITION_FALSE: &str = "GS-001";
    pub const GS_UNCONDITIONAL: &str = "GS-002";
    pub const GS_LOW_LEVEL: &str = "GS-003";
    pub const GS_MANAGER_MISMATCH: &str = "GS-004";
    pub const GS_NO_MANAGER: &str = "GS-005";

    pub const INV_SCOPE_BOUND: &str = "INV-001";
    pub const INV_TABLE2: &str = "INV-002";
    pub const INV_VARIANT: &str = "INV-003";
    pub const INV_PUBLICITY: &str = "INV-004";
    pub const INV_LOWEST_LEVEL: &str = "INV-005";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A 1-based position in source text. `length` counts characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        SourceSpan {
            line: line.max(1),
            column: column.max(1),
            length: length.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub location: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: code.to_owned(),
            message: message.into(),
            location: None,
        }
    }

    pub fn warning(code: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, message)
        }
    }

    pub fn at(mut self, span: SourceSpan) -> Self {
        self.location = Some(span);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = self.location {
            write!(f, "{span}: ")?;
        }
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
