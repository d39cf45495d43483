//! The `.anon` service-description language.
//!
//! ```text
//! service "credit-card-plain" {
//!   entity Customer kind=participant role
//!   entity IssuerBank kind=participant
//!   entity Merchant kind=participant
//!   pii card_number of Customer resolvability=indirect record_holder=IssuerBank
//!   observes Merchant card_number form=plain
//! }
//! ```
//!
//! [`parse`] reports lexical (`DSL-001`), syntax (`DSL-002`), duplicate-name
//! (`DSL-003`) and unknown-reference (`DSL-004`) errors with source spans, then
//! runs model validation. [`serialize`] writes the canonical form.

mod lexer;
mod parser;
mod serialize;

use crate::diagnostic::Diagnostic;
use crate::model::ServiceModel;

pub use serialize::serialize;

/// `model` is present iff `diagnostics` holds no error.
#[derive(Debug, Clone)]
pub struct ParseResult {
    pub model: Option<ServiceModel>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn into_result(self) -> Result<ServiceModel, Vec<Diagnostic>> {
        self.model.ok_or(self.diagnostics)
    }
}

pub fn parse(text: &str) -> ParseResult {
    parser::parse(text)
}
