//! Trust-based classification of anonymity services.
//!
//! Services are described in a small declarative language ([`dsl`]), checked
//! for well-formedness ([`model`]), and placed in one of five anonymity levels
//! by the [`classifier`], depending on whom the observed individual trusts.

pub mod classifier;
pub mod corpus;
pub mod diagnostic;
pub mod dsl;
pub mod model;
pub mod report;

#[cfg(feature = "cli")]
pub mod cli;
