//! Consistency checks a classification must pass. A finding here means the
//! engine itself is wrong, never the model.

use super::investigation::Investigation;
use super::{check_publicity, AnalysisParams, Classification, Level, Variant};
use crate::diagnostic::{codes, Diagnostic};
use crate::model::{apply_implications, Accountability, Conditionality, DerivedProperties, ServiceModel, OUTSIDE, PUBLIC};

/// Linkability each level admits. Level 4 never yields conditional linkability.
pub fn allowed_linkability(level: Level) -> &'static [Conditionality] {
    use Conditionality::*;
    match level {
        Level::Void | Level::Apparent => &[Unconditional],
        Level::Revocable | Level::Forfeitable => &[Unconditional, Conditional],
        Level::Unconditional => &[Unconditional, Void],
    }
}

pub fn allowed_accountability(level: Level) -> &'static [Accountability] {
    use Accountability::*;
    match level {
        Level::Void => &[Direct],
        Level::Apparent | Level::Forfeitable => &[Direct, Indirect],
        Level::Revocable => &[Indirect],
        Level::Unconditional => &[Void],
    }
}

/// Checks whether the scope of trust fits the bounds of its level.
fn scope_within_bounds(model: &ServiceModel, params: &AnalysisParams, c: &Classification) -> Result<(), String> {
    let scope = &c.scope;
    let observee = params.observee();
    let trusted = |m: &String| params.is_trusted(m);
    let ok = match c.level {
        Level::Void => scope.contains(OUTSIDE),
        Level::Apparent => {
            scope.members.iter().all(|m| m == OUTSIDE || model.entity(m).is_some())
                && !scope.members.iter().all(trusted)
                && !scope.contains(PUBLIC)
        }
        Level::Revocable => {
            scope.contains(observee) && scope.members.iter().all(trusted) && scope.members.len() >= 2
        }
        Level::Forfeitable => scope.members.iter().all(|m| m == observee),
        Level::Unconditional => scope.members.is_empty(),
    };
    if ok {
        Ok(())
    } else {
        Err(format!("scope of trust {} violates the bounds of {}", scope, c.level))
    }
}

pub fn self_check(model: &ServiceModel, params: &AnalysisParams, c: &Classification) -> Vec<Diagnostic> {
    let mut found = apply_implications(&DerivedProperties {
        recognisability: c.recognisability.clone(),
        linkability: c.linkability,
        accountability: c.accountability,
    });
    if let Err(message) = scope_within_bounds(model, params, c) {
        found.push(Diagnostic::error(codes::INV_SCOPE_BOUND, message));
    }
    if !allowed_linkability(c.level).contains(&c.linkability.conditionality)
        || !allowed_accountability(c.level).contains(&c.accountability)
    {
        found.push(Diagnostic::error(
            codes::INV_TABLE2,
            format!(
                "linkability {} with accountability {} is not admissible at {}",
                c.linkability.conditionality, c.accountability, c.level
            ),
        ));
    }
    let variant_ok = match c.variant {
        Variant::None => !c.level.has_variants(),
        Variant::Linkable => c.level.has_variants() && c.linkability.conditionality == Conditionality::Unconditional,
        Variant::Unlinkable => c.level.has_variants() && c.linkability.conditionality != Conditionality::Unconditional,
    };
    if !variant_ok {
        found.push(Diagnostic::error(
            codes::INV_VARIANT,
            format!("variant {} does not fit {} with {} linkability", c.variant, c.level, c.linkability.conditionality),
        ));
    }
    let publicity = check_publicity(&c.scope, params, model);
    let publicity_ok = publicity == c.publicity
        && publicity.satisfied == (c.level >= Level::Revocable)
        && (!publicity.exception || c.level == Level::Revocable);
    if !publicity_ok {
        found.push(Diagnostic::error(
            codes::INV_PUBLICITY,
            format!("publicity constraint inconsistent with {}", c.level),
        ));
    }
    let inv = Investigation::new(model, params);
    let lowest = inv.holds(c.level) || c.level == Level::Unconditional;
    let none_below = Level::ALL.iter().take_while(|l| **l < c.level).all(|l| !inv.holds(*l));
    if !(lowest && none_below) {
        found.push(Diagnostic::error(
            codes::INV_LOWEST_LEVEL,
            format!("{} is not the lowest level whose condition holds", c.level),
        ));
    }
    found
}
