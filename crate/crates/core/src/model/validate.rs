use std::collections::HashMap;

use super::{Channel, EntityKind, Resolvability, ServiceModel, Trigger, OUTSIDE, PUBLIC};
use crate::diagnostic::{codes, Diagnostic};

/// Reserved words of the service-description language.
pub const KEYWORDS: &[&str] = &[
    "service", "entity", "kind", "role", "participant", "ttp", "dtp", "pii", "of", "resolvability",
    "direct", "indirect", "unresolvable", "persistence", "persistent", "mutable", "transaction",
    "record_holder", "authority_managed", "observes", "public", "outside", "form", "plain", "encoded",
    "encrypted_recoverable", "encrypted_sealed", "hashed", "when", "always", "on_fraud",
    "on_disobedience", "on_expiry", "via", "data", "context", "attach", "to_ioi", "recoverable_on",
    "group_scheme", "operates_on_groups", "group_authentication", "acts_on_behalf", "manager", "true",
    "false",
];

/// `[A-Za-z][A-Za-z0-9_]*` and not a keyword.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

/// The model element a validation finding is about; the parser maps it to a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Subject {
    Model,
    Entity(usize),
    Pii(usize),
    Exposure(usize),
    Attachment(usize),
    GroupScheme,
}

/// Checks every structural invariant of the domain types. An empty result
/// means the model is well-formed.
pub fn validate_model(model: &ServiceModel) -> Vec<Diagnostic> {
    validate_model_located(model).into_iter().map(|(d, _)| d).collect()
}

pub(crate) fn validate_model_located(model: &ServiceModel) -> Vec<(Diagnostic, Subject)> {
    let mut out = Vec::new();
    let mut push = |code: &str, subject: Subject, message: String| {
        out.push((Diagnostic::error(code, message), subject));
    };

    let mut entity_kinds: HashMap<&str, EntityKind> = HashMap::new();
    for (i, entity) in model.entities.iter().enumerate() {
        let subject = Subject::Entity(i);
        let reserved = entity.name == PUBLIC || entity.name == OUTSIDE;
        if entity_kinds.insert(entity.name.as_str(), entity.kind).is_some() {
            push(codes::MOD_DUPLICATE_NAME, subject, format!("duplicate entity name '{}'", entity.name));
            continue;
        }
        let builtin_ok = match entity.name.as_str() {
            PUBLIC => entity.kind == EntityKind::Public,
            OUTSIDE => entity.kind == EntityKind::Outside,
            _ => !entity.kind.is_builtin(),
        };
        if !builtin_ok {
            push(
                codes::MOD_BUILTIN,
                subject,
                format!("entity '{}' cannot have kind {}", entity.name, entity.kind),
            );
        } else if !reserved && !is_identifier(&entity.name) {
            push(codes::MOD_BAD_IDENTIFIER, subject, format!("'{}' is not a valid entity name", entity.name));
        }
        if entity.is_role && entity.kind != EntityKind::Participant {
            push(
                codes::MOD_ROLE_NOT_PARTICIPANT,
                subject,
                format!("only participants can be roles, '{}' is {}", entity.name, entity.kind),
            );
        }
    }
    for builtin in [PUBLIC, OUTSIDE] {
        if !entity_kinds.contains_key(builtin) {
            push(codes::MOD_BUILTIN, Subject::Model, format!("built-in entity '{builtin}' is missing"));
        }
    }
    if !model.entities.iter().any(|e| e.is_role) {
        push(codes::MOD_NO_ROLE, Subject::Model, "model declares no role entity".to_owned());
    }

    let mut pii_seen: HashMap<&str, Resolvability> = HashMap::new();
    for (i, pii) in model.pii_items.iter().enumerate() {
        let subject = Subject::Pii(i);
        if pii_seen.insert(pii.name.as_str(), pii.resolvability).is_some() {
            push(codes::MOD_DUPLICATE_NAME, subject, format!("duplicate PII name '{}'", pii.name));
            continue;
        }
        if !is_identifier(&pii.name) {
            push(codes::MOD_BAD_IDENTIFIER, subject, format!("'{}' is not a valid PII name", pii.name));
        }
        match model.entity(&pii.subject) {
            None => push(
                codes::MOD_DANGLING,
                subject,
                format!("PII '{}' refers to unknown subject '{}'", pii.name, pii.subject),
            ),
            Some(e) if !e.is_role => push(
                codes::MOD_SUBJECT_NOT_ROLE,
                subject,
                format!("subject '{}' of PII '{}' is not a role", pii.subject, pii.name),
            ),
            Some(_) => {}
        }
        match pii.resolvability {
            Resolvability::Indirect if pii.record_holders.is_empty() => push(
                codes::MOD_INDIRECT_NEEDS_HOLDER,
                subject,
                format!("indirect PII requires record holder ('{}')", pii.name),
            ),
            Resolvability::Direct if !pii.record_holders.is_empty() => push(
                codes::MOD_DIRECT_HAS_HOLDER,
                subject,
                format!("direct PII '{}' needs no record holder", pii.name),
            ),
            Resolvability::Unresolvable if !pii.record_holders.is_empty() || pii.authority_managed => push(
                codes::MOD_UNRESOLVABLE_RECORD,
                subject,
                format!("unresolvable PII '{}' cannot have a record holder or managing authority", pii.name),
            ),
            _ => {}
        }
        for holder in &pii.record_holders {
            match entity_kinds.get(holder.as_str()) {
                None => push(
                    codes::MOD_DANGLING,
                    subject,
                    format!("PII '{}' refers to unknown record holder '{holder}'", pii.name),
                ),
                Some(kind) if kind.is_builtin() || *holder == pii.subject => push(
                    codes::MOD_BAD_RECORD_HOLDER,
                    subject,
                    format!("'{holder}' cannot hold the record of PII '{}'", pii.name),
                ),
                Some(_) => {}
            }
        }
    }

    for (i, exposure) in model.exposures.iter().enumerate() {
        let subject = Subject::Exposure(i);
        if !entity_kinds.contains_key(exposure.observer.as_str()) {
            push(codes::MOD_DANGLING, subject, format!("unknown observer '{}'", exposure.observer));
        }
        if !pii_seen.contains_key(exposure.pii.as_str()) {
            push(codes::MOD_DANGLING, subject, format!("unknown PII '{}'", exposure.pii));
        }
        if exposure.via == Channel::Context && exposure.when != Trigger::Always {
            push(
                codes::MOD_CONTEXT_NOT_ALWAYS,
                subject,
                format!("context exposure of '{}' must happen always, not {}", exposure.pii, exposure.when),
            );
        }
    }

    for (i, attachment) in model.attachments.iter().enumerate() {
        let subject = Subject::Attachment(i);
        match pii_seen.get(attachment.pii.as_str()) {
            None => push(codes::MOD_DANGLING, subject, format!("unknown PII '{}'", attachment.pii)),
            Some(Resolvability::Unresolvable) => push(
                codes::MOD_ATTACH_UNRESOLVABLE,
                subject,
                format!("attached PII '{}' must be resolvable", attachment.pii),
            ),
            Some(_) => {}
        }
        if attachment.recoverable_on == Trigger::Always {
            push(
                codes::MOD_ATTACH_ALWAYS,
                subject,
                format!("attachment of '{}' must be recoverable on a trigger, not always", attachment.pii),
            );
        }
        if attachment.via != Channel::Data {
            push(
                codes::MOD_ATTACH_CONTEXT,
                subject,
                format!("attachment of '{}' must travel with the data", attachment.pii),
            );
        }
    }

    let manager = model.group_scheme.as_ref().and_then(|g| g.manager.as_deref());
    if let Some(name) = manager {
        match entity_kinds.get(name) {
            None => push(codes::MOD_DANGLING, Subject::GroupScheme, format!("unknown group manager '{name}'")),
            Some(EntityKind::Ttp | EntityKind::Participant) => {}
            Some(kind) => push(
                codes::MOD_MANAGER_KIND,
                Subject::GroupScheme,
                format!("group manager '{name}' must be a ttp or participant, not {kind}"),
            ),
        }
    }
    for (i, entity) in model.entities.iter().enumerate() {
        let named = manager == Some(entity.name.as_str());
        if entity.declared_group_manager != named {
            push(
                codes::MOD_MANAGER_FLAG,
                Subject::Entity(i),
                format!("group-manager flag of '{}' disagrees with the group scheme", entity.name),
            );
        }
    }

    out
}
