//! Random well-formed service models for property tests.
//!
//! Strategies produce small index-based blueprints that are then mapped onto
//! a model, so every generated model passes validation by construction.

#![allow(dead_code)]

use anonlevel::classifier::AnalysisParams;
use anonlevel::model::{
    Channel, Entity, EntityKind, ExposureFact, Form, IoiAttachment, Persistence, PiiItem, Resolvability,
    ServiceModel, Trigger,
};
use proptest::prelude::*;

const KINDS: [EntityKind; 3] = [EntityKind::Participant, EntityKind::Ttp, EntityKind::Dtp];
const RESOLVABILITY: [Resolvability; 3] = [Resolvability::Direct, Resolvability::Indirect, Resolvability::Unresolvable];
const PERSISTENCE: [Persistence; 3] = [Persistence::Persistent, Persistence::Mutable, Persistence::Transaction];

#[derive(Debug, Clone)]
pub struct RawFact {
    pub attachment: bool,
    pub observer: usize,
    pub pii: usize,
    pub form: usize,
    pub when: usize,
    pub context: bool,
}

#[derive(Debug, Clone)]
pub struct Blueprint {
    entities: Vec<(usize, bool)>,
    pii: Vec<(usize, usize, usize, Vec<usize>, bool)>,
    facts: Vec<RawFact>,
    trust: Vec<bool>,
}

pub fn raw_fact() -> impl Strategy<Value = RawFact> {
    (any::<bool>(), 0..8usize, 0..8usize, 0..5usize, 0..4usize, any::<bool>()).prop_map(
        |(attachment, observer, pii, form, when, context)| RawFact {
            attachment,
            observer,
            pii,
            form,
            when,
            context,
        },
    )
}

pub fn blueprint() -> impl Strategy<Value = Blueprint> {
    (
        prop::collection::vec((0..3usize, any::<bool>()), 1..=5),
        prop::collection::vec(
            (0..5usize, 0..3usize, 0..3usize, prop::collection::vec(0..5usize, 1..=2), any::<bool>()),
            0..=5,
        ),
        prop::collection::vec(raw_fact(), 0..=8),
        prop::collection::vec(any::<bool>(), 5),
    )
        .prop_map(|(entities, pii, facts, trust)| Blueprint {
            entities,
            pii,
            facts,
            trust,
        })
}

/// Appends a fact to the model, adjusted so the model stays well-formed.
/// Returns the model unchanged when the fact cannot be placed.
pub fn add_fact(model: ServiceModel, fact: &RawFact) -> ServiceModel {
    if model.pii_items.is_empty() {
        return model;
    }
    let form = Form::ALL[fact.form % Form::ALL.len()];
    if fact.attachment {
        let resolvable: Vec<&PiiItem> = model.pii_items.iter().filter(|p| p.is_resolvable()).collect();
        if resolvable.is_empty() {
            return model;
        }
        let pii = resolvable[fact.pii % resolvable.len()].name.clone();
        let when = Trigger::ALL[1 + fact.when % (Trigger::ALL.len() - 1)];
        return model.with_attachment(IoiAttachment::new(pii, form, when));
    }
    let observer = model.entities[fact.observer % model.entities.len()].name.clone();
    let pii = model.pii_items[fact.pii % model.pii_items.len()].name.clone();
    let when = Trigger::ALL[fact.when % Trigger::ALL.len()];
    let via = if fact.context && when == Trigger::Always {
        Channel::Context
    } else {
        Channel::Data
    };
    model.with_exposure(ExposureFact::new(observer, pii, form).when(when).via(via))
}

impl Blueprint {
    pub fn model(&self) -> ServiceModel {
        let mut model = ServiceModel::new("fuzz");
        for (i, (kind, role)) in self.entities.iter().enumerate() {
            let kind = if i == 0 { EntityKind::Participant } else { KINDS[*kind] };
            let mut entity = Entity::new(format!("E{i}"), kind);
            entity.is_role = kind == EntityKind::Participant && (i == 0 || *role);
            model = model.with_entity(entity);
        }
        let roles: Vec<String> = model.roles().map(|e| e.name.clone()).collect();
        let declared: Vec<String> = model.declared_entities().map(|e| e.name.clone()).collect();
        for (i, (subject, res, pers, holders, authority)) in self.pii.iter().enumerate() {
            let subject = roles[subject % roles.len()].clone();
            let candidates: Vec<&String> = declared.iter().filter(|n| **n != subject).collect();
            let mut resolvability = RESOLVABILITY[*res];
            if resolvability == Resolvability::Indirect && candidates.is_empty() {
                resolvability = Resolvability::Direct;
            }
            let mut pii = PiiItem::new(format!("p{i}"), subject, resolvability).with_persistence(PERSISTENCE[*pers]);
            if resolvability == Resolvability::Indirect {
                let mut names: Vec<String> = holders.iter().map(|h| candidates[h % candidates.len()].clone()).collect();
                names.sort();
                names.dedup();
                pii = pii.with_holders(names);
                pii.authority_managed = *authority;
            }
            model = model.with_pii(pii);
        }
        self.facts.iter().fold(model, add_fact)
    }

    /// The first entity as observee, trusting the participants picked by the blueprint.
    pub fn params(&self, model: &ServiceModel) -> AnalysisParams {
        let trusted: Vec<String> = model
            .declared_entities()
            .enumerate()
            .filter(|(i, e)| e.kind == EntityKind::Participant && self.trust[*i % self.trust.len()])
            .map(|(_, e)| e.name.clone())
            .collect();
        AnalysisParams::new(model, "E0", &trusted).expect("blueprint parameters are valid")
    }
}
