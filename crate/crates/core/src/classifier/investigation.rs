//! The observee-centred reading of a model that all level predicates share.

use std::collections::BTreeSet;

use super::{AnalysisParams, Level, ScopeOfTrust};
use crate::model::{
    is_observable, Channel, ExposureFact, IoiAttachment, PiiItem, Resolvability, ServiceModel, Trigger, OUTSIDE,
    PUBLIC,
};

/// One way observee PII can reach someone other than the observee.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Fact<'a> {
    Exposure(&'a ExposureFact, &'a PiiItem),
    Attachment(&'a IoiAttachment, &'a PiiItem),
}

impl<'a> Fact<'a> {
    pub(crate) fn pii(&self) -> &'a PiiItem {
        match self {
            Fact::Exposure(_, pii) | Fact::Attachment(_, pii) => pii,
        }
    }

    pub(crate) fn via(&self) -> Channel {
        match self {
            Fact::Exposure(e, _) => e.via,
            Fact::Attachment(a, _) => a.via,
        }
    }
}

pub(crate) fn is_public(name: &str) -> bool {
    name == PUBLIC || name == OUTSIDE
}

pub(crate) struct Investigation<'a> {
    pub(crate) model: &'a ServiceModel,
    pub(crate) params: &'a AnalysisParams,
}

impl<'a> Investigation<'a> {
    pub(crate) fn new(model: &'a ServiceModel, params: &'a AnalysisParams) -> Self {
        Investigation { model, params }
    }

    pub(crate) fn observee(&self) -> &'a str {
        // Borrowed from the params, which outlive the investigation.
        self.params.observee()
    }

    pub(crate) fn is_trusted(&self, name: &str) -> bool {
        self.params.is_trusted(name)
    }

    fn observee_pii(&self, name: &str) -> Option<&'a PiiItem> {
        self.model
            .pii_items
            .iter()
            .find(|p| p.name == name && p.subject == self.params.observee())
    }

    /// Observable exposures of observee PII to anyone but the observee.
    pub(crate) fn exposures(&self) -> impl Iterator<Item = (&'a ExposureFact, &'a PiiItem)> + '_ {
        self.model.exposures.iter().filter_map(move |e| {
            if !is_observable(e.form) || e.observer == self.params.observee() {
                return None;
            }
            self.observee_pii(&e.pii).map(|p| (e, p))
        })
    }

    /// Exposures during ordinary operation.
    pub(crate) fn ordinary(&self) -> impl Iterator<Item = (&'a ExposureFact, &'a PiiItem)> + '_ {
        self.exposures().filter(|(e, _)| e.when == Trigger::Always)
    }

    /// Exposures that only happen once a trigger fires.
    pub(crate) fn triggered(&self) -> impl Iterator<Item = (&'a ExposureFact, &'a PiiItem)> + '_ {
        self.exposures().filter(|(e, _)| e.when != Trigger::Always)
    }

    /// Observable attachments of observee PII.
    pub(crate) fn attachments(&self) -> impl Iterator<Item = (&'a IoiAttachment, &'a PiiItem)> + '_ {
        self.model.attachments.iter().filter_map(move |a| {
            if !is_observable(a.form) {
                return None;
            }
            self.observee_pii(&a.pii).map(|p| (a, p))
        })
    }

    fn ordinary_of(&self, resolvability: Resolvability) -> impl Iterator<Item = Fact<'a>> + '_ {
        self.ordinary()
            .filter(move |(_, p)| p.resolvability == resolvability)
            .map(|(e, p)| Fact::Exposure(e, p))
    }

    /// Direct PII that the public or the outside sees during ordinary operation.
    pub(crate) fn void_witnesses(&self) -> Vec<Fact<'a>> {
        self.ordinary_of(Resolvability::Direct)
            .filter(|f| matches!(f, Fact::Exposure(e, _) if is_public(&e.observer)))
            .collect()
    }

    /// Resolvable PII whose resolution does not depend on trusted parties alone:
    /// indirect PII with a distrusted record holder, or direct PII handed to a
    /// distrusted participant.
    pub(crate) fn apparent_witnesses(&self) -> Vec<Fact<'a>> {
        let indirect = self.ordinary_of(Resolvability::Indirect).filter(|f| {
            f.pii()
                .record_holders
                .iter()
                .any(|h| h != self.observee() && !self.is_trusted(h))
        });
        let published: BTreeSet<&str> = self
            .void_witnesses()
            .iter()
            .map(|f| f.pii().name.as_str())
            .collect();
        let direct = self.ordinary_of(Resolvability::Direct).filter(move |f| match f {
            Fact::Exposure(e, p) => {
                !is_public(&e.observer) && !self.is_trusted(&e.observer) && !published.contains(p.name.as_str())
            }
            Fact::Attachment(..) => false,
        });
        indirect.chain(direct).collect()
    }

    /// Trusted parties able to resolve observee PII seen in ordinary operation,
    /// with the facts that make them so.
    pub(crate) fn identity_manager_witnesses(&self) -> Vec<(Fact<'a>, &'a str)> {
        let mut found = Vec::new();
        for (e, p) in self.ordinary() {
            match p.resolvability {
                Resolvability::Indirect => {
                    for holder in &p.record_holders {
                        if holder != self.observee() && self.is_trusted(holder) {
                            found.push((Fact::Exposure(e, p), holder.as_str()));
                        }
                    }
                }
                Resolvability::Direct => {
                    if self.is_trusted(&e.observer) {
                        found.push((Fact::Exposure(e, p), e.observer.as_str()));
                    }
                }
                Resolvability::Unresolvable => {}
            }
        }
        found
    }

    pub(crate) fn identity_managers(&self) -> BTreeSet<String> {
        self.identity_manager_witnesses()
            .into_iter()
            .map(|(_, im)| im.to_owned())
            .collect()
    }

    /// Ways resolvable observee PII only surfaces once a trigger fires.
    pub(crate) fn forfeiture_mechanisms(&self) -> Vec<Fact<'a>> {
        let attached = self
            .attachments()
            .filter(|(_, p)| p.is_resolvable())
            .map(|(a, p)| Fact::Attachment(a, p));
        let triggered = self
            .triggered()
            .filter(|(_, p)| p.is_resolvable())
            .map(|(e, p)| Fact::Exposure(e, p));
        attached.chain(triggered).collect()
    }

    pub(crate) fn scope(&self) -> ScopeOfTrust {
        let mut members = BTreeSet::new();
        for (e, p) in self.ordinary() {
            match p.resolvability {
                Resolvability::Direct => {
                    members.insert(e.observer.clone());
                    if is_public(&e.observer) {
                        members.insert(OUTSIDE.to_owned());
                    }
                }
                Resolvability::Indirect => members.extend(p.record_holders.iter().cloned()),
                Resolvability::Unresolvable => {}
            }
        }
        if !self.forfeiture_mechanisms().is_empty() || !self.identity_managers().is_empty() {
            members.insert(self.observee().to_owned());
        }
        ScopeOfTrust { members }
    }

    /// Whether the defining condition of `level` holds, irrespective of lower levels.
    pub(crate) fn holds(&self, level: Level) -> bool {
        match level {
            Level::Void => !self.void_witnesses().is_empty(),
            Level::Apparent => !self.apparent_witnesses().is_empty(),
            Level::Revocable => {
                let scope = self.scope();
                !self.identity_managers().is_empty()
                    && scope.contains(self.observee())
                    && scope
                        .members
                        .iter()
                        .any(|m| m != self.observee() && self.is_trusted(m))
            }
            Level::Forfeitable => {
                self.identity_managers().is_empty()
                    && !self.forfeiture_mechanisms().is_empty()
                    && !self
                        .ordinary()
                        .any(|(e, p)| p.is_resolvable() && e.via == Channel::Context)
            }
            Level::Unconditional => {
                !self.exposures().any(|(_, p)| p.is_resolvable())
                    && !self.attachments().any(|(_, p)| p.is_resolvable())
            }
        }
    }

    /// The lowest level whose condition holds. Level 4 is the fallback.
    pub(crate) fn level(&self) -> Level {
        Level::ALL
            .into_iter()
            .find(|l| self.holds(*l))
            .unwrap_or(Level::Unconditional)
    }

    /// Facts that make the observee recognisable at `level`.
    pub(crate) fn witnesses(&self, level: Level) -> Vec<Fact<'a>> {
        match level {
            Level::Void => self.void_witnesses(),
            Level::Apparent => self.apparent_witnesses(),
            Level::Revocable => self
                .identity_manager_witnesses()
                .into_iter()
                .map(|(fact, _)| fact)
                .collect(),
            Level::Forfeitable => self.forfeiture_mechanisms(),
            Level::Unconditional => Vec::new(),
        }
    }
}
