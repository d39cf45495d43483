//! Domain types describing one anonymity service.
//!
//! A [`ServiceModel`] lists the entities taking part in a service, the pieces
//! of personally identifiable information (PII) the service handles, who can
//! observe which PII and under what circumstances, and which PII is bound to
//! items of interest (IOIs) for event-driven recovery.
//!
//! Models are plain data. They are checked by [`validate_model`] and consumed
//! read-only by the classifier.

mod implications;
mod observe;
mod validate;

use serde::{Deserialize, Serialize};

pub use implications::{
    apply_implications, Accountability, Conditionality, DerivedProperties, Linkability, Recognisability,
    RecognitionSource,
};
pub use observe::{effective_resolvers, is_observable, Resolvers};
pub use validate::{is_identifier, validate_model, KEYWORDS};

pub(crate) use validate::{validate_model_located, Subject};

/// Name of the built-in entity standing for the general public.
pub const PUBLIC: &str = "@public";
/// Name of the built-in entity standing for everything outside the system.
pub const OUTSIDE: &str = "@outside";

/// Declares a fieldless enum whose variants map one-to-one onto DSL keywords.
macro_rules! keyword_enum {
    (
        $(#[$meta:meta])*
        pub enum $name:ident { $($variant:ident => $kw:literal),+ $(,)? }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name { $($variant),+ }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn keyword(self) -> &'static str {
                match self { $($name::$variant => $kw),+ }
            }

            pub fn from_keyword(word: &str) -> Option<Self> {
                match word { $($kw => Some($name::$variant),)+ _ => None }
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(self.keyword())
            }
        }
    };
}

keyword_enum! {
    /// Position of an entity relative to the system (participants and third parties)
    /// plus the two built-ins.
    pub enum EntityKind {
        Participant => "participant",
        Ttp => "ttp",
        Dtp => "dtp",
        Public => "public",
        Outside => "outside",
    }
}

keyword_enum! {
    /// How hard it is to trace a PII value back to its individual.
    pub enum Resolvability {
        Direct => "direct",
        Indirect => "indirect",
        Unresolvable => "unresolvable",
    }
}

keyword_enum! {
    pub enum Persistence {
        Persistent => "persistent",
        Mutable => "mutable",
        Transaction => "transaction",
    }
}

keyword_enum! {
    /// The shape in which PII reaches an observer.
    pub enum Form {
        Plain => "plain",
        Encoded => "encoded",
        EncryptedRecoverable => "encrypted_recoverable",
        EncryptedSealed => "encrypted_sealed",
        Hashed => "hashed",
    }
}

keyword_enum! {
    /// Circumstance under which an exposure happens. `Always` means ordinary operation.
    pub enum Trigger {
        Always => "always",
        OnFraud => "on_fraud",
        OnDisobedience => "on_disobedience",
        OnExpiry => "on_expiry",
    }
}

keyword_enum! {
    /// Whether PII is learned from exchanged data or from the communication context.
    pub enum Channel {
        Data => "data",
        Context => "context",
    }
}

impl Resolvability {
    pub fn is_resolvable(self) -> bool {
        self != Resolvability::Unresolvable
    }
}

impl EntityKind {
    pub fn is_builtin(self) -> bool {
        matches!(self, EntityKind::Public | EntityKind::Outside)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    pub name: String,
    pub kind: EntityKind,
    /// The entity stands for a participant role whose general representative
    /// can be chosen as observee.
    pub is_role: bool,
    pub declared_group_manager: bool,
}

impl Entity {
    pub fn new(name: impl Into<String>, kind: EntityKind) -> Self {
        Entity {
            name: name.into(),
            kind,
            is_role: false,
            declared_group_manager: false,
        }
    }

    pub fn role(name: impl Into<String>) -> Self {
        Entity {
            is_role: true,
            ..Entity::new(name, EntityKind::Participant)
        }
    }

    pub fn is_builtin(&self) -> bool {
        self.kind.is_builtin()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiiItem {
    pub name: String,
    /// The role the PII identifies.
    pub subject: String,
    pub resolvability: Resolvability,
    pub persistence: Persistence,
    /// Parties holding the PII record needed to resolve indirect PII.
    pub record_holders: Vec<String>,
    pub authority_managed: bool,
}

impl PiiItem {
    pub fn new(name: impl Into<String>, subject: impl Into<String>, resolvability: Resolvability) -> Self {
        PiiItem {
            name: name.into(),
            subject: subject.into(),
            resolvability,
            persistence: Persistence::Persistent,
            record_holders: Vec::new(),
            authority_managed: false,
        }
    }

    pub fn with_holders<I, S>(mut self, holders: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.record_holders = holders.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_persistence(mut self, persistence: Persistence) -> Self {
        self.persistence = persistence;
        self
    }

    pub fn is_resolvable(&self) -> bool {
        self.resolvability.is_resolvable()
    }
}

/// `observer` can see `pii` in the given form when `when` holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExposureFact {
    pub observer: String,
    pub pii: String,
    pub form: Form,
    pub when: Trigger,
    pub via: Channel,
}

impl ExposureFact {
    pub fn new(observer: impl Into<String>, pii: impl Into<String>, form: Form) -> Self {
        ExposureFact {
            observer: observer.into(),
            pii: pii.into(),
            form,
            when: Trigger::Always,
            via: Channel::Data,
        }
    }

    pub fn when(mut self, when: Trigger) -> Self {
        self.when = when;
        self
    }

    pub fn via(mut self, via: Channel) -> Self {
        self.via = via;
        self
    }
}

/// PII bound to items of interest that becomes observable only once
/// `recoverable_on` fires.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IoiAttachment {
    pub pii: String,
    pub form: Form,
    pub recoverable_on: Trigger,
    pub via: Channel,
}

impl IoiAttachment {
    pub fn new(pii: impl Into<String>, form: Form, recoverable_on: Trigger) -> Self {
        IoiAttachment {
            pii: pii.into(),
            form,
            recoverable_on,
            via: Channel::Data,
        }
    }
}

/// Declared properties of a group scheme. The fourth defining condition
/// (no unconditional recognisability or linkability) is derived by the
/// classifier and has no field here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSchemeDecl {
    pub operates_on_groups: bool,
    pub group_authentication: bool,
    pub acts_on_behalf: bool,
    pub manager: Option<String>,
}

#[derive(Debug, Clone, Eq)]
pub struct ServiceModel {
    pub name: String,
    pub entities: Vec<Entity>,
    pub pii_items: Vec<PiiItem>,
    pub exposures: Vec<ExposureFact>,
    pub attachments: Vec<IoiAttachment>,
    pub group_scheme: Option<GroupSchemeDecl>,
}

impl ServiceModel {
    /// An empty model holding only the two built-in entities.
    pub fn new(name: impl Into<String>) -> Self {
        ServiceModel {
            name: name.into(),
            entities: vec![
                Entity::new(PUBLIC, EntityKind::Public),
                Entity::new(OUTSIDE, EntityKind::Outside),
            ],
            pii_items: Vec::new(),
            exposures: Vec::new(),
            attachments: Vec::new(),
            group_scheme: None,
        }
    }

    pub fn with_entity(mut self, entity: Entity) -> Self {
        self.entities.push(entity);
        self
    }

    pub fn with_pii(mut self, pii: PiiItem) -> Self {
        self.pii_items.push(pii);
        self
    }

    pub fn with_exposure(mut self, exposure: ExposureFact) -> Self {
        self.exposures.push(exposure);
        self
    }

    pub fn with_attachment(mut self, attachment: IoiAttachment) -> Self {
        self.attachments.push(attachment);
        self
    }

    /// Declares a group scheme and flags its manager entity, if any.
    pub fn with_group_scheme(mut self, scheme: GroupSchemeDecl) -> Self {
        for entity in &mut self.entities {
            entity.declared_group_manager = scheme.manager.as_deref() == Some(entity.name.as_str());
        }
        self.group_scheme = Some(scheme);
        self
    }

    pub fn entity(&self, name: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.name == name)
    }

    pub fn pii(&self, name: &str) -> Option<&PiiItem> {
        self.pii_items.iter().find(|p| p.name == name)
    }

    pub fn roles(&self) -> impl Iterator<Item = &Entity> {
        self.entities.iter().filter(|e| e.is_role)
    }

    /// Entities declared in the model text, i.e. everything except the built-ins.
    pub fn declared_entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.iter().filter(|e| !e.is_builtin())
    }

    /// Copy with every declaration list (and every record-holder list) sorted.
    /// Two models are structurally equal iff their canonical forms are identical.
    pub fn canonical(&self) -> ServiceModel {
        let mut model = self.clone();
        model.entities.sort();
        for pii in &mut model.pii_items {
            pii.record_holders.sort();
        }
        model.pii_items.sort();
        model.exposures.sort();
        model.attachments.sort();
        model
    }
}

/// Declaration order carries no meaning, so equality ignores it.
impl PartialEq for ServiceModel {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.name == b.name
            && a.entities == b.entities
            && a.pii_items == b.pii_items
            && a.exposures == b.exposures
            && a.attachments == b.attachments
            && a.group_scheme == b.group_scheme
    }
}
