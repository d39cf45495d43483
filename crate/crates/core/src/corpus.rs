//! Bundled example services, one per anonymity class.
//!
//! Each entry carries the observee and trusted participants its header
//! documents, together with the classification those parameters yield.

use crate::classifier::{Level, Variant};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub observee: &'static str,
    /// Trusted participants beyond the observee and the TTPs.
    pub trusted: &'static [&'static str],
    pub level: Level,
    pub variant: Variant,
}

macro_rules! entry {
    ($name:literal, $observee:literal, [$($trusted:literal),*], $level:ident, $variant:ident) => {
        CorpusEntry {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".anon")),
            observee: $observee,
            trusted: &[$($trusted),*],
            level: Level::$level,
            variant: Variant::$variant,
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("pki-public-key", "User", [], Void, None),
    entry!("credit-card-plain", "Customer", [], Apparent, None),
    entry!("revocable-handle", "User", ["Registrar"], Revocable, Linkable),
    entry!("revocable-transaction", "Client", ["Registrar"], Revocable, Unlinkable),
    entry!("group-signature", "Member", [], Revocable, Unlinkable),
    entry!("ecash-forfeitable-tagged", "Payer", [], Forfeitable, Linkable),
    entry!("ecash-forfeitable", "Payer", [], Forfeitable, Unlinkable),
    entry!("adaptive-hashed-ip", "Visitor", [], Unconditional, Linkable),
    entry!("onetime-anon", "Visitor", [], Unconditional, Unlinkable),
];

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
