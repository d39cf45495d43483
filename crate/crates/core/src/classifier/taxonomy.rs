//! Correspondences between the five classes and three earlier taxonomies.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Level, Variant};
use crate::diagnostic::{codes, Diagnostic};

/// One cell of the comparison table. Parenthesised cells describe only an
/// initial state of the class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Correspondence {
    pub text: String,
    pub parenthesised: bool,
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parenthesised {
            write!(f, "({})", self.text)
        } else {
            f.write_str(&self.text)
        }
    }
}

/// `None` means the taxonomy has no matching notion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaxonomyMap {
    pub flinn_maurer: Option<Correspondence>,
    pub kohntopp_pfitzmann: Option<Correspondence>,
    pub seys: Option<Correspondence>,
}

type Cell = Option<(&'static str, bool)>;

const NO_ANONYMITY: Cell = Some(("no anonymity or semi-anonymity", false));
const LATENT: Cell = Some(("latent identification", false));
const UNLINKABLE_PSEUDONYMS: Cell = Some(("initially unlinkable pseudonyms", false));
const ELIMINABLE_TRANSACTION_PSEUDONYMS: Cell = Some(("initially unlinkable transaction pseudonyms", true));

// Blank cells continue the entry above them, so apparent and revocable
// anonymity share "latent identification" and unlinkable forfeitable
// anonymity shares the absences of its linkable sibling.
const TABLE: [(Level, Variant, Cell, Cell, Cell); 8] = [
    (
        Level::Void,
        Variant::None,
        Some(("usual identification", false)),
        Some(("public pseudonym", false)),
        NO_ANONYMITY,
    ),
    (
        Level::Apparent,
        Variant::None,
        LATENT,
        Some(("initially non-public pseudonyms", false)),
        NO_ANONYMITY,
    ),
    (
        Level::Revocable,
        Variant::Linkable,
        LATENT,
        Some(("initially non-public transaction pseudonyms", false)),
        Some(("conditional persistent anonymity", false)),
    ),
    (
        Level::Revocable,
        Variant::Unlinkable,
        LATENT,
        UNLINKABLE_PSEUDONYMS,
        Some(("conditional one-time anonymity", false)),
    ),
    (Level::Forfeitable, Variant::Linkable, None, ELIMINABLE_TRANSACTION_PSEUDONYMS, None),
    (Level::Forfeitable, Variant::Unlinkable, None, UNLINKABLE_PSEUDONYMS, None),
    (
        Level::Unconditional,
        Variant::Linkable,
        Some(("pen-name or anonymous identification", false)),
        ELIMINABLE_TRANSACTION_PSEUDONYMS,
        Some(("unconditional persistent anonymity", false)),
    ),
    (
        Level::Unconditional,
        Variant::Unlinkable,
        Some(("no identification", false)),
        UNLINKABLE_PSEUDONYMS,
        Some(("unconditional one-time anonymity", false)),
    ),
];

fn cell(c: Cell) -> Option<Correspondence> {
    c.map(|(text, parenthesised)| Correspondence {
        text: text.to_owned(),
        parenthesised,
    })
}

/// Fails with `CLS-003` when the variant does not fit the level: levels 0 and
/// 1 take `none`, the others take `linkable` or `unlinkable`.
pub fn map_taxonomies(level: Level, variant: Variant) -> Result<TaxonomyMap, Diagnostic> {
    TABLE
        .iter()
        .find(|row| row.0 == level && row.1 == variant)
        .map(|&(_, _, fm, kp, seys)| TaxonomyMap {
            flinn_maurer: cell(fm),
            kohntopp_pfitzmann: cell(kp),
            seys: cell(seys),
        })
        .ok_or_else(|| {
            Diagnostic::error(
                codes::CLS_BAD_VARIANT,
                format!("variant '{variant}' does not apply to {}", level.abbr()),
            )
        })
}
