use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The five anonymity classes, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "LevelRepr", try_from = "LevelRepr")]
pub enum Level {
    Void,
    Apparent,
    Revocable,
    Forfeitable,
    Unconditional,
}

impl Level {
    pub const ALL: [Level; 5] = [
        Level::Void,
        Level::Apparent,
        Level::Revocable,
        Level::Forfeitable,
        Level::Unconditional,
    ];

    pub fn degree(self) -> u8 {
        self as u8
    }

    pub fn from_degree(degree: u8) -> Option<Level> {
        Level::ALL.get(usize::from(degree)).copied()
    }

    pub fn abbr(self) -> &'static str {
        match self {
            Level::Void => "VA",
            Level::Apparent => "AA",
            Level::Revocable => "RA",
            Level::Forfeitable => "FA",
            Level::Unconditional => "UA",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Void => "void",
            Level::Apparent => "apparent",
            Level::Revocable => "revocable",
            Level::Forfeitable => "forfeitable",
            Level::Unconditional => "unconditional",
        }
    }

    /// Levels 2 and 3 come in linkable and unlinkable variants, as does level 4.
    pub fn has_variants(self) -> bool {
        self >= Level::Revocable
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} anonymity)", self.abbr(), self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLevelError(String);

impl fmt::Display for ParseLevelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown anonymity level '{}' (expected 0-4 or VA, AA, RA, FA, UA)", self.0)
    }
}

impl std::error::Error for ParseLevelError {}

/// Accepts a degree (`2`) or an abbreviation (`RA`, case-insensitive).
impl FromStr for Level {
    type Err = ParseLevelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Ok(degree) = s.parse::<u8>() {
            return Level::from_degree(degree).ok_or_else(|| ParseLevelError(s.to_owned()));
        }
        Level::ALL
            .into_iter()
            .find(|l| l.abbr().eq_ignore_ascii_case(s))
            .ok_or_else(|| ParseLevelError(s.to_owned()))
    }
}

#[derive(Serialize, Deserialize)]
struct LevelRepr {
    degree: u8,
    abbr: String,
    name: String,
}

impl From<Level> for LevelRepr {
    fn from(level: Level) -> Self {
        LevelRepr {
            degree: level.degree(),
            abbr: level.abbr().to_owned(),
            name: level.name().to_owned(),
        }
    }
}

impl TryFrom<LevelRepr> for Level {
    type Error = ParseLevelError;

    fn try_from(repr: LevelRepr) -> Result<Self, Self::Error> {
        Level::from_degree(repr.degree).ok_or_else(|| ParseLevelError(repr.degree.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Linkable,
    Unlinkable,
    None,
}

impl Variant {
    pub fn keyword(self) -> &'static str {
        match self {
            Variant::Linkable => "linkable",
            Variant::Unlinkable => "unlinkable",
            Variant::None => "none",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linkable" => Ok(Variant::Linkable),
            "unlinkable" => Ok(Variant::Unlinkable),
            "none" => Ok(Variant::None),
            other => Err(format!("unknown variant '{other}' (expected linkable, unlinkable or none)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_parsing() {
        for level in Level::ALL {
            assert_eq!(Level::from_degree(level.degree()), Some(level));
            assert_eq!(level.abbr().parse::<Level>(), Ok(level));
            assert_eq!(level.degree().to_string().parse::<Level>(), Ok(level));
        }
        assert_eq!("ra".parse::<Level>(), Ok(Level::Revocable));
        assert!("5".parse::<Level>().is_err());
        assert!("XA".parse::<Level>().is_err());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&Level::Forfeitable).unwrap();
        assert_eq!(json, r#"{"degree":3,"abbr":"FA","name":"forfeitable"}"#);
        assert_eq!(serde_json::from_str::<Level>(&json).unwrap(), Level::Forfeitable);
        assert_eq!(serde_json::to_string(&Variant::None).unwrap(), r#""none""#);
    }
}
