use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NeLabel, TagError};

/// Position marker of an entity tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Begin,
    Inside,
    End,
    Single,
}

impl Position {
    pub fn as_char(self) -> char {
        match self {
            Position::Begin => 'B',
            Position::Inside => 'I',
            Position::End => 'E',
            Position::Single => 'S',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'B' => Some(Position::Begin),
            'I' => Some(Position::Inside),
            'E' => Some(Position::End),
            'S' => Some(Position::Single),
            _ => None,
        }
    }
}

/// Tagging scheme of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Bio,
    Bioes,
}

impl Scheme {
    pub fn allows(self, position: Position) -> bool {
        match self {
            Scheme::Bio => matches!(position, Position::Begin | Position::Inside),
            Scheme::Bioes => true,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Bio => "bio",
            Scheme::Bioes => "bioes",
        })
    }
}

impl FromStr for Scheme {
    type Err = TagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bio" => Ok(Scheme::Bio),
            "bioes" => Ok(Scheme::Bioes),
            _ => Err(TagError::BadScheme(s.to_owned())),
        }
    }
}

/// A named-entity tag: Outside, or a positioned label like `B-LOC`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum NeTag {
    #[default]
    Outside,
    Entity {
        position: Position,
        label: NeLabel,
    },
}

impl NeTag {
    pub fn entity(position: Position, label: NeLabel) -> Self {
        NeTag::Entity { position, label }
    }

    pub fn begin(label: &NeLabel) -> Self {
        Self::entity(Position::Begin, label.clone())
    }

    pub fn inside(label: &NeLabel) -> Self {
        Self::entity(Position::Inside, label.clone())
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, NeTag::Outside)
    }

    pub fn position(&self) -> Option<Position> {
        match self {
            NeTag::Outside => None,
            NeTag::Entity { position, .. } => Some(*position),
        }
    }

    pub fn label(&self) -> Option<&NeLabel> {
        match self {
            NeTag::Outside => None,
            NeTag::Entity { label, .. } => Some(label),
        }
    }

    /// Same label with a different position marker.
    pub fn with_position(&self, position: Position) -> Self {
        match self {
            NeTag::Outside => NeTag::Outside,
            NeTag::Entity { label, .. } => NeTag::entity(position, label.clone()),
        }
    }

    /// Parses a tag, accepting `O`, `_` and `-` for Outside.
    pub fn parse(s: &str) -> Result<Self, TagError> {
        match s {
            "O" | "_" | "-" => return Ok(NeTag::Outside),
            _ => {}
        }
        let mut chars = s.chars();
        let position = chars.next().and_then(Position::from_char);
        match (position, chars.next()) {
            (Some(position), Some('-')) => {
                let label =
                    NeLabel::new(chars.as_str()).map_err(|_| TagError::BadTag(s.to_owned()))?;
                Ok(NeTag::entity(position, label))
            }
            _ => Err(TagError::BadTag(s.to_owned())),
        }
    }
}

impl FromStr for NeTag {
    type Err = TagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NeTag::parse(s)
    }
}

impl fmt::Display for NeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeTag::Outside => f.write_str("O"),
            NeTag::Entity { position, label } => write!(f, "{}-{}", position.as_char(), label),
        }
    }
}

impl Serialize for NeTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NeTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        NeTag::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Builds a tag sequence from string literals; panics on malformed input.
///
/// Intended for tests and fixtures.
pub fn tags(items: &[&str]) -> Vec<NeTag> {
    items
        .iter()
        .map(|s| NeTag::parse(s).unwrap_or_else(|e| panic!("{e}")))
        .collect()
}
