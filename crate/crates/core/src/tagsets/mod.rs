//! Tag inventories and the BIO/BIOES tag algebra.

mod label;
mod pos;
mod scheme;
mod tag;

use thiserror::Error;

pub use label::{LabelSet, NeLabel, KLUE_LABELS, NAVER_LABELS};
pub use pos::{UposTag, XposInventory, XposTag, SEJONG_XPOS};
pub use scheme::{
    bio_to_bioes, bioes_to_bio, check_transition, convert_scheme, detect_scheme, extract_entities,
    extract_entities_strict, spans_to_bio, validate_sequence, Span, Violation, ViolationKind,
};
pub use tag::{tags, NeTag, Position, Scheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TagError {
    #[error("malformed NE tag `{0}`")]
    BadTag(String),
    #[error("invalid NE label `{0}`")]
    BadLabel(String),
    #[error("unknown NE label `{0}`")]
    UnknownLabel(String),
    #[error("unknown UPOS tag `{0}`")]
    UnknownUpos(String),
    #[error("unknown XPOS tag `{0}`")]
    UnknownXpos(String),
    #[error("unknown tagging scheme `{0}` (expected bio or bioes)")]
    BadScheme(String),
    #[error("reading inventory: {0}")]
    Io(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("sequence is not valid {scheme}: {}", join_violations(violations))]
    Invalid {
        scheme: Scheme,
        violations: Vec<Violation>,
    },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Tag vocabulary used when reading corpora.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    pub labels: LabelSet,
    pub xpos: XposInventory,
}

impl Vocabulary {
    /// Parses an NE tag and checks its label against the inventory.
    pub fn ne_tag(&self, s: &str) -> Result<NeTag, TagError> {
        let tag = NeTag::parse(s)?;
        match tag.label() {
            Some(label) if !self.labels.contains(label) => {
                Err(TagError::UnknownLabel(label.to_string()))
            }
            _ => Ok(tag),
        }
    }
}
