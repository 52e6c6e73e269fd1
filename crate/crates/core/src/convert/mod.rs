//! Conversion between eojeol-, syllable- and morpheme-based NE annotation.

pub mod align;
mod eojeol;
pub mod hangul;
mod policy;
mod syllable;
mod tsv;

use thiserror::Error;

use crate::tagsets::SchemeError;

pub use eojeol::{eoj2morph, morph2eoj, CarrierKind, Eoj2Morph, TraceEntry};
pub use policy::{category, ExclusionPolicy};
pub use syllable::{morph2syl, syl2morph, SyllableLayout};
pub use tsv::{
    parse_eojeol_tsv, parse_syllable_tsv, write_tsv, write_tsv_sentence, EojeolReader, EojeolRow,
    EojeolSentence, SyllableReader, SyllableRow, SyllableSentence, TsvError, TsvReader, TsvRecord,
    TsvSentence, TsvStyle,
};

/// Why a sentence could not be converted. Eojeol indices are 1-based.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConvertError {
    #[error("invalid exclusion policy: {0}")]
    Policy(String),
    #[error("input tags are not valid BIO: {0}")]
    InvalidTags(#[from] SchemeError),
    #[error("eojeol count differs: {ner} in the NE file, {morph} in the morpheme file")]
    EojeolCount { ner: usize, morph: usize },
    #[error("eojeol {eojeol}: `{ner}` does not match `{morph}`")]
    SurfaceMismatch {
        eojeol: usize,
        ner: String,
        morph: String,
    },
    #[error("character streams diverge at offset {offset}: {ner:?} vs {morph:?}")]
    CharMismatch {
        offset: usize,
        ner: Option<char>,
        morph: Option<char>,
    },
    #[error("whitespace row {row} carries an NE tag")]
    TaggedWhitespace { row: u32 },
    #[error("eojeol {eojeol} (`{surface}`): contracted morphemes cannot be aligned to the entity boundary")]
    Contraction { eojeol: usize, surface: String },
    #[error("eojeol {eojeol}: an entity boundary splits morpheme {token}")]
    SplitMorpheme { eojeol: usize, token: u32 },
    #[error("eojeol {eojeol} (`{surface}`) holds parts of two entities")]
    Granularity { eojeol: usize, surface: String },
}

impl ConvertError {
    /// Short machine-readable class name, used in skip logs.
    pub fn kind(&self) -> &'static str {
        match self {
            ConvertError::Policy(_) => "policy",
            ConvertError::InvalidTags(_) => "invalid-tags",
            ConvertError::EojeolCount { .. }
            | ConvertError::SurfaceMismatch { .. }
            | ConvertError::CharMismatch { .. } => "alignment",
            ConvertError::TaggedWhitespace { .. } => "tagged-whitespace",
            ConvertError::Contraction { .. } | ConvertError::SplitMorpheme { .. } => {
                "contraction-alignment"
            }
            ConvertError::Granularity { .. } => "granularity",
        }
    }
}


fn ensure_bio(tags: &[crate::tagsets::NeTag]) -> Result<(), ConvertError> {
    use crate::tagsets::{validate_sequence, Scheme};
    let violations = validate_sequence(tags, Scheme::Bio);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SchemeError::Invalid {
            scheme: Scheme::Bio,
            violations,
        }
        .into())
    }
}
