//! The morpheme-based CoNLL-U format: one row per morpheme, with multiword
//! range lines (`1-2 프랑스의`) preserving the eojeol each morpheme came from.
//!
//! Two layouts are supported. [`Mode::Canonical`] keeps ten standard columns
//! and stores the NE tag as `NE=B-LOC` in MISC, omitting it for Outside.
//! [`Mode::Figure2Compat`] writes the NE tag into the FEATS slot right after
//! XPOS, with `_` for Outside.

mod read;
mod types;
mod write;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tagsets::TagError;

pub use read::{parse_conllu, ConlluReader, ParseOptions};
pub use types::{surface_text, EojeolSpan, MorphSentence, MorphToken};
pub use write::{write_conllu, write_sentence};

/// Column layout for the NE annotation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Canonical,
    Figure2Compat,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Canonical => "canonical",
            Mode::Figure2Compat => "figure2-compat",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(Mode::Canonical),
            "figure2-compat" | "compat" => Ok(Mode::Figure2Compat),
            other => Err(format!("unknown CoNLL-U mode `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConlluError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {message}")]
    Structure { line: usize, message: String },
    #[error("line {line}: {source}")]
    Vocabulary { line: usize, source: TagError },
    #[error("sentence {}: {message}", sent_id.as_deref().unwrap_or("<unnamed>"))]
    Invariant {
        sent_id: Option<String>,
        message: String,
    },
}
