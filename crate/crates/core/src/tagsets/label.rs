use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::TagError;

/// An entity category such as `LOC` or `PER`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NeLabel(String);

impl NeLabel {
    /// Builds a label without checking it against any inventory.
    ///
    /// Labels must be non-empty and must not contain whitespace or `-`
    /// boundaries that would make `B-<label>` ambiguous on re-reading.
    pub fn new(name: impl Into<String>) -> Result<Self, TagError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace()) || name == "_" {
            return Err(TagError::BadLabel(name));
        }
        Ok(NeLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The 14 categories of the NAVER corpus.
pub const NAVER_LABELS: [&str; 14] = [
    "AFW", "ANM", "CVL", "DAT", "EVT", "FLD", "LOC", "MAT", "NUM", "ORG", "PER", "PLT", "TIM",
    "TRM",
];

/// The 6 categories of the KLUE NER corpus.
pub const KLUE_LABELS: [&str; 6] = ["DT", "LC", "OG", "PS", "QT", "TI"];

/// A closed inventory of entity labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSet {
    labels: BTreeSet<NeLabel>,
}

impl LabelSet {
    pub fn naver() -> Self {
        Self::from_names(NAVER_LABELS).expect("static labels are valid")
    }

    pub fn klue() -> Self {
        Self::from_names(KLUE_LABELS).expect("static labels are valid")
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, TagError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels = names
            .into_iter()
            .map(NeLabel::new)
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(LabelSet { labels })
    }

    /// Reads a label-set file: one label per line; blank lines and `#` comments are skipped.
    pub fn read<R: BufRead>(reader: R) -> Result<Self, TagError> {
        let mut names = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| TagError::Io(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            names.push(line.to_owned());
        }
        Self::from_names(names)
    }

    pub fn contains(&self, label: &NeLabel) -> bool {
        self.labels.contains(label)
    }

    pub fn get(&self, name: &str) -> Option<&NeLabel> {
        self.labels.iter().find(|l| l.as_str() == name)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NeLabel> {
        self.labels.iter()
    }
}

impl Default for LabelSet {
    fn default() -> Self {
        Self::naver()
    }
}
