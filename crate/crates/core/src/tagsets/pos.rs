use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TagError;

/// Universal POS tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum UposTag {
    Adj,
    Adp,
    Adv,
    Aux,
    Cconj,
    Det,
    Intj,
    Noun,
    Num,
    Part,
    Pron,
    Propn,
    Punct,
    Sconj,
    Sym,
    Verb,
    X,
}

impl UposTag {
    pub const ALL: [UposTag; 17] = [
        UposTag::Adj,
        UposTag::Adp,
        UposTag::Adv,
        UposTag::Aux,
        UposTag::Cconj,
        UposTag::Det,
        UposTag::Intj,
        UposTag::Noun,
        UposTag::Num,
        UposTag::Part,
        UposTag::Pron,
        UposTag::Propn,
        UposTag::Punct,
        UposTag::Sconj,
        UposTag::Sym,
        UposTag::Verb,
        UposTag::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UposTag::Adj => "ADJ",
            UposTag::Adp => "ADP",
            UposTag::Adv => "ADV",
            UposTag::Aux => "AUX",
            UposTag::Cconj => "CCONJ",
            UposTag::Det => "DET",
            UposTag::Intj => "INTJ",
            UposTag::Noun => "NOUN",
            UposTag::Num => "NUM",
            UposTag::Part => "PART",
            UposTag::Pron => "PRON",
            UposTag::Propn => "PROPN",
            UposTag::Punct => "PUNCT",
            UposTag::Sconj => "SCONJ",
            UposTag::Sym => "SYM",
            UposTag::Verb => "VERB",
            UposTag::X => "X",
        }
    }
}

impl fmt::Display for UposTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for UposTag {
    type Err = TagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UposTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| TagError::UnknownUpos(s.to_owned()))
    }
}

/// Language-specific POS tag (Sejong symbols by default).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct XposTag(String);

impl XposTag {
    pub fn new(symbol: impl Into<String>) -> Self {
        XposTag(symbol.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Sejong postpositions (josa) all start with `J`.
    pub fn is_postposition(&self) -> bool {
        self.0.starts_with('J')
    }
}

impl fmt::Display for XposTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sejong tag symbols.
pub const SEJONG_XPOS: [&str; 45] = [
    "NNG", "NNP", "NNB", "NP", "NR", "VV", "VA", "VX", "VCP", "VCN", "MM", "MAG", "MAJ", "IC",
    "JKS", "JKC", "JKG", "JKO", "JKB", "JKV", "JKQ", "JX", "JC", "EP", "EF", "EC", "ETN", "ETM",
    "XPN", "XSN", "XSV", "XSA", "XR", "SF", "SP", "SS", "SE", "SO", "SW", "SL", "SH", "SN", "NF",
    "NV", "NA",
];

/// Closed XPOS inventory used for vocabulary checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XposInventory {
    symbols: BTreeSet<String>,
}

impl XposInventory {
    pub fn sejong() -> Self {
        Self::from_symbols(SEJONG_XPOS)
    }

    pub fn from_symbols<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        XposInventory {
            symbols: symbols.into_iter().map(Into::into).collect(),
        }
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self, TagError> {
        let mut symbols = BTreeSet::new();
        for line in reader.lines() {
            let line = line.map_err(|e| TagError::Io(e.to_string()))?;
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                symbols.insert(line.to_owned());
            }
        }
        Ok(XposInventory { symbols })
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains(symbol)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn check(&self, symbol: &str) -> Result<XposTag, TagError> {
        if self.contains(symbol) {
            Ok(XposTag::new(symbol))
        } else {
            Err(TagError::UnknownXpos(symbol.to_owned()))
        }
    }
}

impl Default for XposInventory {
    fn default() -> Self {
        Self::sejong()
    }
}
