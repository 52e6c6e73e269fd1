use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CrfError;

/// Observation column a pattern item reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Word,
    Upos,
    Xpos,
}

impl Column {
    pub fn symbol(self) -> char {
        match self {
            Column::Word => 'w',
            Column::Upos => 'u',
            Column::Xpos => 'x',
        }
    }

    fn from_symbol(c: &str) -> Option<Self> {
        match c {
            "w" => Some(Column::Word),
            "u" => Some(Column::Upos),
            "x" => Some(Column::Xpos),
            _ => None,
        }
    }
}

/// A `/`-joined list of `column[offset]` items, e.g. `w[-1]/w[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub items: Vec<(Column, i32)>,
}

impl Pattern {
    pub fn new(items: impl IntoIterator<Item = (Column, i32)>) -> Self {
        Pattern {
            items: items.into_iter().collect(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (col, off)) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{}[{}]", col.symbol(), off)?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = CrfError;

    fn from_str(s: &str) -> Result<Self, CrfError> {
        let bad = || CrfError::Template(format!("malformed pattern `{s}`"));
        let mut items = Vec::new();
        for item in s.split('/') {
            let item = item.trim();
            let (col, rest) = item.split_once('[').ok_or_else(bad)?;
            let off = rest.strip_suffix(']').ok_or_else(bad)?;
            let col = Column::from_symbol(col.trim()).ok_or_else(bad)?;
            let off: i32 = off.trim().parse().map_err(|_| bad())?;
            items.push((col, off));
        }
        Ok(Pattern { items })
    }
}

/// Observation patterns. `unigram` patterns are conjoined with the current
/// label, `bigram` patterns with the (previous, current) label pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureTemplate {
    pub unigram: Vec<Pattern>,
    pub bigram: Vec<Pattern>,
}

const WINDOW: std::ops::RangeInclusive<i32> = -2..=2;

impl FeatureTemplate {
    /// Words at -2..=2 as unigrams; adjacent word pairs in that window as
    /// bigrams.
    pub fn words() -> Self {
        FeatureTemplate {
            unigram: WINDOW.map(|o| Pattern::new([(Column::Word, o)])).collect(),
            bigram: (-2..2)
                .map(|o| Pattern::new([(Column::Word, o), (Column::Word, o + 1)]))
                .collect(),
        }
    }

    /// Adds `column` at -2..=2 as unigram patterns.
    pub fn with_unigram_column(mut self, column: Column) -> Self {
        self.unigram
            .extend(WINDOW.map(|o| Pattern::new([(column, o)])));
        self
    }

    /// Adds adjacent `column` pairs in the window as bigram patterns.
    pub fn with_bigram_column(mut self, column: Column) -> Self {
        self.bigram
            .extend((-2..2).map(|o| Pattern::new([(column, o), (column, o + 1)])));
        self
    }

    pub fn columns(&self) -> impl Iterator<Item = Column> + '_ {
        self.unigram
            .iter()
            .chain(&self.bigram)
            .flat_map(|p| p.items.iter().map(|&(c, _)| c))
    }

    pub fn parse(text: &str) -> Result<Self, CrfError> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Unigram,
            Bigram,
        }
        let mut section = Section::None;
        let mut t = FeatureTemplate {
            unigram: Vec::new(),
            bigram: Vec::new(),
        };
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                match comment.trim().to_ascii_lowercase().as_str() {
                    "unigram" => section = Section::Unigram,
                    "bigram" => section = Section::Bigram,
                    _ => {}
                }
                continue;
            }
            let pattern: Pattern = line.parse().map_err(|_| {
                CrfError::Template(format!("line {}: malformed pattern `{line}`", n + 1))
            })?;
            match section {
                Section::Unigram => t.unigram.push(pattern),
                Section::Bigram => t.bigram.push(pattern),
                Section::None => {
                    return Err(CrfError::Template(format!(
                        "line {}: pattern before a `# Unigram` or `# Bigram` header",
                        n + 1
                    )))
                }
            }
        }
        Ok(t)
    }
}

impl Default for FeatureTemplate {
    fn default() -> Self {
        Self::words()
    }
}

impl fmt::Display for FeatureTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# Unigram")?;
        for p in &self.unigram {
            writeln!(f, "{p}")?;
        }
        writeln!(f)?;
        writeln!(f, "# Bigram")?;
        for p in &self.bigram {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for FeatureTemplate {
    type Err = CrfError;
    fn from_str(s: &str) -> Result<Self, CrfError> {
        Self::parse(s)
    }
}

impl Serialize for FeatureTemplate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FeatureTemplate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_template_text() {
        let text = FeatureTemplate::words().to_string();
        assert_eq!(
            text,
            "# Unigram\nw[-2]\nw[-1]\nw[0]\nw[1]\nw[2]\n\n# Bigram\nw[-2]/w[-1]\nw[-1]/w[0]\nw[0]/w[1]\nw[1]/w[2]\n"
        );
        assert_eq!(
            FeatureTemplate::parse(&text).unwrap(),
            FeatureTemplate::words()
        );
    }

    #[test]
    fn parse_accepts_comments_and_pos_columns() {
        let t =
            FeatureTemplate::parse("# features\n# Unigram\nu[0]\nx[-1]/w[0]\n# Bigram\n").unwrap();
        assert_eq!(t.unigram.len(), 2);
        assert_eq!(
            t.unigram[1].items,
            vec![(Column::Xpos, -1), (Column::Word, 0)]
        );
        assert!(t.bigram.is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(FeatureTemplate::parse("w[0]\n").is_err());
        assert!(FeatureTemplate::parse("# Unigram\nq[0]\n").is_err());
        assert!(FeatureTemplate::parse("# Unigram\nw[x]\n").is_err());
    }
}
