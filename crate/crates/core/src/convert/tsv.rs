//! Eojeol-based (NAVER) and syllable-based TSV corpora.

use std::io::{self, BufRead, Write};
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tagsets::{LabelSet, NeTag, TagError};

#[derive(Debug, Error)]
pub enum TsvError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: {source}")]
    Vocabulary {
        line: usize,
        #[source]
        source: TagError,
    },
}

impl TsvError {
    pub fn line(&self) -> Option<usize> {
        match self {
            TsvError::Io(_) => None,
            TsvError::Format { line, .. } | TsvError::Vocabulary { line, .. } => Some(*line),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EojeolRow {
    pub index: u32,
    pub surface: String,
    pub tag: NeTag,
}

/// One sentence of an eojeol-based corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EojeolSentence {
    pub rows: Vec<EojeolRow>,
}

impl EojeolSentence {
    /// Numbers rows from 1.
    pub fn new<S: Into<String>>(rows: impl IntoIterator<Item = (S, NeTag)>) -> Self {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, (surface, tag))| EojeolRow {
                index: i as u32 + 1,
                surface: surface.into(),
                tag,
            })
            .collect();
        EojeolSentence { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ne_tags(&self) -> Vec<NeTag> {
        self.rows.iter().map(|r| r.tag.clone()).collect()
    }

    /// Surfaces joined with single spaces.
    pub fn text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableRow {
    pub index: u32,
    pub syllable: char,
    pub tag: NeTag,
}

impl SyllableRow {
    pub fn is_space(&self) -> bool {
        self.syllable.is_whitespace()
    }
}

/// One sentence of a syllable-based corpus. Rows holding whitespace mark
/// eojeol boundaries and are never tagged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableSentence {
    pub rows: Vec<SyllableRow>,
}

impl SyllableSentence {
    pub fn new(rows: impl IntoIterator<Item = (char, NeTag)>) -> Self {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, (syllable, tag))| SyllableRow {
                index: i as u32 + 1,
                syllable,
                tag,
            })
            .collect();
        SyllableSentence { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_space_rows(&self) -> bool {
        self.rows.iter().any(SyllableRow::is_space)
    }

    /// Tags of the non-whitespace rows.
    pub fn ne_tags(&self) -> Vec<NeTag> {
        self.rows
            .iter()
            .filter(|r| !r.is_space())
            .map(|r| r.tag.clone())
            .collect()
    }

    pub fn text(&self) -> String {
        self.rows.iter().map(|r| r.syllable).collect()
    }
}

/// Row layout shared by both TSV formats.
pub trait TsvRecord: Sized {
    fn parse_row(index: u32, field: &str, tag: NeTag, line: usize) -> Result<Self, TsvError>;
    fn index(&self) -> u32;
    fn field(&self) -> String;
    fn tag(&self) -> &NeTag;
}

impl TsvRecord for EojeolRow {
    fn parse_row(index: u32, field: &str, tag: NeTag, line: usize) -> Result<Self, TsvError> {
        let surface = field.trim();
        if surface.is_empty() || surface.contains(char::is_whitespace) {
            return Err(TsvError::Format {
                line,
                message: format!("eojeol {field:?} must be non-empty and contain no whitespace"),
            });
        }
        Ok(EojeolRow {
            index,
            surface: surface.to_owned(),
            tag,
        })
    }

    fn index(&self) -> u32 {
        self.index
    }

    fn field(&self) -> String {
        self.surface.clone()
    }

    fn tag(&self) -> &NeTag {
        &self.tag
    }
}

impl TsvRecord for SyllableRow {
    fn parse_row(index: u32, field: &str, tag: NeTag, line: usize) -> Result<Self, TsvError> {
        let mut chars = field.chars();
        match (chars.next(), chars.next()) {
            (Some(syllable), None) => {
                if syllable.is_whitespace() && !tag.is_outside() {
                    return Err(TsvError::Format {
                        line,
                        message: format!("whitespace row carries tag {tag}"),
                    });
                }
                Ok(SyllableRow {
                    index,
                    syllable,
                    tag,
                })
            }
            _ => Err(TsvError::Format {
                line,
                message: format!("syllable column {field:?} must hold exactly one character"),
            }),
        }
    }

    fn index(&self) -> u32 {
        self.index
    }

    fn field(&self) -> String {
        self.syllable.to_string()
    }

    fn tag(&self) -> &NeTag {
        &self.tag
    }
}

pub trait TsvSentence: Sized {
    type Row: TsvRecord;
    fn from_rows(rows: Vec<Self::Row>) -> Self;
    fn rows(&self) -> &[Self::Row];
}

impl TsvSentence for EojeolSentence {
    type Row = EojeolRow;
    fn from_rows(rows: Vec<EojeolRow>) -> Self {
        EojeolSentence { rows }
    }
    fn rows(&self) -> &[EojeolRow] {
        &self.rows
    }
}

impl TsvSentence for SyllableSentence {
    type Row = SyllableRow;
    fn from_rows(rows: Vec<SyllableRow>) -> Self {
        SyllableSentence { rows }
    }
    fn rows(&self) -> &[SyllableRow] {
        &self.rows
    }
}

/// Streaming reader over blank-line separated sentences.
pub struct TsvReader<R, S> {
    reader: R,
    labels: Option<LabelSet>,
    line_no: usize,
    buf: String,
    done: bool,
    _sentence: PhantomData<S>,
}

pub type EojeolReader<R> = TsvReader<R, EojeolSentence>;
pub type SyllableReader<R> = TsvReader<R, SyllableSentence>;

impl<R: BufRead, S: TsvSentence> TsvReader<R, S> {
    /// When `labels` is given, entity labels must belong to it.
    pub fn new(reader: R, labels: Option<LabelSet>) -> Self {
        TsvReader {
            reader,
            labels,
            line_no: 0,
            buf: String::new(),
            done: false,
            _sentence: PhantomData,
        }
    }

    fn parse_line(&self, line: &str, expected: u32) -> Result<S::Row, TsvError> {
        let line_no = self.line_no;
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(TsvError::Format {
                line: line_no,
                message: format!("expected 3 tab-separated columns, found {}", cols.len()),
            });
        }
        let index: u32 = cols[0].trim().parse().map_err(|_| TsvError::Format {
            line: line_no,
            message: format!("invalid index `{}`", cols[0]),
        })?;
        if index != expected {
            return Err(TsvError::Format {
                line: line_no,
                message: format!("index {index} breaks the sequence (expected {expected})"),
            });
        }
        let tag = NeTag::parse(cols[2].trim()).map_err(|source| TsvError::Vocabulary {
            line: line_no,
            source,
        })?;
        if let (Some(labels), Some(label)) = (&self.labels, tag.label()) {
            if !labels.contains(label) {
                return Err(TsvError::Vocabulary {
                    line: line_no,
                    source: TagError::UnknownLabel(label.to_string()),
                });
            }
        }
        S::Row::parse_row(index, cols[1], tag, line_no)
    }

    fn read_sentence(&mut self) -> Result<Option<S>, TsvError> {
        let mut rows = Vec::new();
        loop {
            self.buf.clear();
            if self.reader.read_line(&mut self.buf)? == 0 {
                self.done = true;
                return Ok((!rows.is_empty()).then(|| S::from_rows(rows)));
            }
            self.line_no += 1;
            let line = self.buf.trim_end_matches(['\n', '\r']).to_owned();
            if line.trim().is_empty() && !line.contains('\t') {
                if rows.is_empty() {
                    continue;
                }
                return Ok(Some(S::from_rows(rows)));
            }
            match self.parse_line(&line, rows.len() as u32 + 1) {
                Ok(row) => rows.push(row),
                Err(e) => {
                    self.skip_to_blank();
                    return Err(e);
                }
            }
        }
    }

    fn skip_to_blank(&mut self) {
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) | Err(_) => {
                    self.done = true;
                    return;
                }
                Ok(_) => {
                    self.line_no += 1;
                    if self.buf.trim().is_empty() && !self.buf.contains('\t') {
                        return;
                    }
                }
            }
        }
    }
}

impl<R: BufRead, S: TsvSentence> Iterator for TsvReader<R, S> {
    type Item = Result<S, TsvError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_sentence() {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => None,
            Err(e) => {
                if matches!(e, TsvError::Io(_)) {
                    self.done = true;
                }
                Some(Err(e))
            }
        }
    }
}

pub fn parse_eojeol_tsv(
    input: &str,
    labels: Option<&LabelSet>,
) -> Result<Vec<EojeolSentence>, TsvError> {
    EojeolReader::new(input.as_bytes(), labels.cloned()).collect()
}

pub fn parse_syllable_tsv(
    input: &str,
    labels: Option<&LabelSet>,
) -> Result<Vec<SyllableSentence>, TsvError> {
    SyllableReader::new(input.as_bytes(), labels.cloned()).collect()
}

/// Spelling of the Outside tag on output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsvStyle {
    pub outside: String,
}

impl TsvStyle {
    /// `O` for Outside.
    pub fn eojeol() -> Self {
        TsvStyle {
            outside: "O".into(),
        }
    }

    /// `_` for Outside, as in the KLUE-style syllable tables.
    pub fn syllable() -> Self {
        TsvStyle {
            outside: "_".into(),
        }
    }
}

pub fn write_tsv_sentence<W: Write, S: TsvSentence>(
    out: &mut W,
    sentence: &S,
    style: &TsvStyle,
) -> io::Result<()> {
    for row in sentence.rows() {
        let tag = row.tag();
        if tag.is_outside() {
            writeln!(out, "{}\t{}\t{}", row.index(), row.field(), style.outside)?;
        } else {
            writeln!(out, "{}\t{}\t{}", row.index(), row.field(), tag)?;
        }
    }
    writeln!(out)
}

pub fn write_tsv<S: TsvSentence>(sentences: &[S], style: &TsvStyle) -> String {
    let mut out = Vec::new();
    for s in sentences {
        write_tsv_sentence(&mut out, s, style).expect("writing to memory cannot fail");
    }
    String::from_utf8(out).expect("TSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagsets::tags;

    const FRANCE_NAVER: &str = include_str!("../../tests/data/france.naver.tsv");
    const FRANCE_SYLLABLE: &str = include_str!("../../tests/data/france.syllable.tsv");

    #[test]
    fn goldens_round_trip() {
        let naver = parse_eojeol_tsv(FRANCE_NAVER, Some(&LabelSet::naver())).unwrap();
        assert_eq!(naver[0].rows[0].surface, "프랑스의");
        assert_eq!(write_tsv(&naver, &TsvStyle::eojeol()), FRANCE_NAVER);
        let syl = parse_syllable_tsv(FRANCE_SYLLABLE, None).unwrap();
        assert_eq!(syl[0].text(), "프랑스의");
        assert_eq!(write_tsv(&syl, &TsvStyle::syllable()), FRANCE_SYLLABLE);
    }

    #[test]
    fn outside_spellings() {
        let s = parse_eojeol_tsv("1\t서울\t-\n2\t에\tO\n", None).unwrap();
        assert_eq!(s[0].ne_tags(), tags(&["O", "O"]));
        let s = parse_syllable_tsv("1\t서\t_\n2\t \tO\n3\t울\tO\n", None).unwrap();
        assert!(s[0].has_space_rows());
        assert_eq!(s[0].ne_tags().len(), 2);
    }

    #[test]
    fn several_sentences_and_blank_runs() {
        let doc = "\n1\t서울\tB-LOC\n\n\n1\t부산\tB-LOC\n2\t간다\tO\n";
        let s = parse_eojeol_tsv(doc, None).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].text(), "부산 간다");
    }

    #[test]
    fn format_errors_carry_lines() {
        let err = parse_eojeol_tsv("1\t서울\tB-LOC\n3\t에\tO\n", None).unwrap_err();
        assert_eq!(err.line(), Some(2));
        let err = parse_syllable_tsv("1\t서울\tO\n", None).unwrap_err();
        assert_eq!(err.line(), Some(1));
        let err = parse_syllable_tsv("1\t \tB-LOC\n", None).unwrap_err();
        assert_eq!(err.line(), Some(1));
        let err = parse_eojeol_tsv("1\t서울\tB-CITY\n", Some(&LabelSet::naver())).unwrap_err();
        assert!(matches!(err, TsvError::Vocabulary { line: 1, .. }));
    }

    #[test]
    fn reader_resumes_after_bad_sentence() {
        let doc = "1\t서울\n2\t에\tO\n\n1\t부산\tO\n";
        let results: Vec<_> = EojeolReader::new(doc.as_bytes(), None).collect();
        assert_eq!(results.len(), 2);
        assert!(results[0].is_err());
        assert_eq!(results[1].as_ref().unwrap().rows[0].surface, "부산");
    }
}
