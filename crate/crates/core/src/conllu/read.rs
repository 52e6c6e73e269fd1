use std::io::BufRead;

use crate::tagsets::{NeTag, UposTag, Vocabulary, XposTag};

use super::types::{surface_text, EojeolSpan, MorphSentence, MorphToken};
use super::{ConlluError, Mode};

const NE_KEY: &str = "NE=";

/// Reader settings.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub mode: Mode,
    /// When set, NE labels and XPOS symbols must belong to these inventories.
    pub vocabulary: Option<Vocabulary>,
}

impl ParseOptions {
    pub fn new(mode: Mode) -> Self {
        ParseOptions {
            mode,
            vocabulary: Some(Vocabulary::default()),
        }
    }

    pub fn unchecked(mode: Mode) -> Self {
        ParseOptions {
            mode,
            vocabulary: None,
        }
    }
}

/// Parses a whole document held in memory.
pub fn parse_conllu(
    input: &str,
    options: &ParseOptions,
) -> Result<Vec<MorphSentence>, ConlluError> {
    ConlluReader::new(input.as_bytes(), options.clone()).collect()
}

/// Streaming sentence reader.
pub struct ConlluReader<R> {
    reader: R,
    options: ParseOptions,
    line_no: usize,
    buf: String,
    done: bool,
}

impl<R: BufRead> ConlluReader<R> {
    pub fn new(reader: R, options: ParseOptions) -> Self {
        ConlluReader {
            reader,
            options,
            line_no: 0,
            buf: String::new(),
            done: false,
        }
    }

    fn read_sentence(&mut self) -> Result<Option<MorphSentence>, ConlluError> {
        let mut builder = SentenceBuilder::default();
        loop {
            self.buf.clear();
            let n = match self.reader.read_line(&mut self.buf) {
                Ok(n) => n,
                Err(e) => {
                    self.done = true;
                    return Err(e.into());
                }
            };
            if n == 0 {
                self.done = true;
                return builder.finish(self.line_no);
            }
            self.line_no += 1;
            let line = self.buf.trim_end_matches(['\n', '\r']);
            if line.trim().is_empty() {
                if builder.is_empty() {
                    continue;
                }
                return builder.finish(self.line_no);
            }
            let line = line.to_owned();
            if let Err(e) = builder.push_line(&line, self.line_no, &self.options) {
                // Drop the rest of the broken sentence so iteration can resume.
                self.skip_to_blank();
                return Err(e);
            }
        }
    }
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = Result<MorphSentence, ConlluError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_sentence() {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => None,
            Err(e) => {
                if matches!(e, ConlluError::Io(_)) {
                    self.done = true;
                }
                Some(Err(e))
            }
        }
    }
}

impl<R: BufRead> ConlluReader<R> {
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
                    if self.buf.trim().is_empty() {
                        return;
                    }
                }
            }
        }
    }
}

struct PendingRange {
    start: u32,
    end: u32,
    surface: String,
    misc: Vec<String>,
    line: usize,
}

#[derive(Default)]
struct SentenceBuilder {
    sent_id: Option<String>,
    text: Option<String>,
    comments: Vec<String>,
    eojeols: Vec<EojeolSpan>,
    pending: Option<(PendingRange, Vec<MorphToken>)>,
    next_id: u32,
    saw_line: bool,
}

fn format_err(line: usize, message: impl Into<String>) -> ConlluError {
    ConlluError::Format {
        line,
        message: message.into(),
    }
}

fn structure_err(line: usize, message: impl Into<String>) -> ConlluError {
    ConlluError::Structure {
        line,
        message: message.into(),
    }
}

fn parse_id(s: &str, line: usize) -> Result<u32, ConlluError> {
    s.parse::<u32>()
        .ok()
        .filter(|&id| id > 0)
        .ok_or_else(|| format_err(line, format!("invalid token id `{s}`")))
}

fn split_misc(s: &str) -> Vec<String> {
    if s == "_" {
        Vec::new()
    } else {
        s.split('|').map(str::to_owned).collect()
    }
}

impl SentenceBuilder {
    fn is_empty(&self) -> bool {
        !self.saw_line
    }

    fn push_line(
        &mut self,
        line: &str,
        line_no: usize,
        options: &ParseOptions,
    ) -> Result<(), ConlluError> {
        self.saw_line = true;
        if let Some(comment) = line.strip_prefix('#') {
            return self.push_comment(comment);
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(format_err(
                line_no,
                format!("expected 10 tab-separated columns, found {}", cols.len()),
            ));
        }
        let id = cols[0];
        if id.contains('.') {
            return Err(format_err(
                line_no,
                format!("empty nodes are not supported (`{id}`)"),
            ));
        }
        if let Some((a, b)) = id.split_once('-') {
            let (start, end) = (parse_id(a, line_no)?, parse_id(b, line_no)?);
            return self.open_range(start, end, cols[1], split_misc(cols[9]), line_no);
        }
        let id = parse_id(id, line_no)?;
        let token = self.parse_token(id, &cols, line_no, options)?;
        self.push_token(token, line_no)
    }

    fn push_comment(&mut self, comment: &str) -> Result<(), ConlluError> {
        let trimmed = comment.trim_start();
        let keyed = |key: &str| {
            trimmed
                .strip_prefix(key)
                .map(str::trim_start)
                .and_then(|r| r.strip_prefix('='))
                .map(|v| v.strip_prefix(' ').unwrap_or(v).to_owned())
        };
        if let Some(v) = keyed("sent_id") {
            self.sent_id = Some(v);
        } else if let Some(v) = keyed("text") {
            self.text = Some(v);
        } else {
            self.comments.push(comment.to_owned());
        }
        Ok(())
    }

    fn open_range(
        &mut self,
        start: u32,
        end: u32,
        surface: &str,
        misc: Vec<String>,
        line: usize,
    ) -> Result<(), ConlluError> {
        if self.pending.is_some() {
            return Err(structure_err(
                line,
                format!("range {start}-{end} overlaps an open multiword token"),
            ));
        }
        if end <= start {
            return Err(structure_err(
                line,
                format!("range {start}-{end} must span at least two tokens"),
            ));
        }
        if start != self.next_id + 1 {
            return Err(structure_err(
                line,
                format!(
                    "range {start}-{end} does not start at the next token id {}",
                    self.next_id + 1
                ),
            ));
        }
        let range = PendingRange {
            start,
            end,
            surface: surface.to_owned(),
            misc,
            line,
        };
        self.pending = Some((range, Vec::new()));
        Ok(())
    }

    fn parse_token(
        &self,
        id: u32,
        cols: &[&str],
        line: usize,
        options: &ParseOptions,
    ) -> Result<MorphToken, ConlluError> {
        let vocab_err = |source| ConlluError::Vocabulary { line, source };
        let upos = match cols[3] {
            "_" => None,
            s => Some(s.parse::<UposTag>().map_err(vocab_err)?),
        };
        let xpos = match (cols[4], &options.vocabulary) {
            ("_", _) => None,
            (s, Some(v)) => Some(v.xpos.check(s).map_err(vocab_err)?),
            (s, None) => Some(XposTag::new(s)),
        };
        let mut misc = split_misc(cols[9]);
        let ne_field = match options.mode {
            Mode::Canonical => {
                let pos = misc.iter().position(|m| m.starts_with(NE_KEY));
                pos.map(|p| misc.remove(p)[NE_KEY.len()..].to_owned())
            }
            Mode::Figure2Compat => Some(cols[5].to_owned()),
        };
        let ne = match (ne_field, &options.vocabulary) {
            (None, _) => NeTag::Outside,
            (Some(s), Some(v)) => v.ne_tag(&s).map_err(vocab_err)?,
            (Some(s), None) => NeTag::parse(&s).map_err(vocab_err)?,
        };
        if cols[1].is_empty() || cols[2].is_empty() {
            return Err(format_err(line, "empty FORM or LEMMA"));
        }
        Ok(MorphToken {
            id,
            form: cols[1].to_owned(),
            lemma: cols[2].to_owned(),
            upos,
            xpos,
            ne,
            misc,
        })
    }

    fn push_token(&mut self, token: MorphToken, line: usize) -> Result<(), ConlluError> {
        if token.id != self.next_id + 1 {
            return Err(structure_err(
                line,
                format!(
                    "token id {} breaks the sequence (expected {})",
                    token.id,
                    self.next_id + 1
                ),
            ));
        }
        self.next_id = token.id;
        match self.pending.take() {
            Some((range, mut tokens)) => {
                let id = token.id;
                tokens.push(token);
                if id == range.end {
                    self.eojeols.push(EojeolSpan {
                        start_id: range.start,
                        end_id: range.end,
                        surface: range.surface,
                        misc: range.misc,
                        tokens,
                    });
                } else {
                    self.pending = Some((range, tokens));
                }
            }
            None => {
                let mut span = EojeolSpan::single(token);
                span.start_id = span.tokens[0].id;
                span.end_id = span.start_id;
                self.eojeols.push(span);
            }
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<Option<MorphSentence>, ConlluError> {
        if !self.saw_line {
            return Ok(None);
        }
        if let Some((range, _)) = &self.pending {
            return Err(structure_err(
                range.line,
                format!(
                    "range {}-{} is not followed by all of its tokens",
                    range.start, range.end
                ),
            ));
        }
        if self.eojeols.is_empty() {
            return Err(structure_err(line, "sentence has comments but no tokens"));
        }
        let text = self.text.unwrap_or_else(|| surface_text(&self.eojeols));
        let sentence = MorphSentence {
            sent_id: self.sent_id,
            text,
            comments: self.comments,
            eojeols: self.eojeols,
        };
        sentence.check()?;
        Ok(Some(sentence))
    }
}
