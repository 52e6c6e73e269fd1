//! Sequence-level tag algebra: well-formedness, BIO/BIOES conversion and
//! entity span extraction.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{NeLabel, NeTag, Position, Scheme, SchemeError};

/// Entity span over token indices, `end` inclusive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub label: NeLabel,
}

impl Span {
    pub fn new(start: usize, end: usize, label: NeLabel) -> Self {
        Span { start, end, label }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        self.start <= index && index <= self.end
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `E`/`S` used in a BIO sequence.
    PositionNotInScheme(char),
    /// `I-X` with no open entity.
    InsideWithoutBegin,
    /// `E-X` with no open entity.
    EndWithoutBegin,
    /// `I-X`/`E-X` continuing an entity of another label.
    LabelMismatch(char),
    /// BIOES entity opened by `B`/`I` and never closed by `E`.
    Unterminated,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::PositionNotInScheme(c) => write!(f, "{c} not allowed in this scheme"),
            ViolationKind::InsideWithoutBegin => f.write_str("I without matching B"),
            ViolationKind::EndWithoutBegin => f.write_str("E without matching B"),
            ViolationKind::LabelMismatch(c) => write!(f, "{c} label mismatch"),
            ViolationKind::Unterminated => f.write_str("entity not closed by E"),
        }
    }
}

/// One ill-formed transition. `index` is the position of the tag that cannot
/// follow its predecessor, or the sequence length for an unclosed final entity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.index, self.kind)
    }
}

/// Checks whether `cur` may follow `prev`. `None` stands for the sentence
/// boundary on either side.
pub fn check_transition(
    prev: Option<&NeTag>,
    cur: Option<&NeTag>,
    scheme: Scheme,
) -> Option<ViolationKind> {
    if let Some(NeTag::Entity { position, .. }) = cur {
        if !scheme.allows(*position) {
            return Some(ViolationKind::PositionNotInScheme(position.as_char()));
        }
    }
    let open = match prev {
        Some(NeTag::Entity { position, label }) => match (scheme, position) {
            (Scheme::Bio, _) => Some(label),
            (Scheme::Bioes, Position::Begin | Position::Inside) => Some(label),
            (Scheme::Bioes, _) => None,
        },
        _ => None,
    };
    let continuing = match cur {
        Some(NeTag::Entity { position, label }) => match position {
            Position::Inside | Position::End => Some((*position, label)),
            _ => None,
        },
        _ => None,
    };
    match (open, continuing) {
        (Some(open), Some((pos, label))) if open != label => {
            Some(ViolationKind::LabelMismatch(pos.as_char()))
        }
        (Some(_), Some(_)) => None,
        (None, Some((Position::Inside, _))) => Some(ViolationKind::InsideWithoutBegin),
        (None, Some(_)) => Some(ViolationKind::EndWithoutBegin),
        (Some(_), None) if scheme == Scheme::Bioes => Some(ViolationKind::Unterminated),
        _ => None,
    }
}

/// Lists every ill-formed transition; empty iff the sequence is well-formed.
pub fn validate_sequence(tags: &[NeTag], scheme: Scheme) -> Vec<Violation> {
    let mut violations = Vec::new();
    for i in 0..=tags.len() {
        let prev = i.checked_sub(1).map(|p| &tags[p]);
        if let Some(kind) = check_transition(prev, tags.get(i), scheme) {
            violations.push(Violation { index: i, kind });
        }
    }
    violations
}

fn ensure_valid(tags: &[NeTag], scheme: Scheme) -> Result<(), SchemeError> {
    let violations = validate_sequence(tags, scheme);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SchemeError::Invalid { scheme, violations })
    }
}

/// Rewrites a valid BIO sequence as BIOES.
pub fn bio_to_bioes(tags: &[NeTag]) -> Result<Vec<NeTag>, SchemeError> {
    ensure_valid(tags, Scheme::Bio)?;
    let out = tags
        .iter()
        .enumerate()
        .map(|(i, tag)| {
            let continues = matches!(
                tags.get(i + 1),
                Some(NeTag::Entity {
                    position: Position::Inside,
                    ..
                })
            );
            match tag.position() {
                None => NeTag::Outside,
                Some(Position::Begin) if continues => tag.clone(),
                Some(Position::Begin) => tag.with_position(Position::Single),
                Some(_) if continues => tag.clone(),
                Some(_) => tag.with_position(Position::End),
            }
        })
        .collect();
    Ok(out)
}

/// Rewrites a valid BIOES sequence as BIO.
pub fn bioes_to_bio(tags: &[NeTag]) -> Result<Vec<NeTag>, SchemeError> {
    ensure_valid(tags, Scheme::Bioes)?;
    Ok(tags
        .iter()
        .map(|tag| match tag.position() {
            Some(Position::Single) => tag.with_position(Position::Begin),
            Some(Position::End) => tag.with_position(Position::Inside),
            _ => tag.clone(),
        })
        .collect())
}

/// Converts to `scheme`, detecting the source scheme from the tags present.
pub fn convert_scheme(tags: &[NeTag], scheme: Scheme) -> Result<Vec<NeTag>, SchemeError> {
    match (detect_scheme(tags), scheme) {
        (Some(Scheme::Bioes), Scheme::Bio) => bioes_to_bio(tags),
        (Some(Scheme::Bioes), Scheme::Bioes) => {
            ensure_valid(tags, Scheme::Bioes)?;
            Ok(tags.to_vec())
        }
        (_, Scheme::Bioes) => bio_to_bioes(tags),
        (_, Scheme::Bio) => {
            ensure_valid(tags, Scheme::Bio)?;
            Ok(tags.to_vec())
        }
    }
}

/// `Some(Bioes)` if any `E`/`S` marker occurs, `Some(Bio)` if only `B`/`I`
/// occur, `None` for an entity-free sequence.
pub fn detect_scheme<'a>(tags: impl IntoIterator<Item = &'a NeTag>) -> Option<Scheme> {
    let mut seen = None;
    for tag in tags {
        match tag.position() {
            Some(Position::End | Position::Single) => return Some(Scheme::Bioes),
            Some(_) => seen = Some(Scheme::Bio),
            None => {}
        }
    }
    seen
}

fn split(tag: &NeTag) -> (char, Option<&NeLabel>) {
    match tag {
        NeTag::Outside => ('O', None),
        NeTag::Entity { position, label } => (position.as_char(), Some(label)),
    }
}

// Chunk boundary rules of the conlleval scorer, extended with E/S.
fn end_of_chunk(
    prev: char,
    cur: char,
    prev_label: Option<&NeLabel>,
    label: Option<&NeLabel>,
) -> bool {
    matches!(prev, 'E' | 'S')
        || matches!((prev, cur), ('B' | 'I', 'B' | 'S' | 'O'))
        || (prev != 'O' && prev_label != label)
}

fn start_of_chunk(
    prev: char,
    cur: char,
    prev_label: Option<&NeLabel>,
    label: Option<&NeLabel>,
) -> bool {
    matches!(cur, 'B' | 'S')
        || matches!((prev, cur), ('E' | 'S' | 'O', 'E' | 'I'))
        || (cur != 'O' && prev_label != label)
}

/// Extracts entity spans with conlleval semantics: an `I-X` after `O` or after
/// another label opens a new span instead of being rejected.
pub fn extract_entities(tags: &[NeTag]) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut open: Option<(usize, &NeLabel)> = None;
    let mut prev = ('O', None);
    for (i, tag) in tags.iter().enumerate() {
        let (cur, label) = split(tag);
        if let Some((start, open_label)) = open {
            if end_of_chunk(prev.0, cur, prev.1, label) {
                spans.push(Span::new(start, i - 1, open_label.clone()));
                open = None;
            }
        }
        if start_of_chunk(prev.0, cur, prev.1, label) {
            if let Some(label) = label {
                open = Some((i, label));
            }
        }
        prev = (cur, label);
    }
    if let Some((start, label)) = open {
        spans.push(Span::new(start, tags.len() - 1, label.clone()));
    }
    spans
}

/// Extracts spans only from a well-formed sequence.
pub fn extract_entities_strict(tags: &[NeTag], scheme: Scheme) -> Result<Vec<Span>, SchemeError> {
    ensure_valid(tags, scheme)?;
    Ok(extract_entities(tags))
}

/// BIO tags for `len` tokens covering the given non-overlapping spans.
pub fn spans_to_bio(len: usize, spans: &[Span]) -> Vec<NeTag> {
    let mut tags = vec![NeTag::Outside; len];
    for span in spans {
        tags[span.start] = NeTag::begin(&span.label);
        for tag in &mut tags[span.start + 1..=span.end] {
            *tag = NeTag::inside(&span.label);
        }
    }
    tags
}
