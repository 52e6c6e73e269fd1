use serde::{Deserialize, Serialize};

use crate::conllu::{EojeolSpan, MorphSentence};
use crate::tagsets::{extract_entities, NeLabel, NeTag, Span};

use super::align::{align, Coverage};
use super::{ensure_bio, ConvertError, SyllableSentence};

/// Whether syllable output has a whitespace row between eojeols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SyllableLayout {
    #[default]
    Spaced,
    Compact,
}

fn first_divergence(
    a: impl IntoIterator<Item = char>,
    b: impl IntoIterator<Item = char>,
) -> Option<ConvertError> {
    let (mut a, mut b) = (a.into_iter(), b.into_iter());
    let mut offset = 0;
    loop {
        match (a.next(), b.next()) {
            (None, None) => return None,
            (x, y) if x != y => {
                return Some(ConvertError::CharMismatch {
                    offset,
                    ner: x,
                    morph: y,
                })
            }
            _ => offset += 1,
        }
    }
}

fn coverage(span: &EojeolSpan) -> Option<Coverage> {
    let forms: Vec<&str> = span.tokens.iter().map(|t| t.form.as_str()).collect();
    align(&span.surface, &forms)
}

fn contraction(index: usize, span: &EojeolSpan) -> ConvertError {
    ConvertError::Contraction {
        eojeol: index + 1,
        surface: span.surface.clone(),
    }
}

/// The common value of an iterator, if all items agree.
fn uniform<T: PartialEq>(mut items: impl Iterator<Item = T>) -> Option<T> {
    let first = items.next()?;
    items.all(|x| x == first).then_some(first)
}

/// Per-item entity indices back to BIO tags.
fn entity_tags(assignment: &[Option<usize>], entities: &[Span]) -> Vec<NeTag> {
    let label = |e: usize| -> &NeLabel { &entities[e].label };
    let mut prev = None;
    assignment
        .iter()
        .map(|&cur| {
            let tag = match cur {
                None => NeTag::Outside,
                Some(e) if prev == Some(e) => NeTag::inside(label(e)),
                Some(e) => NeTag::begin(label(e)),
            };
            prev = cur;
            tag
        })
        .collect()
}

fn entity_index(len: usize, entities: &[Span]) -> Vec<Option<usize>> {
    let mut out = vec![None; len];
    for (e, span) in entities.iter().enumerate() {
        for slot in &mut out[span.start..=span.end] {
            *slot = Some(e);
        }
    }
    out
}

/// Projects syllable-level tags onto morphemes by character overlap. Existing
/// NE tags on `morph` are ignored.
pub fn syl2morph(
    ner: &SyllableSentence,
    morph: &MorphSentence,
) -> Result<MorphSentence, ConvertError> {
    if let Some(row) = ner
        .rows
        .iter()
        .find(|r| r.is_space() && !r.tag.is_outside())
    {
        return Err(ConvertError::TaggedWhitespace { row: row.index });
    }
    let char_tags = ner.ne_tags();
    ensure_bio(&char_tags)?;
    let mismatch = if ner.has_space_rows() {
        first_divergence(ner.text().chars(), morph.text.chars())
    } else {
        let glued = morph.eojeols.iter().flat_map(|e| e.surface.chars());
        first_divergence(ner.rows.iter().map(|r| r.syllable), glued)
    };
    if let Some(err) = mismatch {
        return Err(err);
    }

    let entities = extract_entities(&char_tags);
    let char_entity = entity_index(char_tags.len(), &entities);
    let mut token_entity = Vec::with_capacity(morph.token_count());
    let mut base = 0;
    for (i, span) in morph.eojeols.iter().enumerate() {
        let n = span.surface.chars().count();
        let chars = &char_entity[base..base + n];
        match coverage(span) {
            Some(cov) => {
                for (token, range) in span.tokens.iter().zip(&cov.ranges) {
                    match uniform(chars[range.clone()].iter().copied()) {
                        Some(e) => token_entity.push(e),
                        _ if cov.exact => {
                            return Err(ConvertError::SplitMorpheme {
                                eojeol: i + 1,
                                token: token.id,
                            })
                        }
                        _ => return Err(contraction(i, span)),
                    }
                }
            }
            None => match uniform(chars.iter().copied()) {
                Some(e) => token_entity.extend(std::iter::repeat_n(e, span.tokens.len())),
                _ => return Err(contraction(i, span)),
            },
        }
        base += n;
    }

    let mut out = morph.clone();
    out.set_ne_tags(&entity_tags(&token_entity, &entities));
    Ok(out)
}

/// Spreads morpheme tags over the syllables each morpheme occupies.
pub fn morph2syl(
    morph: &MorphSentence,
    layout: SyllableLayout,
) -> Result<SyllableSentence, ConvertError> {
    let tags = morph.ne_tags();
    ensure_bio(&tags)?;
    let entities = extract_entities(&tags);
    let token_entity = entity_index(tags.len(), &entities);

    let mut chars = Vec::new();
    let mut char_entity = Vec::new();
    let mut first_token = 0;
    for (i, span) in morph.eojeols.iter().enumerate() {
        let own = &token_entity[first_token..first_token + span.tokens.len()];
        first_token += span.tokens.len();
        let surface: Vec<char> = span.surface.chars().collect();
        match coverage(span) {
            Some(cov) => {
                for c in 0..surface.len() {
                    let covering = cov
                        .ranges
                        .iter()
                        .zip(own)
                        .filter(|(r, _)| r.contains(&c))
                        .map(|(_, &e)| e);
                    match uniform(covering) {
                        Some(e) => char_entity.push(e),
                        None => return Err(contraction(i, span)),
                    }
                }
            }
            None => match uniform(own.iter().copied()) {
                Some(e) => char_entity.extend(std::iter::repeat_n(e, surface.len())),
                _ => return Err(contraction(i, span)),
            },
        }
        chars.extend(surface);
        if layout == SyllableLayout::Spaced && span.space_after() && i + 1 < morph.eojeols.len() {
            chars.push(' ');
            char_entity.push(None);
        }
    }

    // whitespace rows never join an entity
    let mut rows = Vec::with_capacity(chars.len());
    let mut kept = Vec::new();
    for (c, e) in chars.iter().zip(&char_entity) {
        if !c.is_whitespace() {
            kept.push(*e);
        }
    }
    let mut kept_tags = entity_tags(&kept, &entities).into_iter();
    for c in chars {
        let tag = if c.is_whitespace() {
            NeTag::Outside
        } else {
            kept_tags.next().expect("one tag per syllable")
        };
        rows.push((c, tag));
    }
    Ok(SyllableSentence::new(rows))
}
