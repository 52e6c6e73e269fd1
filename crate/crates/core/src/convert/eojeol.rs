use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::conllu::MorphSentence;
use crate::tagsets::{extract_entities, NeTag};

use super::{ensure_bio, ConvertError, EojeolSentence, ExclusionPolicy};

/// How a morpheme came to carry an entity tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CarrierKind {
    /// Sole morpheme of its eojeol.
    Direct,
    /// Leftmost morpheme allowed by the given exclusion tier.
    Leftmost { tier: usize },
    /// Continues the leftmost carrier's run of allowed morphemes.
    Extension { tier: usize },
    /// Lies between two carriers of the same entity.
    GapAbsorbed,
}

impl CarrierKind {
    pub fn tier(self) -> Option<usize> {
        match self {
            CarrierKind::Leftmost { tier } | CarrierKind::Extension { tier } => Some(tier),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub token_id: u32,
    /// 1-based eojeol (NE file row) index.
    pub eojeol: usize,
    pub kind: CarrierKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eoj2Morph {
    pub sentence: MorphSentence,
    /// One entry per tagged morpheme, in token order.
    pub trace: Vec<TraceEntry>,
}

fn word_surface(morph: &MorphSentence, spans: Range<usize>) -> String {
    morph.eojeols[spans]
        .iter()
        .map(|e| e.surface.as_str())
        .collect()
}

/// Token index ranges of each whitespace-delimited word.
fn word_tokens(morph: &MorphSentence) -> Vec<(Range<usize>, String)> {
    let mut offset = 0;
    morph
        .words()
        .into_iter()
        .map(|spans| {
            let n: usize = morph.eojeols[spans.clone()]
                .iter()
                .map(|e| e.tokens.len())
                .sum();
            let range = offset..offset + n;
            offset += n;
            (range, word_surface(morph, spans))
        })
        .collect()
}

/// Projects eojeol-level tags onto the morphemes of `morph`. Existing NE tags
/// on `morph` are ignored.
pub fn eoj2morph(
    ner: &EojeolSentence,
    morph: &MorphSentence,
    policy: &ExclusionPolicy,
) -> Result<Eoj2Morph, ConvertError> {
    let eojeol_tags = ner.ne_tags();
    ensure_bio(&eojeol_tags)?;
    let words = word_tokens(morph);
    if words.len() != ner.rows.len() {
        return Err(ConvertError::EojeolCount {
            ner: ner.rows.len(),
            morph: words.len(),
        });
    }
    for (i, (row, (_, surface))) in ner.rows.iter().zip(&words).enumerate() {
        if row.surface.trim() != surface {
            return Err(ConvertError::SurfaceMismatch {
                eojeol: i + 1,
                ner: row.surface.clone(),
                morph: surface.clone(),
            });
        }
    }

    let tokens: Vec<_> = morph.tokens().collect();
    let mut kinds: Vec<Option<CarrierKind>> = vec![None; tokens.len()];
    let mut word_of = vec![0; tokens.len()];
    for (w, (range, _)) in words.iter().enumerate() {
        for t in range.clone() {
            word_of[t] = w;
        }
        if eojeol_tags[w].is_outside() {
            continue;
        }
        if range.len() == 1 {
            kinds[range.start] = Some(CarrierKind::Direct);
            continue;
        }
        for tier in 0..policy.tiers().len() {
            let first = range.clone().find(|&t| !policy.excludes(tier, tokens[t]));
            if let Some(first) = first {
                kinds[first] = Some(CarrierKind::Leftmost { tier });
                for t in first + 1..range.end {
                    if policy.excludes(tier, tokens[t]) {
                        break;
                    }
                    kinds[t] = Some(CarrierKind::Extension { tier });
                }
                break;
            }
        }
    }

    let mut tags = vec![NeTag::Outside; tokens.len()];
    for entity in extract_entities(&eojeol_tags) {
        let first_tok = words[entity.start].0.start;
        let last_tok = words[entity.end].0.end;
        let carriers: Vec<usize> = (first_tok..last_tok)
            .filter(|&t| kinds[t].is_some())
            .collect();
        let (Some(&first), Some(&last)) = (carriers.first(), carriers.last()) else {
            continue;
        };
        tags[first] = NeTag::begin(&entity.label);
        for t in first + 1..=last {
            tags[t] = NeTag::inside(&entity.label);
            kinds[t].get_or_insert(CarrierKind::GapAbsorbed);
        }
    }

    let trace = kinds
        .iter()
        .enumerate()
        .filter_map(|(t, k)| {
            k.map(|kind| TraceEntry {
                token_id: tokens[t].id,
                eojeol: word_of[t] + 1,
                kind,
            })
        })
        .collect();
    let mut sentence = morph.clone();
    sentence.set_ne_tags(&tags);
    Ok(Eoj2Morph { sentence, trace })
}

/// Lifts morpheme tags to whole eojeols: `B` where an entity starts, `I`
/// where one continues.
pub fn morph2eoj(morph: &MorphSentence) -> Result<EojeolSentence, ConvertError> {
    let tags = morph.ne_tags();
    ensure_bio(&tags)?;
    let entities = extract_entities(&tags);
    let mut entity_of = vec![None; tags.len()];
    for (e, span) in entities.iter().enumerate() {
        for slot in &mut entity_of[span.start..=span.end] {
            *slot = Some(e);
        }
    }
    let mut rows = Vec::new();
    for (w, (range, surface)) in word_tokens(morph).into_iter().enumerate() {
        let mut present = entity_of[range.clone()].iter().flatten();
        let tag = match present.next() {
            None => NeTag::Outside,
            Some(&e) => {
                if present.any(|&other| other != e) {
                    return Err(ConvertError::Granularity {
                        eojeol: w + 1,
                        surface,
                    });
                }
                let span = &entities[e];
                if range.contains(&span.start) {
                    NeTag::begin(&span.label)
                } else {
                    NeTag::inside(&span.label)
                }
            }
        };
        rows.push((surface, tag));
    }
    Ok(EojeolSentence::new(rows))
}
