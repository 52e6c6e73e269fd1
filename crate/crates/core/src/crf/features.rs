use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::conllu::MorphSentence;
use crate::convert::{EojeolSentence, SyllableSentence};

use super::template::{Column, FeatureTemplate};

/// One input token as the tagger sees it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub word: String,
    pub upos: Option<String>,
    pub xpos: Option<String>,
}

impl Observation {
    pub fn word(word: impl Into<String>) -> Self {
        Observation {
            word: word.into(),
            ..Default::default()
        }
    }

    fn get(&self, column: Column) -> Option<&str> {
        match column {
            Column::Word => Some(&self.word),
            Column::Upos => self.upos.as_deref(),
            Column::Xpos => self.xpos.as_deref(),
        }
    }
}

pub fn morph_observations(s: &MorphSentence) -> Vec<Observation> {
    s.tokens()
        .map(|t| Observation {
            word: t.form.clone(),
            upos: t.upos.map(|u| u.as_str().to_owned()),
            xpos: t.xpos.as_ref().map(|x| x.as_str().to_owned()),
        })
        .collect()
}

pub fn eojeol_observations(s: &EojeolSentence) -> Vec<Observation> {
    s.rows
        .iter()
        .map(|r| Observation::word(r.surface.clone()))
        .collect()
}

/// Whitespace rows are skipped.
pub fn syllable_observations(s: &SyllableSentence) -> Vec<Observation> {
    s.rows
        .iter()
        .filter(|r| !r.is_space())
        .map(|r| Observation::word(r.syllable.to_string()))
        .collect()
}

/// Context filler for positions before the start or past the end.
pub fn sentinel(offset_from_edge: i64) -> String {
    if offset_from_edge < 0 {
        format!("<BOS{}>", -offset_from_edge)
    } else {
        format!("<EOS{}>", offset_from_edge + 1)
    }
}

/// Features of every position; a pattern is used only when every token of
/// the sentence has the columns it reads.
pub fn sentence_features(
    seq: &[Observation],
    template: &FeatureTemplate,
) -> Vec<(Vec<String>, Vec<String>)> {
    let has = |c: Column| seq.iter().all(|o| o.get(c).is_some());
    let avail = [has(Column::Word), has(Column::Upos), has(Column::Xpos)];
    (0..seq.len())
        .map(|i| features_at(seq, i, template, &avail))
        .collect()
}

/// Unigram and bigram feature strings at `position`, in template order.
pub fn extract_features(
    seq: &[Observation],
    position: usize,
    template: &FeatureTemplate,
) -> (Vec<String>, Vec<String>) {
    let has = |c: Column| seq.iter().all(|o| o.get(c).is_some());
    features_at(
        seq,
        position,
        template,
        &[has(Column::Word), has(Column::Upos), has(Column::Xpos)],
    )
}

fn features_at(
    seq: &[Observation],
    i: usize,
    template: &FeatureTemplate,
    avail: &[bool; 3],
) -> (Vec<String>, Vec<String>) {
    let render = |prefix: char, k: usize, pattern: &super::template::Pattern| -> Option<String> {
        let mut s = String::new();
        let _ = write!(s, "{prefix}{k}:");
        for (j, &(col, off)) in pattern.items.iter().enumerate() {
            if !avail[col as usize] {
                return None;
            }
            if j > 0 {
                s.push('/');
            }
            let at = i as i64 + off as i64;
            if at < 0 {
                s.push_str(&sentinel(at));
            } else if at >= seq.len() as i64 {
                s.push_str(&sentinel(at - seq.len() as i64));
            } else {
                s.push_str(seq[at as usize].get(col).unwrap_or_default());
            }
        }
        Some(s)
    };
    let uni = template
        .unigram
        .iter()
        .enumerate()
        .filter_map(|(k, p)| render('U', k, p))
        .collect();
    let bi = template
        .bigram
        .iter()
        .enumerate()
        .filter_map(|(k, p)| render('B', k, p))
        .collect();
    (uni, bi)
}
