//! Corpus statistics: what follows named entities, and how many there are.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::conllu::MorphSentence;
use crate::eval::Tagged;
use crate::scalar::{format_2dp, percent, Scalar};
use crate::tagsets::{extract_entities, NeLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("sentence {sentence}, token {token}: no XPOS tag")]
    MissingXpos { sentence: usize, token: u32 },
}

/// What comes right after an entity: a specific postposition class, or
/// anything else (including the end of the sentence).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Follower {
    Postposition(String),
    None,
}

impl fmt::Display for Follower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Follower::Postposition(x) => f.write_str(x),
            Follower::None => f.write_str("NONE"),
        }
    }
}

/// Follower counts per entity label. Denominators are entity spans.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PostposDistribution {
    pub counts: BTreeMap<NeLabel, BTreeMap<Follower, usize>>,
    pub support: BTreeMap<NeLabel, usize>,
}

impl PostposDistribution {
    fn merge(mut self, other: Self) -> Self {
        for (label, row) in other.counts {
            let mine = self.counts.entry(label).or_default();
            for (f, n) in row {
                *mine.entry(f).or_default() += n;
            }
        }
        for (label, n) in other.support {
            *self.support.entry(label).or_default() += n;
        }
        self
    }

    /// Percentage of each label's spans followed by each follower class.
    pub fn table<S: Scalar>(&self) -> BTreeMap<NeLabel, BTreeMap<Follower, S>> {
        self.counts
            .iter()
            .map(|(label, row)| {
                let total = self.support[label];
                (
                    label.clone(),
                    row.iter()
                        .map(|(f, &n)| (f.clone(), percent(n, total)))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn percentage<S: Scalar>(&self, label: &str, follower: &str) -> S {
        let Some((label, row)) = self.counts.iter().find(|(l, _)| l.as_str() == label) else {
            return S::zero();
        };
        let n = row
            .iter()
            .find(|(f, _)| f.to_string() == follower)
            .map_or(0, |(_, &n)| n);
        percent(n, self.support[label])
    }

    /// `label,tag,percentage` rows for external charting.
    pub fn plot_csv<S: Scalar>(&self) -> String {
        let mut out = String::from("label,tag,percentage\n");
        for (label, row) in self.table::<S>() {
            for (f, p) in row {
                let _ = writeln!(out, "{label},{f},{}", format_2dp(p));
            }
        }
        out
    }

    pub fn to_text<S: Scalar>(&self) -> String {
        let mut out = String::new();
        for (label, row) in self.table::<S>() {
            let _ = writeln!(out, "{label} (n={})", self.support[&label]);
            for (f, p) in row {
                let _ = writeln!(out, "  {:<6} {:>6}", f.to_string(), format_2dp(p));
            }
        }
        out
    }

    pub fn to_json<S: Scalar>(&self) -> Value {
        let table: serde_json::Map<String, Value> = self
            .table::<S>()
            .into_iter()
            .map(|(label, row)| {
                let row: serde_json::Map<String, Value> = row
                    .into_iter()
                    .map(|(f, p)| (f.to_string(), json!(p.to_f64())))
                    .collect();
                (label.to_string(), Value::Object(row))
            })
            .collect();
        let counts: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(label, row)| {
                let row: serde_json::Map<String, Value> =
                    row.iter().map(|(f, n)| (f.to_string(), json!(n))).collect();
                (label.to_string(), Value::Object(row))
            })
            .collect();
        let support: serde_json::Map<String, Value> = self
            .support
            .iter()
            .map(|(l, n)| (l.to_string(), json!(n)))
            .collect();
        json!({
            "denominator": "entity spans",
            "follower": "first morpheme after the span; sentence end counts as NONE",
            "table": table,
            "counts": counts,
            "support": support,
        })
    }
}

fn sentence_followers(index: usize, s: &MorphSentence) -> Result<PostposDistribution, StatsError> {
    let tokens: Vec<_> = s.tokens().collect();
    if let Some(t) = tokens.iter().find(|t| t.xpos.is_none()) {
        return Err(StatsError::MissingXpos {
            sentence: index + 1,
            token: t.id,
        });
    }
    let mut out = PostposDistribution::default();
    for span in extract_entities(&s.ne_tags()) {
        let follower = match tokens.get(span.end + 1).and_then(|t| t.xpos.as_ref()) {
            Some(x) if x.is_postposition() => Follower::Postposition(x.as_str().to_owned()),
            _ => Follower::None,
        };
        *out.counts
            .entry(span.label.clone())
            .or_default()
            .entry(follower)
            .or_default() += 1;
        *out.support.entry(span.label).or_default() += 1;
    }
    Ok(out)
}

/// For every entity span, the XPOS class of the next morpheme: J* tags are
/// kept apart, everything else is `NONE`.
pub fn postpos_distribution(corpus: &[MorphSentence]) -> Result<PostposDistribution, StatsError> {
    corpus
        .par_iter()
        .enumerate()
        .map(|(i, s)| sentence_followers(i, s))
        .try_reduce(PostposDistribution::default, |a, b| Ok(a.merge(b)))
}

/// Entity spans per label.
pub fn label_inventory_report<T: Tagged + Sync>(corpus: &[T]) -> BTreeMap<NeLabel, usize> {
    corpus
        .par_iter()
        .map(|s| {
            let mut m = BTreeMap::new();
            for span in extract_entities(&s.ne_tags()) {
                *m.entry(span.label).or_default() += 1;
            }
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (l, n) in b {
                *a.entry(l).or_default() += n;
            }
            a
        })
}
