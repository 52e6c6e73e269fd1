//! Entity-level precision, recall and F1 with conlleval chunk semantics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::conllu::MorphSentence;
use crate::convert::{morph2eoj, morph2syl, EojeolSentence, SyllableLayout, SyllableSentence};
use crate::scalar::{f_measure, format_2dp, percent, Scalar};
use crate::tagsets::{detect_scheme, extract_entities, NeLabel, NeTag, Scheme};

/// Anything carrying one NE tag per token.
pub trait Tagged {
    fn ne_tags(&self) -> Vec<NeTag>;
}

impl Tagged for MorphSentence {
    fn ne_tags(&self) -> Vec<NeTag> {
        MorphSentence::ne_tags(self)
    }
}

impl Tagged for EojeolSentence {
    fn ne_tags(&self) -> Vec<NeTag> {
        EojeolSentence::ne_tags(self)
    }
}

/// Whitespace rows are not tokens.
impl Tagged for SyllableSentence {
    fn ne_tags(&self) -> Vec<NeTag> {
        SyllableSentence::ne_tags(self)
    }
}

impl Tagged for Vec<NeTag> {
    fn ne_tags(&self) -> Vec<NeTag> {
        self.clone()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("gold has {gold} sentences but predictions have {pred}")]
    SentenceCount { gold: usize, pred: usize },
    #[error("sentence {sentence}: gold has {gold} tokens but prediction has {pred}")]
    TokenCount {
        sentence: usize,
        gold: usize,
        pred: usize,
    },
    #[error("gold uses {gold} but predictions use {pred}")]
    SchemeMismatch { gold: Scheme, pred: Scheme },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub gold: usize,
    pub pred: usize,
    pub correct: usize,
}

impl Counts {
    fn add(&mut self, other: Counts) {
        self.gold += other.gold;
        self.pred += other.pred;
        self.correct += other.correct;
    }

    pub fn score<S: Scalar>(&self) -> Score<S> {
        let precision = percent(self.correct, self.pred);
        let recall = percent(self.correct, self.gold);
        Score {
            counts: *self,
            precision,
            recall,
            f1: f_measure(precision, recall),
        }
    }
}

/// Raw counts; merging two tallies is associative and commutative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub per_label: BTreeMap<NeLabel, Counts>,
    pub tokens: usize,
    pub tokens_correct: usize,
    pub sentences: usize,
}

impl Tally {
    pub fn add_sentence(&mut self, gold: &[NeTag], pred: &[NeTag]) {
        debug_assert_eq!(gold.len(), pred.len());
        self.sentences += 1;
        self.tokens += gold.len();
        self.tokens_correct += gold.iter().zip(pred).filter(|(g, p)| g == p).count();
        let gold_spans = extract_entities(gold);
        let pred_spans = extract_entities(pred);
        for span in &gold_spans {
            self.per_label.entry(span.label.clone()).or_default().gold += 1;
        }
        for span in &pred_spans {
            let entry = self.per_label.entry(span.label.clone()).or_default();
            entry.pred += 1;
            // both lists are sorted by start and non-overlapping
            if gold_spans
                .binary_search_by(|g| g.start.cmp(&span.start))
                .is_ok_and(|i| gold_spans[i] == *span)
            {
                entry.correct += 1;
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (label, c) in other.per_label {
            self.per_label.entry(label).or_default().add(c);
        }
        self.tokens += other.tokens;
        self.tokens_correct += other.tokens_correct;
        self.sentences += other.sentences;
        self
    }

    pub fn overall(&self) -> Counts {
        let mut total = Counts::default();
        for c in self.per_label.values() {
            total.add(*c);
        }
        total
    }

    pub fn report<S: Scalar>(&self) -> Report<S> {
        let token_accuracy = if self.tokens == 0 {
            S::zero()
        } else {
            S::from_count(self.tokens_correct) / S::from_count(self.tokens)
        };
        Report {
            per_label: self
                .per_label
                .iter()
                .map(|(l, c)| (l.clone(), c.score()))
                .collect(),
            overall: self.overall().score(),
            token_accuracy,
            tokens: self.tokens,
            sentences: self.sentences,
            excluded: Vec::new(),
        }
    }
}

/// Counts and percentages for one label or for all of them.
#[derive(Clone, Debug, PartialEq)]
pub struct Score<S> {
    pub counts: Counts,
    pub precision: S,
    pub recall: S,
    pub f1: S,
}

/// A sentence left out of a cross-format evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Excluded {
    /// 1-based sentence index.
    pub sentence: usize,
    pub reason: String,
}

/// Evaluation result; percentages in `[0, 100]`, token accuracy in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Report<S> {
    pub per_label: BTreeMap<NeLabel, Score<S>>,
    pub overall: Score<S>,
    pub token_accuracy: S,
    pub tokens: usize,
    pub sentences: usize,
    pub excluded: Vec<Excluded>,
}

fn check_pair(gold: &[Vec<NeTag>], pred: &[Vec<NeTag>]) -> Result<(), EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    for (i, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.len() != p.len() {
            return Err(EvalError::TokenCount {
                sentence: i + 1,
                gold: g.len(),
                pred: p.len(),
            });
        }
    }
    if let (Some(g), Some(p)) = (
        detect_scheme(gold.iter().flatten()),
        detect_scheme(pred.iter().flatten()),
    ) {
        if g != p {
            return Err(EvalError::SchemeMismatch { gold: g, pred: p });
        }
    }
    Ok(())
}

/// Counts over aligned tag sequences.
pub fn tally(gold: &[Vec<NeTag>], pred: &[Vec<NeTag>]) -> Result<Tally, EvalError> {
    check_pair(gold, pred)?;
    Ok(gold
        .par_iter()
        .zip(pred)
        .fold(Tally::default, |mut t, (g, p)| {
            t.add_sentence(g, p);
            t
        })
        .reduce(Tally::default, Tally::merge))
}

pub fn evaluate<S: Scalar, G: Tagged, P: Tagged>(
    gold: &[G],
    pred: &[P],
) -> Result<Report<S>, EvalError> {
    let gold: Vec<_> = gold.iter().map(Tagged::ne_tags).collect();
    let pred: Vec<_> = pred.iter().map(Tagged::ne_tags).collect();
    Ok(tally(&gold, &pred)?.report())
}

/// Format that morpheme predictions are converted back to before scoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackConvert {
    Eojeol,
    Syllable,
}

/// Scores morpheme-level predictions in the gold corpus's own format.
/// Sentences whose predictions cannot be converted back are left out of
/// both sides and listed in the report.
pub fn evaluate_cross_format<S: Scalar, G: Tagged>(
    gold: &[G],
    pred: &[MorphSentence],
    target: BackConvert,
) -> Result<Report<S>, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::SentenceCount {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let converted: Vec<_> = pred
        .par_iter()
        .map(|p| match target {
            BackConvert::Eojeol => morph2eoj(p).map(|s| s.ne_tags()),
            BackConvert::Syllable => morph2syl(p, SyllableLayout::Compact).map(|s| s.ne_tags()),
        })
        .collect();
    let mut gold_tags = Vec::new();
    let mut pred_tags = Vec::new();
    let mut excluded = Vec::new();
    for (i, (g, p)) in gold.iter().zip(converted).enumerate() {
        match p {
            Ok(p) => {
                gold_tags.push(g.ne_tags());
                pred_tags.push(p);
            }
            Err(e) => excluded.push(Excluded {
                sentence: i + 1,
                reason: e.to_string(),
            }),
        }
    }
    if let Err(EvalError::TokenCount {
        sentence,
        gold,
        pred,
    }) = check_pair(&gold_tags, &pred_tags)
    {
        // report the index in the original corpus
        let kept: Vec<usize> = (1..=pred_tags.len() + excluded.len())
            .filter(|i| !excluded.iter().any(|e| e.sentence == *i))
            .collect();
        return Err(EvalError::TokenCount {
            sentence: kept[sentence - 1],
            gold,
            pred,
        });
    }
    let mut report: Report<S> = tally(&gold_tags, &pred_tags)?.report();
    report.excluded = excluded;
    Ok(report)
}

fn pct<S: Scalar>(x: S) -> String {
    format!("{:>6}", format_2dp(x))
}

impl<S: Scalar> Report<S> {
    /// Text report in the layout of the conlleval script.
    pub fn to_conlleval(&self) -> String {
        let o = &self.overall;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "processed {} tokens with {} phrases; found: {} phrases; correct: {}.",
            self.tokens, o.counts.gold, o.counts.pred, o.counts.correct
        );
        if !self.excluded.is_empty() {
            let _ = writeln!(
                out,
                "excluded {} sentences that could not be converted back.",
                self.excluded.len()
            );
        }
        let accuracy = self.token_accuracy * S::from_count(100);
        let _ = writeln!(
            out,
            "accuracy: {}%; precision: {}%; recall: {}%; FB1: {}",
            pct(accuracy),
            pct(o.precision),
            pct(o.recall),
            pct(o.f1)
        );
        for (label, s) in &self.per_label {
            let _ = writeln!(
                out,
                "{:>17}: precision: {}%; recall: {}%; FB1: {}  {}",
                label.as_str(),
                pct(s.precision),
                pct(s.recall),
                pct(s.f1),
                s.counts.pred
            );
        }
        out
    }

    /// Structured form: floats plus the two-decimal strings shown in the
    /// text report.
    pub fn to_json(&self) -> Value {
        fn score<S: Scalar>(s: &Score<S>) -> Value {
            json!({
                "gold": s.counts.gold,
                "pred": s.counts.pred,
                "correct": s.counts.correct,
                "precision": s.precision.to_f64(),
                "recall": s.recall.to_f64(),
                "f1": s.f1.to_f64(),
                "display": {
                    "precision": format_2dp(s.precision),
                    "recall": format_2dp(s.recall),
                    "f1": format_2dp(s.f1),
                },
            })
        }
        let per_label: Vec<Value> = self
            .per_label
            .iter()
            .map(|(label, s)| {
                let mut v = score(s);
                v["label"] = json!(label.as_str());
                v
            })
            .collect();
        json!({
            "overall": score(&self.overall),
            "per_label": per_label,
            "token_accuracy": self.token_accuracy.to_f64(),
            "tokens": self.tokens,
            "sentences": self.sentences,
            "excluded": self.excluded,
        })
    }
}
