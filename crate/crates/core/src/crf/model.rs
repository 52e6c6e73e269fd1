use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::tagsets::{NeTag, Scheme};

use super::features::{sentence_features, Observation};
use super::template::FeatureTemplate;
use super::train::TrainConfig;
use super::CrfError;

pub const MODEL_FORMAT: &str = "morphner-crf";
pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub train_config: Option<TrainConfig>,
    /// Objective value after each epoch.
    pub epoch_objective: Vec<f64>,
    /// Pure label-transition weights are always present at offset 0.
    pub transition_bias: bool,
    pub optimizer: String,
}

/// Linear-chain CRF. Weight layout: a `K x K` transition block, then `K`
/// weights per unigram attribute and `K x K` per bigram attribute, at the
/// offsets recorded in the two indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct CrfModel<F> {
    pub format: String,
    pub version: u32,
    pub template: FeatureTemplate,
    pub labels: Vec<NeTag>,
    pub unigram: BTreeMap<String, usize>,
    pub bigram: BTreeMap<String, usize>,
    pub weights: Vec<F>,
    pub metadata: ModelMetadata,
}

/// A sentence mapped onto weight offsets; unknown attributes are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compiled {
    pub unigram: Vec<Vec<usize>>,
    pub bigram: Vec<Vec<usize>>,
}

impl Compiled {
    pub fn len(&self) -> usize {
        self.unigram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unigram.is_empty()
    }
}

/// Sorts labels with `O` first, then by label name and position.
pub fn label_alphabet<'a>(tags: impl IntoIterator<Item = &'a NeTag>) -> Vec<NeTag> {
    let mut set: Vec<NeTag> = tags.into_iter().cloned().collect();
    set.push(NeTag::Outside);
    set.sort_by(|a, b| {
        let key = |t: &NeTag| (t.label().map(|l| l.as_str().to_owned()), t.position());
        key(a).cmp(&key(b))
    });
    set.dedup();
    set
}

impl<F: Real> CrfModel<F> {
    /// A model with all-zero weights over the given alphabet and attributes.
    pub fn new(template: FeatureTemplate, labels: Vec<NeTag>) -> Self {
        let k = labels.len();
        CrfModel {
            format: MODEL_FORMAT.into(),
            version: MODEL_VERSION,
            template,
            labels,
            unigram: BTreeMap::new(),
            bigram: BTreeMap::new(),
            weights: vec![F::zero(); k * k],
            metadata: ModelMetadata {
                transition_bias: true,
                ..Default::default()
            },
        }
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, tag: &NeTag) -> Option<usize> {
        self.labels.iter().position(|l| l == tag)
    }

    pub fn transition_offset(&self, prev: usize, cur: usize) -> usize {
        prev * self.num_labels() + cur
    }

    /// Registers the attributes of `seq`, growing the weight vector.
    pub fn add_attributes(&mut self, seq: &[Observation]) {
        let k = self.num_labels();
        for (i, (uni, bi)) in sentence_features(seq, &self.template)
            .into_iter()
            .enumerate()
        {
            for f in uni {
                if !self.unigram.contains_key(&f) {
                    self.unigram.insert(f, self.weights.len());
                    self.weights.resize(self.weights.len() + k, F::zero());
                }
            }
            // position 0 has no previous label
            for f in bi.into_iter().filter(|_| i > 0) {
                if !self.bigram.contains_key(&f) {
                    self.bigram.insert(f, self.weights.len());
                    self.weights.resize(self.weights.len() + k * k, F::zero());
                }
            }
        }
    }

    pub fn compile(&self, seq: &[Observation]) -> Compiled {
        let mut unigram = Vec::with_capacity(seq.len());
        let mut bigram = Vec::with_capacity(seq.len());
        for (i, (uni, bi)) in sentence_features(seq, &self.template)
            .into_iter()
            .enumerate()
        {
            unigram.push(
                uni.iter()
                    .filter_map(|f| self.unigram.get(f).copied())
                    .collect(),
            );
            let bi = if i == 0 {
                Vec::new()
            } else {
                bi.iter()
                    .filter_map(|f| self.bigram.get(f).copied())
                    .collect()
            };
            bigram.push(bi);
        }
        Compiled { unigram, bigram }
    }

    pub fn label_indices(&self, tags: &[NeTag]) -> Result<Vec<usize>, CrfError> {
        tags.iter()
            .map(|t| {
                self.label_index(t)
                    .ok_or_else(|| CrfError::UnknownLabel(t.to_string()))
            })
            .collect()
    }

    /// Scheme implied by the alphabet.
    pub fn scheme(&self) -> Scheme {
        crate::tagsets::detect_scheme(&self.labels).unwrap_or(Scheme::Bio)
    }

    pub fn check(&self) -> Result<(), CrfError> {
        let bad = |m: String| Err(CrfError::Model(m));
        if self.format != MODEL_FORMAT {
            return bad(format!("not a model file (format `{}`)", self.format));
        }
        if self.version != MODEL_VERSION {
            return bad(format!("unsupported model version {}", self.version));
        }
        let k = self.num_labels();
        if k == 0 || !self.labels.contains(&NeTag::Outside) {
            return bad("label alphabet must contain O".into());
        }
        let expected = k * k + k * self.unigram.len() + k * k * self.bigram.len();
        if self.weights.len() != expected {
            return bad(format!(
                "expected {expected} weights, found {}",
                self.weights.len()
            ));
        }
        let mut blocks: Vec<(usize, usize)> = self.unigram.values().map(|&o| (o, k)).collect();
        blocks.extend(self.bigram.values().map(|&o| (o, k * k)));
        blocks.sort_unstable();
        let mut next = k * k;
        for (o, len) in blocks {
            if o != next {
                return bad(format!(
                    "feature block at offset {o} overlaps or leaves a gap"
                ));
            }
            next += len;
        }
        Ok(())
    }

    pub fn to_writer<W: Write>(&self, w: W) -> Result<(), CrfError> {
        serde_json::to_writer(w, self).map_err(|e| CrfError::Model(e.to_string()))
    }

    pub fn from_reader<R: Read>(r: R) -> Result<Self, CrfError> {
        let model: Self = serde_json::from_reader(r).map_err(|e| CrfError::Model(e.to_string()))?;
        model.check()?;
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CrfError> {
        Self::from_reader(s.as_bytes())
    }
}
