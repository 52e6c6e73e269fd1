//! Linear-chain CRF tagger with CRF++-style feature templates.

mod features;
mod inference;
mod model;
mod template;
mod train;

use thiserror::Error;

pub use features::{
    eojeol_observations, extract_features, morph_observations, sentence_features, sentinel,
    syllable_observations, Observation,
};
pub use inference::{Lattice, TransitionMask};
pub use model::{label_alphabet, Compiled, CrfModel, ModelMetadata, MODEL_FORMAT, MODEL_VERSION};
pub use template::{Column, FeatureTemplate, Pattern};
pub use train::{log_likelihood_and_gradient, train, Example, TrainConfig, DEFAULT_SEED};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrfError {
    #[error("label `{0}` is not in the model's alphabet")]
    UnknownLabel(String),
    #[error("sentence has {tokens} tokens but {tags} tags")]
    Length { tokens: usize, tags: usize },
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("invalid training configuration: {0}")]
    Config(String),
    #[error("template: {0}")]
    Template(String),
    #[error("model: {0}")]
    Model(String),
}
