//! Named-entity tagging for Korean at the morpheme level: CoNLL-U I/O,
//! tag schemes, conversion between eojeol, syllable and morpheme
//! granularities, evaluation, corpus statistics and a CRF tagger.

pub mod conllu;
pub mod convert;
pub mod crf;
pub mod eval;
pub mod par;
pub mod scalar;
pub mod stats;
pub mod tagsets;

use num_rational::Ratio;

pub use conllu::MorphSentence;
pub use convert::{ConvertError, EojeolSentence, ExclusionPolicy, SyllableSentence};
pub use crf::{CrfError, CrfModel, FeatureTemplate, TrainConfig};
pub use eval::{evaluate, Report};
pub use scalar::{Real, Scalar};
pub use tagsets::{NeLabel, NeTag, Scheme};

pub type Crf = CrfModel<f64>;
pub type Crf32 = CrfModel<f32>;
pub type EvalReport = Report<f64>;
/// Scores kept as exact fractions.
pub type ExactReport = Report<Ratio<i64>>;
