use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morphner::conllu::Mode;
use morphner::convert::SyllableLayout;
use morphner::crf::{TrainConfig, DEFAULT_SEED};
use morphner::eval::BackConvert;
use morphner::tagsets::Scheme;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "morphner",
    version,
    about = "Morpheme-level Korean NER corpus toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Move NE annotation between eojeol, syllable and morpheme corpora.
    Convert(ConvertArgs),
    /// Entity-level precision, recall and F1 in conlleval layout.
    Eval(EvalArgs),
    /// Distribution of postpositions following each entity type.
    Stats(StatsArgs),
    /// Fit a CRF tagger.
    Train(TrainArgs),
    /// Tag a corpus with a trained CRF.
    Tag(TagArgs),
    /// Rewrite tags between BIO and BIOES.
    Scheme(SchemeArgs),
    /// Check that a corpus parses and its tag sequences are well formed.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Eojeol,
    Syllable,
    Morpheme,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    #[default]
    Canonical,
    #[value(name = "figure2-compat", alias = "compat")]
    Figure2Compat,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Canonical => Mode::Canonical,
            ModeArg::Figure2Compat => Mode::Figure2Compat,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutArg {
    /// Whitespace rows between eojeols.
    #[default]
    Spaced,
    Compact,
}

impl From<LayoutArg> for SyllableLayout {
    fn from(l: LayoutArg) -> SyllableLayout {
        match l {
            LayoutArg::Spaced => SyllableLayout::Spaced,
            LayoutArg::Compact => SyllableLayout::Compact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Bio,
    Bioes,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Bio => Scheme::Bio,
            SchemeArg::Bioes => Scheme::Bioes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BackArg {
    Eojeol,
    Syllable,
}

impl From<BackArg> for BackConvert {
    fn from(b: BackArg) -> BackConvert {
        match b {
            BackArg::Eojeol => BackConvert::Eojeol,
            BackArg::Syllable => BackConvert::Syllable,
        }
    }
}

impl From<BackArg> for Format {
    fn from(b: BackArg) -> Format {
        match b {
            BackArg::Eojeol => Format::Eojeol,
            BackArg::Syllable => Format::Syllable,
        }
    }
}

/// Options shared by every command.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Worker threads; 0 means one per core. Output order never changes.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// NE label inventory: `naver`, `klue`, or a file with one label per line.
    #[arg(long, default_value = "naver")]
    pub labels: String,
    /// Accept any NE label and XPOS symbol.
    #[arg(long)]
    pub unchecked: bool,
    /// Where NE tags live in CoNLL-U files.
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    /// Run manifest path (default: next to the main output file).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub from: Format,
    #[arg(long, value_enum)]
    pub to: Format,
    /// NE-tagged eojeol or syllable TSV (forward conversion only).
    #[arg(long)]
    pub ner: Option<PathBuf>,
    /// CoNLL-U morpheme corpus: the analysis for forward conversion, the tagged input otherwise.
    #[arg(long)]
    pub morph: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Syllable output layout.
    #[arg(long, value_enum, default_value_t)]
    pub layout: LayoutArg,
    /// Exclusion tiers for eojeol input: `;`-separated UPOS lists, e.g. `ADP,PUNCT;ADP;`.
    #[arg(long)]
    pub policy: Option<String>,
    /// Write per-sentence carrier traces (JSON lines) for eojeol input.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Skipped-sentence log (default: next to the output file).
    #[arg(long)]
    pub skipped_log: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    pub gold: PathBuf,
    pub pred: PathBuf,
    /// Format of both files; with `--back-convert` it defaults to the target format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Score morpheme predictions after converting them to the gold file's format.
    #[arg(long, value_enum)]
    pub back_convert: Option<BackArg>,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct StatsArgs {
    /// CoNLL-U corpus with NE tags and XPOS.
    pub input: PathBuf,
    /// Text table; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Plot data as `label,tag,percentage` rows.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct TrainArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Model file to write.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Feature template with `# Unigram` and `# Bigram` sections (default: word window).
    #[arg(long)]
    pub template: Option<PathBuf>,
    #[arg(long, default_value_t = TrainConfig::default().epochs)]
    pub epochs: usize,
    #[arg(long, default_value_t = TrainConfig::default().l2_strength)]
    pub l2: f64,
    #[arg(long, default_value_t = TrainConfig::default().learning_rate)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = TrainConfig::default().batch_size)]
    pub batch_size: usize,
    /// Shuffling seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct TagArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Only produce tag sequences that are valid in the model's scheme.
    #[arg(long)]
    pub constrained: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct SchemeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    #[arg(long, value_enum)]
    pub to: SchemeArg,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Scheme to check against (default: detected per sentence).
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[command(flatten)]
    pub common: Common,
}
