use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use morphner::conllu::{
    write_sentence, ConlluError, ConlluReader, Mode, MorphSentence, ParseOptions,
};
use morphner::convert::{
    write_tsv_sentence, EojeolReader, EojeolSentence, SyllableReader, SyllableSentence, TsvError,
    TsvStyle,
};
use morphner::crf::{eojeol_observations, morph_observations, syllable_observations, Observation};
use morphner::eval::Tagged;
use morphner::tagsets::{LabelSet, NeTag, Vocabulary, XposInventory};
use serde::Serialize;

use crate::args::{Common, Format};

pub const EXIT_UNREADABLE: u8 = 2;
pub const EXIT_FORMAT: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// A hard error and the exit status it maps to.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn unreadable(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_UNREADABLE,
            message: format!("{}: {e}", path.display()),
        }
    }

    pub fn format(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FORMAT,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Sentence {
    Eojeol(EojeolSentence),
    Syllable(SyllableSentence),
    Morph(MorphSentence),
}

impl Sentence {
    pub fn id(&self) -> Option<&str> {
        match self {
            Sentence::Morph(s) => s.sent_id.as_deref(),
            _ => None,
        }
    }

    pub fn set_tags(&mut self, tags: &[NeTag]) {
        match self {
            Sentence::Eojeol(s) => {
                for (row, t) in s.rows.iter_mut().zip(tags) {
                    row.tag = t.clone();
                }
            }
            Sentence::Syllable(s) => {
                for (row, t) in s.rows.iter_mut().filter(|r| !r.is_space()).zip(tags) {
                    row.tag = t.clone();
                }
            }
            Sentence::Morph(s) => s.set_ne_tags(tags),
        }
    }

    pub fn observations(&self) -> Vec<Observation> {
        match self {
            Sentence::Eojeol(s) => eojeol_observations(s),
            Sentence::Syllable(s) => syllable_observations(s),
            Sentence::Morph(s) => morph_observations(s),
        }
    }

    pub fn into_morph(self) -> Option<MorphSentence> {
        match self {
            Sentence::Morph(s) => Some(s),
            _ => None,
        }
    }
}

impl Tagged for Sentence {
    fn ne_tags(&self) -> Vec<NeTag> {
        match self {
            Sentence::Eojeol(s) => s.ne_tags(),
            Sentence::Syllable(s) => s.ne_tags(),
            Sentence::Morph(s) => s.ne_tags(),
        }
    }
}

/// Reader settings derived from the common options.
#[derive(Clone, Debug)]
pub struct Settings {
    pub mode: Mode,
    pub labels: Option<LabelSet>,
}

impl Settings {
    pub fn from_common(c: &Common) -> Result<Self, Failure> {
        let labels = if c.unchecked {
            None
        } else {
            Some(match c.labels.as_str() {
                "naver" => LabelSet::naver(),
                "klue" => LabelSet::klue(),
                path => {
                    let path = Path::new(path);
                    let file = File::open(path).map_err(|e| Failure::unreadable(path, e))?;
                    LabelSet::read(BufReader::new(file))
                        .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?
                }
            })
        };
        Ok(Settings {
            mode: c.mode.into(),
            labels,
        })
    }
}

pub type Sentences = Box<dyn Iterator<Item = Result<Sentence, Failure>>>;

fn conllu_failure(path: &Path, e: ConlluError) -> Failure {
    match e {
        ConlluError::Io(e) => Failure::unreadable(path, e),
        e => Failure::format(format!("{}: {e}", path.display())),
    }
}

fn tsv_failure(path: &Path, e: TsvError) -> Failure {
    match e {
        TsvError::Io(e) => Failure::unreadable(path, e),
        e => Failure::format(format!("{}: {e}", path.display())),
    }
}

/// Streams the sentences of `path`; bad sentences come through as errors
/// and reading resumes after them.
pub fn read(path: &Path, format: Format, settings: &Settings) -> Result<Sentences, Failure> {
    let file = File::open(path).map_err(|e| Failure::unreadable(path, e))?;
    let reader = BufReader::new(file);
    let p: PathBuf = path.to_owned();
    Ok(match format {
        Format::Morpheme => {
            let options = match &settings.labels {
                Some(labels) => ParseOptions {
                    mode: settings.mode,
                    vocabulary: Some(Vocabulary {
                        labels: labels.clone(),
                        xpos: XposInventory::sejong(),
                    }),
                },
                None => ParseOptions::unchecked(settings.mode),
            };
            Box::new(
                ConlluReader::new(reader, options)
                    .map(move |r| r.map(Sentence::Morph).map_err(|e| conllu_failure(&p, e))),
            )
        }
        Format::Eojeol => Box::new(
            EojeolReader::new(reader, settings.labels.clone())
                .map(move |r| r.map(Sentence::Eojeol).map_err(|e| tsv_failure(&p, e))),
        ),
        Format::Syllable => Box::new(
            SyllableReader::new(reader, settings.labels.clone())
                .map(move |r| r.map(Sentence::Syllable).map_err(|e| tsv_failure(&p, e))),
        ),
    })
}

/// Reads a whole corpus, stopping at the first error.
pub fn read_all(
    path: &Path,
    format: Format,
    settings: &Settings,
) -> Result<Vec<Sentence>, Failure> {
    read(path, format, settings)?.collect()
}

/// Buffered output to a file, or to stdout.
pub struct Output {
    inner: Box<dyn Write>,
    pub path: Option<PathBuf>,
}

impl Output {
    pub fn create(path: Option<&Path>) -> Result<Self, Failure> {
        match path {
            Some(p) if p != Path::new("-") => {
                let file = File::create(p).map_err(|e| Failure::unreadable(p, e))?;
                Ok(Output {
                    inner: Box::new(BufWriter::new(file)),
                    path: Some(p.to_owned()),
                })
            }
            _ => Ok(Output {
                inner: Box::new(BufWriter::new(io::stdout().lock())),
                path: None,
            }),
        }
    }

    fn io_failure(&self, e: io::Error) -> Failure {
        let name = self.path.as_deref().unwrap_or(Path::new("<stdout>"));
        Failure::unreadable(name, e)
    }

    pub fn write_sentence(&mut self, s: &Sentence, mode: Mode) -> Result<(), Failure> {
        let r = match s {
            Sentence::Eojeol(s) => write_tsv_sentence(&mut self.inner, s, &TsvStyle::eojeol()),
            Sentence::Syllable(s) => write_tsv_sentence(&mut self.inner, s, &TsvStyle::syllable()),
            Sentence::Morph(s) => match write_sentence(&mut self.inner, s, mode) {
                Ok(()) => Ok(()),
                Err(ConlluError::Io(e)) => Err(e),
                Err(e) => return Err(Failure::format(e.to_string())),
            },
        };
        r.map_err(|e| self.io_failure(e))
    }

    pub fn write_str(&mut self, s: &str) -> Result<(), Failure> {
        self.inner
            .write_all(s.as_bytes())
            .map_err(|e| self.io_failure(e))
    }

    pub fn finish(mut self) -> Result<(), Failure> {
        self.inner.flush().map_err(|e| self.io_failure(e))
    }
}

/// Writes a whole file at once.
pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::unreadable(path, e))
}

/// `out.conllu` + `.manifest.json` gives `out.conllu.manifest.json`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}
