use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::corpus::{sidecar, write_file, Failure};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub read: usize,
    pub converted: usize,
    pub skipped: usize,
}

/// Record of one command run. `skipped + converted == read`.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub config: Value,
    pub counts: Counts,
    pub hard_errors: Vec<Failure>,
    pub exit_code: u8,
    pub wall_time_secs: f64,
}

/// One sentence left out of the output.
#[derive(Clone, Debug, Serialize)]
pub struct Skip {
    pub sentence: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sent_id: Option<String>,
    pub kind: String,
    pub message: String,
    pub hard: bool,
}

/// Collects counts and errors while a command runs.
pub struct Run {
    started: Instant,
    pub manifest: RunManifest,
    pub skips: Vec<Skip>,
}

impl Run {
    pub fn new(command: &str, config: impl Serialize) -> Self {
        Run {
            started: Instant::now(),
            manifest: RunManifest {
                command: command.into(),
                inputs: Vec::new(),
                outputs: Vec::new(),
                config: serde_json::to_value(config).unwrap_or(Value::Null),
                counts: Counts::default(),
                hard_errors: Vec::new(),
                exit_code: 0,
                wall_time_secs: 0.0,
            },
            skips: Vec::new(),
        }
    }

    pub fn input(&mut self, p: &Path) {
        self.manifest.inputs.push(p.to_owned());
    }

    pub fn output(&mut self, p: Option<&Path>) {
        if let Some(p) = p {
            self.manifest.outputs.push(p.to_owned());
        }
    }

    pub fn ok(&mut self) {
        self.manifest.counts.read += 1;
        self.manifest.counts.converted += 1;
    }

    /// A sentence that could not be processed but does not fail the run.
    pub fn soft_skip(
        &mut self,
        sentence: usize,
        sent_id: Option<&str>,
        kind: &str,
        message: String,
    ) {
        log::info!("sentence {sentence}: {message}");
        self.manifest.counts.read += 1;
        self.manifest.counts.skipped += 1;
        self.skips.push(Skip {
            sentence,
            sent_id: sent_id.map(str::to_owned),
            kind: kind.into(),
            message,
            hard: false,
        });
    }

    pub fn hard_skip(&mut self, sentence: usize, f: Failure) {
        eprintln!("error: sentence {sentence}: {}", f.message);
        self.manifest.counts.read += 1;
        self.manifest.counts.skipped += 1;
        self.skips.push(Skip {
            sentence,
            sent_id: None,
            kind: "input".into(),
            message: f.message.clone(),
            hard: true,
        });
        self.manifest.hard_errors.push(f);
    }

    /// A failure that ends the command.
    pub fn fail(&mut self, f: Failure) {
        eprintln!("error: {}", f.message);
        self.manifest.hard_errors.push(f);
    }

    pub fn failed(&self) -> bool {
        !self.manifest.hard_errors.is_empty()
    }

    pub fn write_skips(&mut self, path: Option<&Path>) {
        let Some(path) = path else { return };
        let mut text = String::new();
        for s in &self.skips {
            text.push_str(&serde_json::to_string(s).expect("skip record serializes"));
            text.push('\n');
        }
        match write_file(path, &text) {
            Ok(()) => self.output(Some(path)),
            Err(f) => self.fail(f),
        }
    }

    /// Writes the manifest to `path`, or next to `main_output`, and returns
    /// the exit status.
    pub fn finish(mut self, path: Option<&Path>, main_output: Option<&Path>) -> u8 {
        self.manifest.exit_code = self.manifest.hard_errors.first().map_or(0, |f| f.code);
        self.manifest.wall_time_secs = self.started.elapsed().as_secs_f64();
        let c = &self.manifest.counts;
        eprintln!(
            "{}: read {}, converted {}, skipped {}",
            self.manifest.command, c.read, c.converted, c.skipped
        );
        let target = path
            .map(Path::to_owned)
            .or_else(|| main_output.map(|p| sidecar(p, ".manifest.json")));
        if let Some(target) = target {
            let text = serde_json::to_string_pretty(&self.manifest).expect("manifest serializes");
            if let Err(f) = write_file(&target, &(text + "\n")) {
                eprintln!("error: {}", f.message);
                return if self.manifest.exit_code == 0 {
                    f.code
                } else {
                    self.manifest.exit_code
                };
            }
        }
        self.manifest.exit_code
    }
}
