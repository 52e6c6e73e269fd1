use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use clap::error::ErrorKind;
use clap::CommandFactory;
use morphner::conllu::MorphSentence;
use morphner::convert::{
    eoj2morph, morph2eoj, morph2syl, syl2morph, ConvertError, ExclusionPolicy, SyllableLayout,
    TraceEntry,
};
use morphner::crf::{train as fit, CrfModel, Example, FeatureTemplate, TrainConfig};
use morphner::eval::{evaluate, evaluate_cross_format, EvalError, Report, Tagged};
use morphner::par::Workers;
use morphner::stats::{label_inventory_report, postpos_distribution};
use morphner::tagsets::{convert_scheme, detect_scheme, validate_sequence, Scheme, UposTag};
use serde_json::json;

use crate::args::*;
use crate::corpus::{
    read, read_all, sidecar, write_file, Failure, Output, Sentence, Sentences, Settings,
};
use crate::manifest::Run;

/// (annotation, analysis) pairs; the analysis alone when converting back.
type Pairs = Box<dyn Iterator<Item = Result<(Option<Sentence>, Sentence), Failure>>>;

/// Sentences handed to the worker pool per thread at a time.
const CHUNK_PER_WORKER: usize = 64;

fn usage(message: &str) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, message)
        .exit()
}

/// Maps `items` through `f` in input order, a bounded chunk at a time, and
/// hands each result with its 1-based index to `sink`.
fn stream<W, T, F, K>(
    items: impl Iterator<Item = Result<W, Failure>>,
    workers: &Workers,
    f: F,
    mut sink: K,
) -> Result<(), Failure>
where
    W: Send + Sync,
    T: Send,
    F: Fn(&W) -> T + Sync + Send,
    K: FnMut(usize, Result<T, Failure>) -> Result<(), Failure>,
{
    let chunk = CHUNK_PER_WORKER * workers.threads().max(1);
    let mut items = items.fuse();
    let mut index = 0;
    loop {
        let batch: Vec<Result<W, Failure>> = items.by_ref().take(chunk).collect();
        if batch.is_empty() {
            return Ok(());
        }
        for r in workers.map(&batch, |x| x.as_ref().map(&f).map_err(Clone::clone)) {
            index += 1;
            sink(index, r)?;
        }
    }
}

/// Pairs two corpora sentence by sentence; a length difference ends the stream with an error.
fn zip_exact(
    mut a: Sentences,
    mut b: Sentences,
    names: (String, String),
) -> impl Iterator<Item = Result<(Sentence, Sentence), Failure>> {
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        match (a.next(), b.next()) {
            (None, None) => None,
            (Some(Ok(x)), Some(Ok(y))) => Some(Ok((x, y))),
            (Some(Err(e)), Some(_)) | (Some(_), Some(Err(e))) => Some(Err(e)),
            (x, _) => {
                done = true;
                let (longer, shorter) = if x.is_some() {
                    (&names.0, &names.1)
                } else {
                    (&names.1, &names.0)
                };
                Some(Err(Failure::format(format!(
                    "{longer} has more sentences than {shorter}"
                ))))
            }
        }
    })
}

fn parse_policy(text: &str) -> Result<ExclusionPolicy, String> {
    let mut tiers = Vec::new();
    for tier in text.split(';') {
        let tags: Result<Vec<UposTag>, _> = tier
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<UposTag>())
            .collect();
        tiers.push(tags.map_err(|e| e.to_string())?);
    }
    ExclusionPolicy::new(tiers).map_err(|e| e.to_string())
}

fn finish(
    mut run: Run,
    result: Result<(), Failure>,
    manifest: Option<&Path>,
    main: Option<&Path>,
) -> u8 {
    if let Err(f) = result {
        run.fail(f);
    }
    run.finish(manifest, main)
}

type Converted = Result<(Sentence, Option<Vec<TraceEntry>>), (Option<String>, ConvertError)>;

fn forward(ner: &Sentence, morph: &Sentence, policy: &ExclusionPolicy) -> Converted {
    let Sentence::Morph(m) = morph else {
        unreachable!("morpheme reader yields morpheme sentences")
    };
    let r = match ner {
        Sentence::Eojeol(e) => {
            eoj2morph(e, m, policy).map(|r| (Sentence::Morph(r.sentence), Some(r.trace)))
        }
        Sentence::Syllable(s) => syl2morph(s, m).map(|r| (Sentence::Morph(r), None)),
        Sentence::Morph(_) => unreachable!("NE input is eojeol or syllable"),
    };
    r.map_err(|e| (m.sent_id.clone(), e))
}

fn backward(morph: &Sentence, to: Format, layout: SyllableLayout) -> Converted {
    let Sentence::Morph(m) = morph else {
        unreachable!("morpheme reader yields morpheme sentences")
    };
    let r = match to {
        Format::Eojeol => morph2eoj(m).map(Sentence::Eojeol),
        _ => morph2syl(m, layout).map(Sentence::Syllable),
    };
    r.map(|s| (s, None)).map_err(|e| (m.sent_id.clone(), e))
}

pub fn convert(a: &ConvertArgs) -> u8 {
    let forward_dir = match (a.from, a.to) {
        (Format::Eojeol | Format::Syllable, Format::Morpheme) => true,
        (Format::Morpheme, Format::Eojeol | Format::Syllable) => false,
        _ => usage("conversion runs between morpheme and eojeol or syllable corpora"),
    };
    let Some(morph_path) = a.morph.as_deref() else {
        usage("--morph is required")
    };
    if forward_dir && a.ner.is_none() {
        usage("--ner is required when converting to morphemes");
    }
    let policy = match &a.policy {
        Some(p) => parse_policy(p).unwrap_or_else(|e| usage(&e)),
        None => ExclusionPolicy::default(),
    };
    let mut run = Run::new("convert", a);
    let skipped_log = a
        .skipped_log
        .clone()
        .or_else(|| a.output.as_deref().map(|p| sidecar(p, ".skipped.jsonl")));
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let mode = settings.mode;
        let layout: SyllableLayout = a.layout.into();
        let inputs: Pairs = if forward_dir {
            let ner_path = a.ner.as_deref().expect("checked above");
            run.input(ner_path);
            run.input(morph_path);
            let ner = read(ner_path, a.from, &settings)?;
            let morph = read(morph_path, Format::Morpheme, &settings)?;
            let names = (
                ner_path.display().to_string(),
                morph_path.display().to_string(),
            );
            Box::new(zip_exact(ner, morph, names).map(|r| r.map(|(n, m)| (Some(n), m))))
        } else {
            run.input(morph_path);
            Box::new(read(morph_path, Format::Morpheme, &settings)?.map(|r| r.map(|m| (None, m))))
        };
        let mut out = Output::create(a.output.as_deref())?;
        run.output(a.output.as_deref());
        let mut trace = match a.trace.as_deref() {
            Some(p) if a.from == Format::Eojeol => {
                run.output(Some(p));
                Some(Output::create(Some(p))?)
            }
            _ => None,
        };
        let to = a.to;
        stream(
            inputs,
            &workers,
            |(ner, morph)| match ner {
                Some(n) => forward(n, morph, &policy),
                None => backward(morph, to, layout),
            },
            |i, r| {
                match r {
                    Err(f) => run.hard_skip(i, f),
                    Ok(Err((id, e))) => run.soft_skip(i, id.as_deref(), e.kind(), e.to_string()),
                    Ok(Ok((s, steps))) => {
                        out.write_sentence(&s, mode)?;
                        if let (Some(t), Some(steps)) = (trace.as_mut(), steps) {
                            let line = json!({"sentence": i, "sent_id": s.id(), "trace": steps});
                            t.write_str(&format!("{line}\n"))?;
                        }
                        run.ok();
                    }
                }
                Ok(())
            },
        )?;
        out.finish()?;
        if let Some(t) = trace {
            t.finish()?;
        }
        Ok(())
    })();
    run.write_skips(skipped_log.as_deref());
    finish(
        run,
        result,
        a.common.manifest.as_deref(),
        a.output.as_deref(),
    )
}

fn eval_failure(e: EvalError) -> Failure {
    match e {
        EvalError::SchemeMismatch { .. } => Failure::format(e.to_string()),
        e => Failure::mismatch(e.to_string()),
    }
}

pub fn eval(a: &EvalArgs) -> u8 {
    let gold_format = match (a.format, a.back_convert) {
        (Some(f), None) => f,
        (None, Some(b)) => b.into(),
        (Some(f), Some(b)) if f == Format::from(b) => f,
        (Some(_), Some(_)) => {
            usage("with --back-convert the gold file must be in the target format")
        }
        (None, None) => usage("--format or --back-convert is required"),
    };
    let mut run = Run::new("eval", a);
    run.input(&a.gold);
    run.input(&a.pred);
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let gold = read_all(&a.gold, gold_format, &settings)?;
        let pred_format = if a.back_convert.is_some() {
            Format::Morpheme
        } else {
            gold_format
        };
        let pred = read_all(&a.pred, pred_format, &settings)?;
        let report: Report<f64> = workers
            .install(|| match a.back_convert {
                None => evaluate(&gold, &pred),
                Some(b) => {
                    let pred: Vec<MorphSentence> =
                        pred.into_iter().filter_map(Sentence::into_morph).collect();
                    evaluate_cross_format(&gold, &pred, b.into())
                }
            })
            .map_err(eval_failure)?;
        let mut excluded = report.excluded.iter().peekable();
        for i in 1..=gold.len() {
            match excluded.peek() {
                Some(x) if x.sentence == i => {
                    run.soft_skip(i, gold[i - 1].id(), "back-conversion", x.reason.clone());
                    excluded.next();
                }
                _ => run.ok(),
            }
        }
        print!("{}", report.to_conlleval());
        if let Some(p) = &a.json {
            let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            write_file(p, &(text + "\n"))?;
            run.output(Some(p));
        }
        Ok(())
    })();
    finish(run, result, a.common.manifest.as_deref(), a.json.as_deref())
}

pub fn stats(a: &StatsArgs) -> u8 {
    let mut run = Run::new("stats", a);
    run.input(&a.input);
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let corpus: Vec<MorphSentence> = read_all(&a.input, Format::Morpheme, &settings)?
            .into_iter()
            .filter_map(Sentence::into_morph)
            .collect();
        let dist = workers
            .install(|| postpos_distribution(&corpus))
            .map_err(|e| Failure::format(format!("{}: {e}", a.input.display())))?;
        let inventory = workers.install(|| label_inventory_report(&corpus));
        for _ in &corpus {
            run.ok();
        }
        let mut out = Output::create(a.output.as_deref())?;
        run.output(a.output.as_deref());
        out.write_str(&dist.to_text::<f64>())?;
        out.finish()?;
        if let Some(p) = &a.csv {
            write_file(p, &dist.plot_csv::<f64>())?;
            run.output(Some(p));
        }
        if let Some(p) = &a.json {
            let inventory: serde_json::Map<_, _> = inventory
                .iter()
                .map(|(l, n)| (l.to_string(), json!(n)))
                .collect();
            let value = json!({"postpositions": dist.to_json::<f64>(), "entity_tokens": inventory});
            write_file(
                p,
                &(serde_json::to_string_pretty(&value).expect("stats serialize") + "\n"),
            )?;
            run.output(Some(p));
        }
        Ok(())
    })();
    let main = a.output.as_deref().or(a.json.as_deref());
    finish(run, result, a.common.manifest.as_deref(), main)
}

pub fn train(a: &TrainArgs) -> u8 {
    eprintln!("seed: {}", a.seed);
    let mut run = Run::new("train", a);
    run.input(&a.input);
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let template = match &a.template {
            Some(p) => {
                run.input(p);
                let text = std::fs::read_to_string(p).map_err(|e| Failure::unreadable(p, e))?;
                FeatureTemplate::parse(&text)
                    .map_err(|e| Failure::format(format!("{}: {e}", p.display())))?
            }
            None => FeatureTemplate::words(),
        };
        let corpus = read_all(&a.input, a.format, &settings)?;
        let examples: Vec<Example> = corpus
            .iter()
            .map(|s| (s.observations(), s.ne_tags()))
            .collect();
        let config = TrainConfig {
            l2_strength: a.l2,
            epochs: a.epochs,
            learning_rate: a.learning_rate,
            batch_size: a.batch_size,
            shuffle_seed: a.seed,
        };
        let model: CrfModel<f64> = workers
            .install(|| fit(&examples, template, &config))
            .map_err(|e| Failure::format(e.to_string()))?;
        for _ in &corpus {
            run.ok();
        }
        write_file(&a.output, &model.to_json())?;
        run.output(Some(&a.output));
        Ok(())
    })();
    finish(run, result, a.common.manifest.as_deref(), Some(&a.output))
}

fn load_model(path: &Path) -> Result<CrfModel<f64>, Failure> {
    let file = File::open(path).map_err(|e| Failure::unreadable(path, e))?;
    CrfModel::from_reader(BufReader::new(file))
        .map_err(|e| Failure::format(format!("{}: {e}", path.display())))
}

pub fn tag(a: &TagArgs) -> u8 {
    let mut run = Run::new("tag", a);
    run.input(&a.model);
    run.input(&a.input);
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let model = load_model(&a.model)?;
        let input = read(&a.input, a.format, &settings)?;
        let mut out = Output::create(a.output.as_deref())?;
        run.output(a.output.as_deref());
        stream(
            input,
            &workers,
            |s| {
                let obs = s.observations();
                let tags = if a.constrained {
                    model.decode_constrained(&obs)
                } else {
                    model.decode(&obs)
                };
                let mut s = s.clone();
                s.set_tags(&tags);
                s
            },
            |i, r| {
                match r {
                    Ok(s) => {
                        out.write_sentence(&s, settings.mode)?;
                        run.ok();
                    }
                    Err(f) => run.hard_skip(i, f),
                }
                Ok(())
            },
        )?;
        out.finish()
    })();
    finish(
        run,
        result,
        a.common.manifest.as_deref(),
        a.output.as_deref(),
    )
}

pub fn scheme(a: &SchemeArgs) -> u8 {
    let mut run = Run::new("scheme", a);
    run.input(&a.input);
    let target: Scheme = a.to.into();
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let input = read(&a.input, a.format, &settings)?;
        let mut out = Output::create(a.output.as_deref())?;
        run.output(a.output.as_deref());
        stream(
            input,
            &workers,
            |s| {
                convert_scheme(&s.ne_tags(), target).map(|t| {
                    let mut s = s.clone();
                    s.set_tags(&t);
                    s
                })
            },
            |i, r| {
                match r {
                    Ok(Ok(s)) => {
                        out.write_sentence(&s, settings.mode)?;
                        run.ok();
                    }
                    Ok(Err(e)) => {
                        run.hard_skip(i, Failure::format(format!("{}: {e}", a.input.display())))
                    }
                    Err(f) => run.hard_skip(i, f),
                }
                Ok(())
            },
        )?;
        out.finish()
    })();
    finish(
        run,
        result,
        a.common.manifest.as_deref(),
        a.output.as_deref(),
    )
}

pub fn validate(a: &ValidateArgs) -> u8 {
    let mut run = Run::new("validate", a);
    run.input(&a.input);
    let fixed: Option<Scheme> = a.scheme.map(Into::into);
    let result = (|| {
        let settings = Settings::from_common(&a.common)?;
        let workers = Workers::new(a.common.jobs);
        let input = read(&a.input, a.format, &settings)?;
        stream(
            input,
            &workers,
            |s| {
                let tags = s.ne_tags();
                let scheme = fixed
                    .or_else(|| detect_scheme(&tags))
                    .unwrap_or(Scheme::Bio);
                validate_sequence(&tags, scheme)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            },
            |i, r| {
                match r {
                    Ok(v) if v.is_empty() => run.ok(),
                    Ok(v) => run.hard_skip(
                        i,
                        Failure::format(format!("{}: {}", a.input.display(), v.join("; "))),
                    ),
                    Err(f) => run.hard_skip(i, f),
                }
                Ok(())
            },
        )
    })();
    if result.is_ok() && !run.failed() {
        println!(
            "{}: {} sentences, all valid",
            a.input.display(),
            run.manifest.counts.read
        );
    }
    finish(run, result, a.common.manifest.as_deref(), None)
}
