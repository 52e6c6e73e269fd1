//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use morphner::conllu::{
    parse_conllu, write_conllu, EojeolSpan, Mode, MorphSentence, MorphToken, ParseOptions,
};
use morphner::convert::{
    eoj2morph, morph2eoj, morph2syl, parse_eojeol_tsv, parse_syllable_tsv, syl2morph, write_tsv,
    EojeolSentence, ExclusionPolicy, SyllableLayout, SyllableSentence, TsvStyle,
};
use morphner::crf::{
    log_likelihood_and_gradient, morph_observations, sentence_features, train, Column, CrfModel,
    FeatureTemplate, Observation, TrainConfig,
};
use morphner::eval::{evaluate, evaluate_cross_format, BackConvert, Report};
use morphner::scalar::format_2dp;
use morphner::stats::postpos_distribution;
use morphner::tagsets::{
    bio_to_bioes, bioes_to_bio, extract_entities, spans_to_bio, tags, validate_sequence, NeLabel,
    NeTag, Scheme, Span, UposTag,
};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Ratio<i64>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

macro_rules! data {
    ($name:literal) => {
        include_str!(concat!("data/", $name))
    };
}

fn compat(text: &str) -> MorphSentence {
    parse_conllu(text, &ParseOptions::new(Mode::Figure2Compat))
        .unwrap()
        .remove(0)
}

fn write_compat(s: &MorphSentence) -> String {
    write_conllu(std::slice::from_ref(s), Mode::Figure2Compat).unwrap()
}

fn naver(text: &str) -> EojeolSentence {
    parse_eojeol_tsv(text, None).unwrap().remove(0)
}

// ---------------------------------------------------------------- AC1

fn ac1() -> Outcome {
    let policy = ExclusionPolicy::default();
    let mut failed = Vec::new();
    let cases = [
        (
            "france",
            data!("france.naver.tsv"),
            data!("france.analyzed.conllu"),
            data!("france.compat.conllu"),
        ),
        (
            "designer",
            data!("designer.naver.tsv"),
            data!("designer.analyzed.conllu"),
            data!("designer.compat.conllu"),
        ),
        (
            "afw",
            data!("afw.naver.tsv"),
            data!("afw.analyzed.conllu"),
            data!("afw.compat.conllu"),
        ),
    ];
    for (name, ner, analyzed, gold) in cases {
        let out = eoj2morph(&naver(ner), &compat(analyzed), &policy).unwrap();
        if write_compat(&out.sentence) != gold {
            failed.push(format!("{name} eoj2morph"));
        }
        let back = morph2eoj(&compat(gold)).unwrap();
        if write_tsv(&[back], &TsvStyle::eojeol()) != ner {
            failed.push(format!("{name} morph2eoj"));
        }
    }
    let canonical =
        write_conllu(&[compat(data!("designer.compat.conllu"))], Mode::Canonical).unwrap();
    if canonical != data!("designer.canonical.conllu") {
        failed.push("designer canonical".into());
    }
    let syl = parse_syllable_tsv(data!("france.syllable.tsv"), None)
        .unwrap()
        .remove(0);
    let out = syl2morph(&syl, &compat(data!("france.analyzed.conllu"))).unwrap();
    if write_compat(&out) != data!("france.compat.conllu") {
        failed.push("syllable table syl2morph".into());
    }
    let back = morph2syl(&out, SyllableLayout::Spaced).unwrap();
    if write_tsv(&[back], &TsvStyle::syllable()) != data!("france.syllable.tsv") {
        failed.push("syllable table morph2syl".into());
    }
    if failed.is_empty() {
        outcome(true, "9 golden outputs byte-identical")
    } else {
        outcome(false, format!("mismatch: {}", failed.join(", ")))
    }
}

// ---------------------------------------------------------------- AC2

fn ac2() -> Outcome {
    const N: usize = 1000;
    const ADVERSARIAL: usize = 200;
    let policy = ExclusionPolicy::default();
    let mut r = rng(2);
    let corpus: Vec<_> = (0..N).map(|i| common::sentence(&mut r, i)).collect();

    let (mut eoj_flagged, mut eoj_bad) = (0, 0);
    let (mut syl_flagged, mut syl_bad) = (0, 0);
    let (mut morph_flagged, mut morph_bad) = (0, 0);
    for g in &corpus {
        // eojeol -> morpheme -> eojeol
        match eoj2morph(&g.eojeol, &g.morph, &policy).and_then(|o| morph2eoj(&o.sentence)) {
            Ok(back) => {
                if write_tsv(&[back], &TsvStyle::eojeol())
                    != write_tsv(std::slice::from_ref(&g.eojeol), &TsvStyle::eojeol())
                {
                    eoj_bad += 1;
                }
            }
            Err(_) => eoj_flagged += 1,
        }
        // syllable -> morpheme -> syllable
        match syl2morph(&g.syllable, &g.morph).and_then(|m| morph2syl(&m, SyllableLayout::Spaced)) {
            Ok(back) => {
                if write_tsv(&[back], &TsvStyle::syllable())
                    != write_tsv(std::slice::from_ref(&g.syllable), &TsvStyle::syllable())
                {
                    syl_bad += 1;
                }
            }
            Err(_) => syl_flagged += 1,
        }
        // morpheme -> eojeol -> morpheme, through the CoNLL-U text in both modes
        let tagged = match eoj2morph(&g.eojeol, &g.morph, &policy) {
            Ok(o) => o.sentence,
            Err(_) => {
                morph_flagged += 1;
                continue;
            }
        };
        let mut same = true;
        for mode in [Mode::Canonical, Mode::Figure2Compat] {
            let text = write_conllu(std::slice::from_ref(&tagged), mode).unwrap();
            let parsed = parse_conllu(&text, &ParseOptions::new(mode)).unwrap();
            same &= write_conllu(&parsed, mode).unwrap() == text;
        }
        match morph2eoj(&tagged).and_then(|e| eoj2morph(&e, &tagged.without_ne(), &policy)) {
            Ok(again) => same &= write_compat(&again.sentence) == write_compat(&tagged),
            Err(_) => {
                morph_flagged += 1;
                continue;
            }
        }
        if !same {
            morph_bad += 1;
        }
    }

    let mut r = rng(20);
    let split_flagged = (0..ADVERSARIAL)
        .filter(|&i| {
            let (syl, morph) = common::split_syllable(&mut r, i);
            syl2morph(&syl, &morph).is_err()
        })
        .count();
    let mismatch_flagged = (0..ADVERSARIAL)
        .filter(|&i| {
            let (eoj, morph) = common::mismatched_eojeol(&mut r, i);
            eoj2morph(&eoj, &morph, &policy).is_err()
        })
        .count();

    let limit = N / 100;
    let pass = eoj_bad + syl_bad + morph_bad == 0
        && eoj_flagged < limit
        && syl_flagged < limit
        && morph_flagged < limit
        && split_flagged == ADVERSARIAL
        && mismatch_flagged == ADVERSARIAL;
    outcome(
        pass,
        format!(
            "{N}/format; not identical e/s/m = {eoj_bad}/{syl_bad}/{morph_bad}; flagged e/s/m = {eoj_flagged}/{syl_flagged}/{morph_flagged} \
             (limit <{limit}); adversarial flagged: split {split_flagged}/{ADVERSARIAL}, mismatched {mismatch_flagged}/{ADVERSARIAL}"
        ),
    )
}

// ---------------------------------------------------------------- AC3, AC4

const TAG_POOL: &[&str] = &["O", "B-PER", "I-PER", "B-LOC"];
const VOCAB: &[&str] = &["a", "b", "c", "d"];

fn random_model(
    r: &mut ChaCha8Rng,
    k: usize,
    n: usize,
    scale: f64,
) -> (CrfModel<f64>, Vec<Observation>) {
    let labels: Vec<NeTag> = TAG_POOL[..k].iter().map(|t| t.parse().unwrap()).collect();
    let seq: Vec<Observation> = (0..n)
        .map(|_| Observation::word(*VOCAB.choose(r).unwrap()))
        .collect();
    let mut m = CrfModel::new(FeatureTemplate::words(), labels);
    m.add_attributes(&seq);
    for w in &mut m.weights {
        *w = r.gen_range(-scale..scale);
    }
    (m, seq)
}

/// Path score summed straight from the weight vector.
fn path_score(m: &CrfModel<f64>, seq: &[Observation], path: &[usize]) -> f64 {
    let k = m.num_labels();
    let mut s = 0.0;
    for (i, (uni, bi)) in sentence_features(seq, &m.template).into_iter().enumerate() {
        let y = path[i];
        for f in uni {
            s += m.weights[m.unigram[&f] + y];
        }
        if i > 0 {
            let prev = path[i - 1];
            s += m.weights[prev * k + y];
            for f in bi {
                s += m.weights[m.bigram[&f] + prev * k + y];
            }
        }
    }
    s
}

/// Every label sequence of length `n` over `k` labels, lexicographic.
fn all_paths(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (0..k).map(move |y| [p.clone(), vec![y]].concat()))
            .collect();
    }
    out
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

fn ac3() -> Outcome {
    let mut r = rng(3);
    let (mut worst_z, mut worst_m, mut viterbi_bad) = (0.0f64, 0.0f64, 0);
    for _ in 0..200 {
        let n = r.gen_range(1..=5);
        let k = r.gen_range(1..=4);
        let (m, seq) = random_model(&mut r, k, n, 2.0);
        let paths = all_paths(n, k);
        let scores: Vec<f64> = paths.iter().map(|p| path_score(&m, &seq, p)).collect();
        let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let z = max + scores.iter().map(|s| (s - max).exp()).sum::<f64>().ln();
        worst_z = worst_z.max(rel(m.log_partition(&seq), z));

        let mut brute = vec![vec![0.0; k]; n];
        for (p, s) in paths.iter().zip(&scores) {
            let prob = (s - z).exp();
            for (i, &y) in p.iter().enumerate() {
                brute[i][y] += prob;
            }
        }
        for (row, want) in m.marginals(&seq).iter().zip(&brute) {
            for (a, b) in row.iter().zip(want) {
                worst_m = worst_m.max(rel(*a, *b));
            }
        }

        let mut best = 0;
        for (j, s) in scores.iter().enumerate() {
            if *s > scores[best] {
                best = j;
            }
        }
        if m.decode_indices(&seq) != paths[best] {
            viterbi_bad += 1;
        }
    }
    let pass = worst_z <= 1e-9 && worst_m <= 1e-9 && viterbi_bad == 0;
    outcome(
        pass,
        format!("200 instances; max rel err logZ {worst_z:.1e}, marginals {worst_m:.1e}; Viterbi mismatches {viterbi_bad}"),
    )
}

fn ac4() -> Outcome {
    let mut r = rng(4);
    let h = 1e-5;
    let mut worst = 0.0f64;
    let mut checked = 0;
    for _ in 0..50 {
        let k = r.gen_range(2..=4);
        let n = r.gen_range(1..=5);
        let (mut m, seq) = random_model(&mut r, k, n, 1.0);
        let mut batch = vec![(
            seq.clone(),
            (0..n)
                .map(|_| m.labels[r.gen_range(0..k)].clone())
                .collect::<Vec<_>>(),
        )];
        // a second sentence with its own attributes
        let len = r.gen_range(1..=4);
        let (_, extra) = random_model(&mut r, k, len, 1.0);
        m.add_attributes(&extra);
        for w in m.weights.iter_mut().filter(|w| **w == 0.0) {
            *w = r.gen_range(-1.0..1.0);
        }
        batch.push((
            extra.clone(),
            extra
                .iter()
                .map(|_| m.labels[r.gen_range(0..k)].clone())
                .collect(),
        ));
        let l2 = r.gen_range(0.01..0.5);
        let (_, grad) = log_likelihood_and_gradient(&m, &batch, l2).unwrap();
        for (j, &g) in grad.iter().enumerate() {
            let w = m.weights[j];
            let mut plus = m.clone();
            plus.weights[j] = w + h;
            let mut minus = m.clone();
            minus.weights[j] = w - h;
            let fp = log_likelihood_and_gradient(&plus, &batch, l2).unwrap().0;
            let fm = log_likelihood_and_gradient(&minus, &batch, l2).unwrap().0;
            let numeric = (fp - fm) / (2.0 * h);
            let err = (g - numeric).abs() / g.abs().max(numeric.abs()).max(1e-6);
            worst = worst.max(err);
            checked += 1;
        }
    }
    outcome(
        worst <= 1e-4,
        format!("50 models, {checked} weights; max rel err {worst:.1e} (limit 1e-4)"),
    )
}

// ---------------------------------------------------------------- AC5

/// Nouns with a fixed label, so the training set is consistent.
const ENTITIES: &[(&str, &str)] = &[
    ("서울", "LOC"),
    ("부산", "LOC"),
    ("프랑스", "LOC"),
    ("이순신", "PER"),
    ("김철수", "PER"),
    ("엠마누엘", "PER"),
    ("삼성전자", "ORG"),
    ("한국은행", "ORG"),
    ("유엔", "ORG"),
];
const PLAIN: &[&str] = &["오늘", "학교", "사람", "의상", "시장", "축구"];

fn capacity_sentence(r: &mut ChaCha8Rng, id: usize) -> MorphSentence {
    let mut spans = Vec::new();
    for _ in 0..r.gen_range(2..=6) {
        let (noun, tag) = if r.gen_bool(0.5) {
            let (n, l) = ENTITIES.choose(r).unwrap();
            (*n, NeTag::begin(&NeLabel::new(*l).unwrap()))
        } else {
            (*PLAIN.choose(r).unwrap(), NeTag::Outside)
        };
        let (p, x) = [("에서", "JKB"), ("의", "JKG"), ("도", "JX")]
            .choose(r)
            .copied()
            .unwrap();
        let upos = if tag.is_outside() {
            UposTag::Noun
        } else {
            UposTag::Propn
        };
        let xpos = if tag.is_outside() { "NNG" } else { "NNP" };
        spans.push(EojeolSpan::new(
            format!("{noun}{p}"),
            vec![
                MorphToken::new(noun, noun, upos, xpos).with_ne(tag),
                MorphToken::new(p, p, UposTag::Adp, x),
            ],
        ));
    }
    spans.push(EojeolSpan::new(
        "갔다",
        vec![
            MorphToken::new("가", "가", UposTag::Verb, "VV"),
            MorphToken::new("았", "았", UposTag::Part, "EP"),
            MorphToken::new("다", "다", UposTag::Part, "EF"),
        ],
    ));
    MorphSentence::new(Some(format!("cap-{id}")), spans)
}

fn ac5() -> Outcome {
    let mut r = rng(5);
    let corpus: Vec<MorphSentence> = (0..50).map(|i| capacity_sentence(&mut r, i)).collect();
    let examples: Vec<_> = corpus
        .iter()
        .map(|s| (morph_observations(s), s.ne_tags()))
        .collect();
    let template = FeatureTemplate::words()
        .with_unigram_column(Column::Upos)
        .with_unigram_column(Column::Xpos);
    let config = TrainConfig::default();
    let a: CrfModel<f64> = train(&examples, template.clone(), &config).unwrap();
    let b: CrfModel<f64> = train(&examples, template, &config).unwrap();
    let pred: Vec<Vec<NeTag>> = examples.iter().map(|(x, _)| a.decode(x)).collect();
    let gold: Vec<Vec<NeTag>> = examples.iter().map(|(_, y)| y.clone()).collect();
    let report: Report<f64> = evaluate(&gold, &pred).unwrap();
    let same = a.to_json() == b.to_json();
    let f1 = report.overall.f1;
    outcome(
        f1 >= 99.0 && same,
        format!(
            "training-set F1 {} (need >= 99.00); repeat run identical: {same}",
            format_2dp(f1)
        ),
    )
}

// ---------------------------------------------------------------- AC6

struct Fixture {
    gold: &'static [&'static [&'static str]],
    pred: &'static [&'static [&'static str]],
    /// precision, recall, F1 as printed
    want: [&'static str; 3],
}

const FIXTURES: &[Fixture] = &[
    Fixture {
        gold: &[&["B-PER", "I-PER", "O"]],
        pred: &[&["B-PER", "I-PER", "O"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-PER", "I-PER", "O", "B-LOC"]],
        pred: &[&["B-PER", "I-PER", "O", "O"]],
        want: ["100.00", "50.00", "66.67"],
    },
    Fixture {
        gold: &[&["B-LOC", "O"]],
        pred: &[&["I-LOC", "O"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-LOC", "I-LOC"]],
        pred: &[&["B-LOC", "B-LOC"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["O", "I-PER", "I-PER"]],
        pred: &[&["O", "B-PER", "I-PER"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-PER", "I-LOC"]],
        pred: &[&["B-PER", "I-PER"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["B-ORG", "I-ORG", "I-ORG"]],
        pred: &[&["B-ORG", "I-ORG", "O"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["B-DAT", "O", "B-DAT", "O", "B-DAT"]],
        pred: &[&["B-DAT", "O", "B-DAT", "O", "O"]],
        want: ["100.00", "66.67", "80.00"],
    },
    Fixture {
        gold: &[&["O", "O", "O"]],
        pred: &[&["O", "O", "O"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["O", "O"]],
        pred: &[&["B-LOC", "O"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["B-PER"]],
        pred: &[&["O"]],
        want: ["0.00", "0.00", "0.00"],
    },
    Fixture {
        gold: &[&["B-LOC", "I-LOC", "O", "B-PER"]],
        pred: &[&["B-LOC", "I-LOC", "O", "B-LOC"]],
        want: ["50.00", "50.00", "50.00"],
    },
    Fixture {
        gold: &[&["B-PER", "I-PER", "I-PER", "B-ORG"]],
        pred: &[&["B-PER", "I-PER", "O", "B-ORG"]],
        want: ["50.00", "50.00", "50.00"],
    },
    Fixture {
        gold: &[&["B-LOC", "O", "B-PER", "O", "B-ORG"]],
        pred: &[&["B-LOC", "B-DAT", "O", "B-TIM", "O"]],
        want: ["33.33", "33.33", "33.33"],
    },
    Fixture {
        gold: &[&["B-LOC", "I-LOC", "I-LOC"]],
        pred: &[&["I-LOC", "I-LOC", "I-LOC"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-LOC", "I-PER", "O"]],
        pred: &[&["B-LOC", "B-PER", "O"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-PER", "O"], &["B-LOC"]],
        pred: &[&["B-PER", "O"], &["O"]],
        want: ["100.00", "50.00", "66.67"],
    },
    Fixture {
        gold: &[&["B-EVT", "I-EVT", "O", "B-EVT"]],
        pred: &[&["B-EVT", "I-EVT", "O", "I-EVT"]],
        want: ["100.00", "100.00", "100.00"],
    },
    Fixture {
        gold: &[&["B-NUM", "O", "O", "O"]],
        pred: &[&["B-NUM", "B-NUM", "B-NUM", "B-NUM"]],
        want: ["25.00", "100.00", "40.00"],
    },
    Fixture {
        gold: &[&[
            "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O",
            "B-LOC",
        ]],
        pred: &[&[
            "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "B-LOC", "O", "O",
        ]],
        want: ["100.00", "85.71", "92.31"],
    },
    Fixture {
        gold: &[&["S-LOC", "O", "S-PER", "S-PER"]],
        pred: &[&["S-LOC", "O", "B-PER", "E-PER"]],
        want: ["50.00", "33.33", "40.00"],
    },
];

fn corpus(rows: &[&[&str]]) -> Vec<Vec<NeTag>> {
    rows.iter().map(|r| tags(r)).collect()
}

fn ac6() -> Outcome {
    let mut failed = Vec::new();
    for (i, f) in FIXTURES.iter().enumerate() {
        let report: Report<Q> = evaluate(&corpus(f.gold), &corpus(f.pred)).unwrap();
        let o = &report.overall;
        let got = [
            format_2dp(o.precision),
            format_2dp(o.recall),
            format_2dp(o.f1),
        ];
        if got != f.want.map(String::from) {
            failed.push(format!("#{} got {got:?}", i + 1));
        }
        // f64 must print the same
        let approx: Report<f64> = evaluate(&corpus(f.gold), &corpus(f.pred)).unwrap();
        if format_2dp(approx.overall.f1) != f.want[2] {
            failed.push(format!(
                "#{} f64 F1 {}",
                i + 1,
                format_2dp(approx.overall.f1)
            ));
        }
    }
    let mut r = rng(6);
    let identity = (0..100).all(|_| {
        let c = random_bio(&mut r, 8);
        let rep: Report<Q> = evaluate(std::slice::from_ref(&c), std::slice::from_ref(&c)).unwrap();
        extract_entities(&c).is_empty() || rep.overall.f1 == Q::from_integer(100)
    });
    if !identity {
        failed.push("evaluate(x, x) != 100".into());
    }
    if failed.is_empty() {
        outcome(
            true,
            format!(
                "{} hand-counted fixtures exact at 2 dp; evaluate(x, x) = 100",
                FIXTURES.len()
            ),
        )
    } else {
        outcome(false, failed.join("; "))
    }
}

// ---------------------------------------------------------------- AC7

fn random_bio(r: &mut ChaCha8Rng, max_len: usize) -> Vec<NeTag> {
    let labels = ["PER", "LOC", "ORG", "DAT"];
    let n = r.gen_range(1..=max_len);
    let mut spans = Vec::new();
    let mut i = 0;
    while i < n {
        if r.gen_bool(0.4) {
            let end = (i + r.gen_range(0..4)).min(n - 1);
            spans.push(Span::new(
                i,
                end,
                NeLabel::new(*labels.choose(r).unwrap()).unwrap(),
            ));
            i = end + 1;
        } else {
            i += 1;
        }
    }
    spans_to_bio(n, &spans)
}

fn ac7() -> Outcome {
    let mut r = rng(7);
    let mut bad = 0;
    for _ in 0..10_000 {
        let bio = random_bio(&mut r, 15);
        let bioes = bio_to_bioes(&bio).unwrap();
        let ok = validate_sequence(&bio, Scheme::Bio).is_empty()
            && validate_sequence(&bioes, Scheme::Bioes).is_empty()
            && bioes_to_bio(&bioes).unwrap() == bio
            && bio_to_bioes(&bioes_to_bio(&bioes).unwrap()).unwrap() == bioes
            && extract_entities(&bioes) == extract_entities(&bio);
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("10000 sequences; failures {bad}"))
}

// ---------------------------------------------------------------- AC8

/// An entity noun followed by `particle` (or a verb when `None`).
fn stats_sentence(noun: &str, label: &str, particle: Option<&str>) -> MorphSentence {
    let tag = NeTag::begin(&NeLabel::new(label).unwrap());
    let mut tokens = vec![MorphToken::new(noun, noun, UposTag::Propn, "NNP").with_ne(tag)];
    let mut surface = noun.to_owned();
    if let Some(x) = particle {
        let form = match x {
            "JKB" => "에",
            "JKG" => "의",
            "JKS" => "가",
            _ => "는",
        };
        tokens.push(MorphToken::new(form, form, UposTag::Adp, x));
        surface.push_str(form);
    }
    let verb = EojeolSpan::new(
        "갔다",
        vec![
            MorphToken::new("가", "가", UposTag::Verb, "VV"),
            MorphToken::new("다", "다", UposTag::Part, "EF"),
        ],
    );
    MorphSentence::new(None, vec![EojeolSpan::new(surface, tokens), verb])
}

fn ac8() -> Outcome {
    let mut corpus = Vec::new();
    for _ in 0..3 {
        corpus.push(stats_sentence("서울", "LOC", Some("JKB")));
    }
    for _ in 0..2 {
        corpus.push(stats_sentence("부산", "LOC", Some("JKG")));
    }
    corpus.push(stats_sentence("독일", "LOC", None));
    corpus.push(stats_sentence("철수", "PER", Some("JKS")));
    for _ in 0..2 {
        corpus.push(stats_sentence("영희", "PER", Some("JX")));
    }
    corpus.push(stats_sentence("유엔", "ORG", None));

    let d = postpos_distribution(&corpus).unwrap();
    // (label, follower, count, support)
    let hand = [
        ("LOC", "JKB", 3, 6),
        ("LOC", "JKG", 2, 6),
        ("LOC", "NONE", 1, 6),
        ("PER", "JKS", 1, 3),
        ("PER", "JX", 2, 3),
        ("ORG", "NONE", 1, 1),
    ];
    let mut failed = Vec::new();
    for (label, follower, n, total) in hand {
        let got: Q = d.percentage(label, follower);
        if got != Q::new(100 * n, total) {
            failed.push(format!("{label}/{follower} = {got}"));
        }
    }
    let shown = [
        ("LOC", "JKB", "50.00"),
        ("LOC", "JKG", "33.33"),
        ("LOC", "NONE", "16.67"),
        ("PER", "JX", "66.67"),
    ];
    for (label, follower, want) in shown {
        let got = format_2dp(d.percentage::<f64>(label, follower));
        if got != want {
            failed.push(format!("{label}/{follower} shown {got}"));
        }
    }
    let mut sums = BTreeMap::new();
    for (label, row) in d.table::<f64>() {
        let displayed: f64 = row
            .values()
            .map(|v| format_2dp(*v).parse::<f64>().unwrap())
            .sum();
        if (displayed - 100.0).abs() > 0.05 {
            failed.push(format!("{label} row sums to {displayed}"));
        }
        sums.insert(label.to_string(), displayed);
    }
    if failed.is_empty() {
        outcome(
            true,
            format!("6 hand counts exact; displayed row sums {sums:?}"),
        )
    } else {
        outcome(false, failed.join("; "))
    }
}

// ---------------------------------------------------------------- AC9

fn ac9() -> Outcome {
    let policy = ExclusionPolicy::default();
    let mut r = rng(9);
    let corpus: Vec<_> = (0..300).map(|i| common::sentence(&mut r, i)).collect();
    let mut failed = Vec::new();

    let (eoj_gold, eoj_pred): (Vec<EojeolSentence>, Vec<MorphSentence>) = corpus
        .iter()
        .filter_map(|g| {
            eoj2morph(&g.eojeol, &g.morph, &policy)
                .ok()
                .map(|o| (g.eojeol.clone(), o.sentence))
        })
        .unzip();
    let (syl_gold, syl_pred): (Vec<SyllableSentence>, Vec<MorphSentence>) = corpus
        .iter()
        .filter_map(|g| {
            syl2morph(&g.syllable, &g.morph)
                .ok()
                .map(|m| (compact(&g.syllable), m))
        })
        .unzip();
    let e: Report<Q> = evaluate_cross_format(&eoj_gold, &eoj_pred, BackConvert::Eojeol).unwrap();
    let s: Report<Q> = evaluate_cross_format(&syl_gold, &syl_pred, BackConvert::Syllable).unwrap();
    let hundred = Q::from_integer(100);
    for (name, rep, n) in [
        ("eojeol", &e, eoj_gold.len()),
        ("syllable", &s, syl_gold.len()),
    ] {
        let o = &rep.overall;
        if (o.precision, o.recall, o.f1) != (hundred, hundred, hundred)
            || !rep.excluded.is_empty()
            || rep.sentences != n
        {
            failed.push(format!(
                "{name}: {}/{}/{} excluded {}",
                format_2dp(o.precision),
                format_2dp(o.recall),
                format_2dp(o.f1),
                rep.excluded.len()
            ));
        }
    }
    let note = "neural-model scores need the original corpora and trained networks, so they are not reproduced here";
    if failed.is_empty() {
        outcome(true, format!("gold vs converted morpheme gold: eojeol {} and syllable {} sentences at 100/100/100; {note}", eoj_gold.len(), syl_gold.len()))
    } else {
        outcome(false, format!("{}; {note}", failed.join("; ")))
    }
}

/// Drops whitespace rows, as the syllable back-conversion does.
fn compact(s: &SyllableSentence) -> SyllableSentence {
    SyllableSentence::new(
        s.rows
            .iter()
            .filter(|r| !r.is_space())
            .map(|r| (r.syllable, r.tag.clone())),
    )
}

// ----------------------------------------------------------------

/// Id, name, time limit, check.
type Criterion = (
    &'static str,
    &'static str,
    Option<Duration>,
    fn() -> Outcome,
);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "AC1",
            "worked examples reproduced",
            Some(Duration::from_secs(1)),
            ac1,
        ),
        (
            "AC2",
            "round-trip invertibility",
            Some(Duration::from_secs(30)),
            ac2,
        ),
        (
            "AC3",
            "CRF inference against enumeration",
            Some(Duration::from_secs(10)),
            ac3,
        ),
        ("AC4", "CRF gradient against finite differences", None, ac4),
        (
            "AC5",
            "CRF fits a small corpus, deterministically",
            Some(Duration::from_secs(60)),
            ac5,
        ),
        ("AC6", "conlleval-compatible scoring", None, ac6),
        ("AC7", "BIO/BIOES round trip", None, ac7),
        ("AC8", "postposition statistics", None, ac8),
        ("AC9", "cross-format evaluation path", None, ac9),
    ];
    let mut all = true;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > limit {
                o.pass = false;
                o.detail
                    .push_str(&format!("; too slow (limit {}s)", limit.as_secs()));
            }
        }
        all &= o.pass;
        println!(
            "{id} {} {name} [{:.2}s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
