//! Random corpora for round-trip and acceptance tests.
#![allow(dead_code)]

use morphner::conllu::{EojeolSpan, MorphSentence, MorphToken};
use morphner::convert::{EojeolSentence, SyllableSentence};
use morphner::tagsets::{NeLabel, NeTag, UposTag};
use rand::seq::SliceRandom;
use rand::Rng;

type M = (&'static str, &'static str, UposTag, &'static str);

const PROPER: &[&str] = &[
    "서울",
    "부산",
    "대한민국",
    "프랑스",
    "독일",
    "유엔",
    "삼성전자",
    "한국은행",
    "세종대왕",
    "이순신",
    "김철수",
    "웅가로",
    "엠마누엘",
];
const COMMON: &[&str] = &[
    "오늘",
    "학교",
    "회사",
    "정부",
    "사람",
    "도시",
    "디자이너",
    "의상",
    "시장",
    "대통령",
    "축구",
    "경기",
    "원칙",
    "직물",
    "주",
];

/// Postpositions as (after a final consonant, after a vowel, XPOS).
const PARTICLES: &[(&str, &str, &str)] = &[
    ("의", "의", "JKG"),
    ("에", "에", "JKB"),
    ("에서", "에서", "JKB"),
    ("은", "는", "JX"),
    ("이", "가", "JKS"),
    ("을", "를", "JKO"),
    ("과", "와", "JC"),
    ("으로", "로", "JKB"),
    ("도", "도", "JX"),
];

/// Words whose surface is not the plain concatenation of their morphemes.
const CONTRACTED: &[(&str, &[M])] = &[
    (
        "갔다",
        &[
            ("가", "가", UposTag::Verb, "VV"),
            ("았", "았", UposTag::Part, "EP"),
            ("다", "다", UposTag::Part, "EF"),
        ],
    ),
    (
        "나섰다",
        &[
            ("나서", "나서", UposTag::Verb, "VV"),
            ("었", "었", UposTag::Part, "EP"),
            ("다", "다", UposTag::Part, "EF"),
        ],
    ),
    (
        "했다",
        &[
            ("하", "하", UposTag::Verb, "VV"),
            ("였", "였", UposTag::Part, "EP"),
            ("다", "다", UposTag::Part, "EF"),
        ],
    ),
    (
        "먹었다",
        &[
            ("먹", "먹", UposTag::Verb, "VV"),
            ("었", "었", UposTag::Part, "EP"),
            ("다", "다", UposTag::Part, "EF"),
        ],
    ),
];

/// Entity-initial words with no noun, so only later exclusion tiers find a carrier.
const FALLBACK: &[(&str, &[M])] = &[
    (
        "지난",
        &[
            ("지나", "지나", UposTag::Verb, "VV"),
            ("ㄴ", "은", UposTag::Part, "ETM"),
        ],
    ),
    (
        "새로운",
        &[
            ("새롭", "새롭", UposTag::Adj, "VA"),
            ("ㄴ", "은", UposTag::Part, "ETM"),
        ],
    ),
    (
        "세계적인",
        &[
            ("세계", "세계", UposTag::Noun, "NNG"),
            ("적", "적", UposTag::Part, "XSN"),
            ("이", "이", UposTag::Verb, "VCP"),
            ("ㄴ", "은", UposTag::Part, "ETM"),
        ],
    ),
];

const LABELS: &[&str] = &["PER", "LOC", "ORG", "DAT", "AFW", "TRM", "EVT"];

/// One whitespace-delimited word: its spans, and how many of its leading
/// characters an entity ending in it covers.
#[derive(Clone, Debug)]
struct Word {
    spans: Vec<EojeolSpan>,
    core: usize,
}

impl Word {
    fn surface(&self) -> String {
        self.spans.iter().map(|s| s.surface.as_str()).collect()
    }
}

fn tok(m: &M) -> MorphToken {
    MorphToken::new(m.0, m.1, m.2, m.3)
}

fn has_final_consonant(s: &str) -> bool {
    s.chars()
        .last()
        .is_some_and(|c| ('가'..='힣').contains(&c) && !(c as u32 - 0xAC00).is_multiple_of(28))
}

fn noun(rng: &mut impl Rng) -> (&'static str, UposTag, &'static str) {
    if rng.gen_bool(0.5) {
        (PROPER.choose(rng).unwrap(), UposTag::Propn, "NNP")
    } else {
        (COMMON.choose(rng).unwrap(), UposTag::Noun, "NNG")
    }
}

/// Noun with an optional particle: `Some(true)` is 의, `Some(false)` any.
fn noun_word(rng: &mut impl Rng, particle: Option<bool>) -> Word {
    let (n, upos, xpos) = noun(rng);
    let mut tokens = vec![MorphToken::new(n, n, upos, xpos)];
    let mut surface = n.to_owned();
    match particle {
        Some(true) => {
            tokens.push(MorphToken::new("의", "의", UposTag::Adp, "JKG"));
            surface.push('의');
        }
        Some(false) => {
            let (c, v, x) = PARTICLES.choose(rng).unwrap();
            let p = if has_final_consonant(n) { c } else { v };
            tokens.push(MorphToken::new(*p, *p, UposTag::Adp, x));
            surface.push_str(p);
        }
        None => {}
    }
    Word {
        spans: vec![EojeolSpan::new(surface, tokens)],
        core: n.chars().count(),
    }
}

fn fixed_word(entry: &(&str, &[M])) -> Word {
    let surface = entry.0;
    let tokens: Vec<MorphToken> = entry.1.iter().map(tok).collect();
    Word {
        spans: vec![EojeolSpan::new(surface, tokens)],
        core: surface.chars().count(),
    }
}

/// A sentence in all three formats. `morph` carries no NE tags.
#[derive(Clone, Debug)]
pub struct Generated {
    pub morph: MorphSentence,
    pub eojeol: EojeolSentence,
    pub syllable: SyllableSentence,
}

/// Random sentence covering multi-eojeol entities, particles inside
/// entities, fallback-only carriers and contracted surfaces.
pub fn sentence(rng: &mut impl Rng, id: usize) -> Generated {
    let mut words: Vec<Word> = Vec::new();
    // (first word, word count, label)
    let mut entities: Vec<(usize, usize, NeLabel)> = Vec::new();
    let chunks = rng.gen_range(1..=6);
    for _ in 0..chunks {
        if rng.gen_bool(0.45) {
            let label = NeLabel::new(*LABELS.choose(rng).unwrap()).unwrap();
            let start = words.len();
            match rng.gen_range(0..4) {
                0 => {
                    let particle = rng.gen_bool(0.6).then_some(false);
                    words.push(noun_word(rng, particle));
                }
                1 => {
                    let n = rng.gen_range(2..=3);
                    for k in 0..n {
                        let last = k + 1 == n;
                        let particle = if last {
                            rng.gen_bool(0.6).then_some(false)
                        } else {
                            rng.gen_bool(0.4).then_some(true)
                        };
                        words.push(noun_word(rng, particle));
                    }
                }
                2 => {
                    words.push(fixed_word(FALLBACK.choose(rng).unwrap()));
                    let particle = rng.gen_bool(0.5).then_some(false);
                    words.push(noun_word(rng, particle));
                }
                _ => words.push(fixed_word(FALLBACK.choose(rng).unwrap())),
            }
            entities.push((start, words.len() - start, label));
        } else {
            let w = match rng.gen_range(0..3) {
                0 => fixed_word(CONTRACTED.choose(rng).unwrap()),
                _ => {
                    let particle = rng.gen_bool(0.7).then_some(false);
                    noun_word(rng, particle)
                }
            };
            words.push(w);
        }
    }
    if rng.gen_bool(0.7) {
        let last = words.last_mut().unwrap();
        last.spans.last_mut().unwrap().set_space_after(false);
        last.spans.push(EojeolSpan::single(MorphToken::new(
            ".",
            ".",
            UposTag::Punct,
            "SF",
        )));
    }
    let mut word_tags = vec![NeTag::Outside; words.len()];
    for (start, len, label) in &entities {
        word_tags[*start] = NeTag::begin(label);
        for t in &mut word_tags[start + 1..start + len] {
            *t = NeTag::inside(label);
        }
    }
    let eojeol = EojeolSentence::new(words.iter().map(Word::surface).zip(word_tags));

    let mut chars: Vec<(char, NeTag)> = Vec::new();
    let mut entity_at: Vec<Option<(usize, usize)>> = vec![None; words.len()];
    for (e, (start, len, _)) in entities.iter().enumerate() {
        for slot in &mut entity_at[*start..start + len] {
            *slot = Some((e, start + len - 1));
        }
    }
    for (w, word) in words.iter().enumerate() {
        if w > 0 {
            chars.push((' ', NeTag::Outside));
        }
        let surface = word.surface();
        for (i, c) in surface.chars().enumerate() {
            let tag = match entity_at[w] {
                Some((e, last)) if w < last || i < word.core => {
                    let (start, _, label) = &entities[e];
                    if w == *start && i == 0 {
                        NeTag::begin(label)
                    } else {
                        NeTag::inside(label)
                    }
                }
                _ => NeTag::Outside,
            };
            chars.push((c, tag));
        }
    }
    let syllable = SyllableSentence::new(chars);
    let spans: Vec<EojeolSpan> = words.into_iter().flat_map(|w| w.spans).collect();
    let morph = MorphSentence::new(Some(format!("gen-{id}")), spans);
    Generated {
        morph,
        eojeol,
        syllable,
    }
}

/// A syllable annotation whose entity ends inside a morpheme.
pub fn split_syllable(rng: &mut impl Rng, id: usize) -> (SyllableSentence, MorphSentence) {
    loop {
        let g = sentence(rng, id);
        let mut offsets = Vec::new();
        let mut at = 0;
        for range in g.morph.words() {
            let spans = &g.morph.eojeols[range];
            let first = &spans[0].tokens[0];
            if matches!(first.upos, Some(UposTag::Noun | UposTag::Propn))
                && first.form.chars().count() >= 2
            {
                offsets.push(at);
            }
            at += spans
                .iter()
                .map(|s| s.surface.chars().count())
                .sum::<usize>()
                + 1;
        }
        if let Some(&at) = offsets.choose(rng) {
            let label = NeLabel::new("LOC").unwrap();
            let rows = g.morph.text.chars().enumerate().map(|(i, c)| {
                (
                    c,
                    if i == at {
                        NeTag::begin(&label)
                    } else {
                        NeTag::Outside
                    },
                )
            });
            return (SyllableSentence::new(rows), g.morph);
        }
    }
}

/// An eojeol annotation that does not match its analysis.
pub fn mismatched_eojeol(rng: &mut impl Rng, id: usize) -> (EojeolSentence, MorphSentence) {
    let g = sentence(rng, id);
    let mut eojeol = g.eojeol.clone();
    if rng.gen_bool(0.5) || eojeol.rows.len() < 2 {
        eojeol.rows.push(morphner::convert::EojeolRow {
            index: eojeol.rows.len() as u32 + 1,
            surface: "추가".into(),
            tag: NeTag::Outside,
        });
    } else {
        let i = rng.gen_range(0..eojeol.rows.len());
        eojeol.rows[i].surface.push('들');
    }
    (eojeol, g.morph)
}
