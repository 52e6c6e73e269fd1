use serde::{Deserialize, Serialize};

use crate::tagsets::{NeTag, UposTag, XposTag};

use super::ConlluError;

pub(crate) const SPACE_AFTER_NO: &str = "SpaceAfter=No";

/// One morpheme row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphToken {
    pub id: u32,
    pub form: String,
    pub lemma: String,
    pub upos: Option<UposTag>,
    pub xpos: Option<XposTag>,
    pub ne: NeTag,
    /// MISC items other than the NE annotation, in file order.
    pub misc: Vec<String>,
}

impl MorphToken {
    /// Token with id 0; ids are assigned when the sentence is assembled.
    pub fn new(
        form: impl Into<String>,
        lemma: impl Into<String>,
        upos: UposTag,
        xpos: &str,
    ) -> Self {
        MorphToken {
            id: 0,
            form: form.into(),
            lemma: lemma.into(),
            upos: Some(upos),
            xpos: Some(XposTag::new(xpos)),
            ne: NeTag::Outside,
            misc: Vec::new(),
        }
    }

    pub fn with_ne(mut self, ne: NeTag) -> Self {
        self.ne = ne;
        self
    }
}

/// A surface eojeol and the morphemes it decomposes into.
///
/// Multi-morpheme eojeols are written with a range line; `misc` holds that
/// line's MISC column. Single-morpheme eojeols keep their MISC on the token
/// and leave `misc` empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EojeolSpan {
    pub start_id: u32,
    pub end_id: u32,
    pub surface: String,
    pub misc: Vec<String>,
    pub tokens: Vec<MorphToken>,
}

impl EojeolSpan {
    /// Builds a span; ids are assigned by [`MorphSentence::new`].
    pub fn new(surface: impl Into<String>, tokens: Vec<MorphToken>) -> Self {
        EojeolSpan {
            start_id: 0,
            end_id: 0,
            surface: surface.into(),
            misc: Vec::new(),
            tokens,
        }
    }

    /// Single-morpheme eojeol whose surface is the token form.
    pub fn single(token: MorphToken) -> Self {
        Self::new(token.form.clone(), vec![token])
    }

    pub fn is_single(&self) -> bool {
        self.tokens.len() == 1
    }

    fn misc_holder(&self) -> &Vec<String> {
        if self.is_single() {
            &self.tokens[0].misc
        } else {
            &self.misc
        }
    }

    fn misc_holder_mut(&mut self) -> &mut Vec<String> {
        if self.is_single() {
            &mut self.tokens[0].misc
        } else {
            &mut self.misc
        }
    }

    /// False when the eojeol is glued to the next one (`SpaceAfter=No`).
    pub fn space_after(&self) -> bool {
        !self.misc_holder().iter().any(|m| m == SPACE_AFTER_NO)
    }

    pub fn set_space_after(&mut self, space: bool) {
        let misc = self.misc_holder_mut();
        misc.retain(|m| m != SPACE_AFTER_NO);
        if !space {
            misc.push(SPACE_AFTER_NO.to_owned());
        }
    }
}

/// A sentence in the morpheme-based CoNLL-U format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphSentence {
    pub sent_id: Option<String>,
    pub text: String,
    /// Comment lines other than `sent_id` and `text`, without the leading `#`.
    pub comments: Vec<String>,
    pub eojeols: Vec<EojeolSpan>,
}

impl MorphSentence {
    /// Assembles a sentence, numbering tokens from 1 and deriving `text`.
    pub fn new(sent_id: Option<String>, mut eojeols: Vec<EojeolSpan>) -> Self {
        let mut next = 1u32;
        for span in &mut eojeols {
            span.start_id = next;
            for token in &mut span.tokens {
                token.id = next;
                next += 1;
            }
            span.end_id = next - 1;
        }
        let text = surface_text(&eojeols);
        MorphSentence {
            sent_id,
            text,
            comments: Vec::new(),
            eojeols,
        }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &MorphToken> {
        self.eojeols.iter().flat_map(|e| e.tokens.iter())
    }

    pub fn tokens_mut(&mut self) -> impl Iterator<Item = &mut MorphToken> {
        self.eojeols.iter_mut().flat_map(|e| e.tokens.iter_mut())
    }

    pub fn token_count(&self) -> usize {
        self.eojeols.iter().map(|e| e.tokens.len()).sum()
    }

    pub fn ne_tags(&self) -> Vec<NeTag> {
        self.tokens().map(|t| t.ne.clone()).collect()
    }

    /// Overwrites NE tags in token order. Panics if the length differs.
    pub fn set_ne_tags(&mut self, tags: &[NeTag]) {
        assert_eq!(
            tags.len(),
            self.token_count(),
            "tag count must equal token count"
        );
        for (token, tag) in self.tokens_mut().zip(tags) {
            token.ne = tag.clone();
        }
    }

    /// Copy with every NE tag set to Outside.
    pub fn without_ne(&self) -> Self {
        let mut s = self.clone();
        for t in s.tokens_mut() {
            t.ne = NeTag::Outside;
        }
        s
    }

    /// Groups eojeol spans into whitespace-delimited words: spans joined by
    /// `SpaceAfter=No` form one word. Returns index ranges into `eojeols`.
    pub fn words(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, span) in self.eojeols.iter().enumerate() {
            if span.space_after() || i + 1 == self.eojeols.len() {
                out.push(start..i + 1);
                start = i + 1;
            }
        }
        out
    }

    /// Checks every type invariant; the first violation is reported.
    pub fn check(&self) -> Result<(), ConlluError> {
        let fail = |message: String| {
            Err(ConlluError::Invariant {
                sent_id: self.sent_id.clone(),
                message,
            })
        };
        let mut expected = 1u32;
        for span in &self.eojeols {
            if span.tokens.is_empty() {
                return fail(format!("eojeol `{}` has no tokens", span.surface));
            }
            if span.surface.is_empty() || has_control(&span.surface) {
                return fail(format!(
                    "eojeol surface {:?} is empty or contains tab/newline",
                    span.surface
                ));
            }
            if span.start_id != expected
                || span.end_id != span.start_id + span.tokens.len() as u32 - 1
            {
                return fail(format!(
                    "eojeol `{}` declares ids {}-{} but expected {}-{}",
                    span.surface,
                    span.start_id,
                    span.end_id,
                    expected,
                    expected + span.tokens.len() as u32 - 1
                ));
            }
            for token in &span.tokens {
                if token.id != expected {
                    return fail(format!(
                        "token `{}` has id {} but expected {}",
                        token.form, token.id, expected
                    ));
                }
                if token.form.is_empty() || token.lemma.is_empty() {
                    return fail(format!("token {} has an empty form or lemma", token.id));
                }
                if has_control(&token.form) || has_control(&token.lemma) {
                    return fail(format!("token {} contains tab or newline", token.id));
                }
                if token
                    .misc
                    .iter()
                    .any(|m| m.is_empty() || m.contains('|') || has_control(m))
                {
                    return fail(format!("token {} has a malformed MISC item", token.id));
                }
                expected += 1;
            }
            if span.is_single() {
                if span.surface != span.tokens[0].form {
                    return fail(format!(
                        "single-morpheme eojeol `{}` differs from its token form `{}`",
                        span.surface, span.tokens[0].form
                    ));
                }
                if !span.misc.is_empty() {
                    return fail(format!(
                        "single-morpheme eojeol `{}` carries range MISC",
                        span.surface
                    ));
                }
            }
        }
        let text = surface_text(&self.eojeols);
        if text != self.text {
            return fail(format!(
                "text {:?} does not match eojeols {:?}",
                self.text, text
            ));
        }
        Ok(())
    }
}

/// Joins eojeol surfaces with single spaces, honoring `SpaceAfter=No`.
pub fn surface_text(eojeols: &[EojeolSpan]) -> String {
    let mut text = String::new();
    for (i, span) in eojeols.iter().enumerate() {
        text.push_str(&span.surface);
        if span.space_after() && i + 1 < eojeols.len() {
            text.push(' ');
        }
    }
    text
}

fn has_control(s: &str) -> bool {
    s.contains(['\t', '\n', '\r'])
}
