use std::io::Write;

use crate::tagsets::NeTag;

use super::types::{EojeolSpan, MorphSentence, MorphToken};
use super::{ConlluError, Mode};

fn join_misc<'a>(items: impl Iterator<Item = &'a str>) -> String {
    let joined = items.collect::<Vec<_>>().join("|");
    if joined.is_empty() {
        "_".to_owned()
    } else {
        joined
    }
}

fn token_line(token: &MorphToken, mode: Mode) -> String {
    let upos = token.upos.map_or("_", |u| u.as_str());
    let xpos = token.xpos.as_ref().map_or("_", |x| x.as_str());
    let (feats, misc) = match (mode, &token.ne) {
        (Mode::Figure2Compat, NeTag::Outside) => (
            "_".to_owned(),
            join_misc(token.misc.iter().map(String::as_str)),
        ),
        (Mode::Figure2Compat, ne) => (
            ne.to_string(),
            join_misc(token.misc.iter().map(String::as_str)),
        ),
        (Mode::Canonical, NeTag::Outside) => (
            "_".to_owned(),
            join_misc(token.misc.iter().map(String::as_str)),
        ),
        (Mode::Canonical, ne) => {
            let ne = format!("NE={ne}");
            let items = std::iter::once(ne.as_str()).chain(token.misc.iter().map(String::as_str));
            ("_".to_owned(), join_misc(items))
        }
    };
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t_\t_\t_\t{}",
        token.id, token.form, token.lemma, upos, xpos, feats, misc
    )
}

fn range_line(span: &EojeolSpan) -> String {
    format!(
        "{}-{}\t{}\t_\t_\t_\t_\t_\t_\t_\t{}",
        span.start_id,
        span.end_id,
        span.surface,
        join_misc(span.misc.iter().map(String::as_str))
    )
}

/// Writes one sentence followed by a blank line. Invariants are checked first
/// and nothing is written for an invalid sentence.
pub fn write_sentence<W: Write>(
    out: &mut W,
    sentence: &MorphSentence,
    mode: Mode,
) -> Result<(), ConlluError> {
    sentence.check()?;
    let mut buf = String::new();
    if let Some(id) = &sentence.sent_id {
        buf.push_str(&format!("# sent_id = {id}\n"));
    }
    buf.push_str(&format!("# text = {}\n", sentence.text));
    for c in &sentence.comments {
        buf.push('#');
        buf.push_str(c);
        buf.push('\n');
    }
    for span in &sentence.eojeols {
        if !span.is_single() {
            buf.push_str(&range_line(span));
            buf.push('\n');
        }
        for token in &span.tokens {
            buf.push_str(&token_line(token, mode));
            buf.push('\n');
        }
    }
    buf.push('\n');
    out.write_all(buf.as_bytes())?;
    Ok(())
}

/// Serializes a document.
pub fn write_conllu(sentences: &[MorphSentence], mode: Mode) -> Result<String, ConlluError> {
    let mut out = Vec::new();
    for s in sentences {
        write_sentence(&mut out, s, mode)?;
    }
    Ok(String::from_utf8(out).expect("writer emits UTF-8"))
}
