//! Character coverage of morpheme forms over an eojeol surface.

use std::ops::Range;

use super::hangul;

/// Surfaces longer than this many jamo are not aligned at jamo level.
const MAX_JAMO: usize = 256;

/// Per-morpheme half-open character ranges into the surface. Ranges are
/// ordered and non-decreasing; contracted morphemes may share a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub ranges: Vec<Range<usize>>,
    /// True when every form matched the surface verbatim.
    pub exact: bool,
}

/// Aligns `forms` onto `surface`: exact prefix matching first, then a
/// minimum-edit segmentation of the surface jamo. `None` when no plausible
/// alignment exists.
pub fn align(surface: &str, forms: &[&str]) -> Option<Coverage> {
    let chars: Vec<char> = surface.chars().collect();
    if forms.is_empty() || chars.is_empty() {
        return None;
    }
    exact(&chars, forms).or_else(|| by_jamo(&chars, forms))
}

fn exact(chars: &[char], forms: &[&str]) -> Option<Coverage> {
    let mut pos = 0;
    let mut ranges = Vec::with_capacity(forms.len());
    for form in forms {
        let start = pos;
        for c in form.chars() {
            if chars.get(pos) != Some(&c) {
                return None;
            }
            pos += 1;
        }
        ranges.push(start..pos);
    }
    (pos == chars.len()).then_some(Coverage {
        ranges,
        exact: true,
    })
}

fn edit_row(pattern: &[char], text: &[char]) -> Vec<usize> {
    // cost[p] = edit distance between pattern and text[..p]
    let mut prev: Vec<usize> = (0..=text.len()).collect();
    let mut cur = vec![0; text.len() + 1];
    for (i, &pc) in pattern.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &tc) in text.iter().enumerate() {
            let sub = prev[j] + usize::from(pc != tc);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev
}

fn by_jamo(chars: &[char], forms: &[&str]) -> Option<Coverage> {
    let mut seq = Vec::new();
    let mut owner = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        let before = seq.len();
        hangul::push_jamo(&mut seq, c);
        owner.resize(owner.len() + seq.len() - before, i);
    }
    let n = seq.len();
    if n > MAX_JAMO {
        return None;
    }
    let patterns: Vec<Vec<char>> = forms.iter().map(|f| hangul::jamo(f)).collect();

    const INF: usize = usize::MAX / 2;
    // best[k][p]: cost of aligning the first k forms onto seq[..p]
    let mut best = vec![vec![INF; n + 1]; forms.len() + 1];
    let mut back = vec![vec![0usize; n + 1]; forms.len() + 1];
    best[0][0] = 0;
    for (k, pattern) in patterns.iter().enumerate() {
        for q in 0..=n {
            if best[k][q] >= INF {
                continue;
            }
            let row = edit_row(pattern, &seq[q..]);
            for (len, &cost) in row.iter().enumerate() {
                let p = q + len;
                let total = best[k][q] + cost;
                if total < best[k + 1][p] {
                    best[k + 1][p] = total;
                    back[k + 1][p] = q;
                }
            }
        }
    }
    // at most half of the canonical jamo may be rewritten
    let budget = patterns.iter().map(Vec::len).sum::<usize>() / 2;
    if best[forms.len()][n] > budget {
        return None;
    }

    let mut bounds = vec![n; forms.len() + 1];
    for k in (1..=forms.len()).rev() {
        bounds[k - 1] = back[k][bounds[k]];
    }
    let mut ranges = Vec::with_capacity(forms.len());
    for k in 0..forms.len() {
        let (a, b) = (bounds[k], bounds[k + 1]);
        let pattern = &patterns[k];
        if a < b {
            ranges.push(owner[a]..owner[b - 1] + 1);
        } else {
            // elided morpheme (a bare copula or ending); attach it to the
            // character at the boundary
            if pattern.len() > 2 {
                return None;
            }
            let c = if a < n { owner[a] } else { chars.len() - 1 };
            ranges.push(c..c + 1);
        }
    }
    Some(Coverage {
        ranges,
        exact: false,
    })
}
