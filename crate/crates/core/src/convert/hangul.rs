//! Hangul syllable decomposition into compatibility jamo.

const SYLLABLE_BASE: u32 = 0xAC00;
const SYLLABLE_LAST: u32 = 0xD7A3;
const VOWELS: u32 = 21;
const FINALS: u32 = 28;

const INITIAL: [char; 19] = [
    'ㄱ', 'ㄲ', 'ㄴ', 'ㄷ', 'ㄸ', 'ㄹ', 'ㅁ', 'ㅂ', 'ㅃ', 'ㅅ', 'ㅆ', 'ㅇ', 'ㅈ', 'ㅉ', 'ㅊ', 'ㅋ',
    'ㅌ', 'ㅍ', 'ㅎ',
];

const MEDIAL: [char; 21] = [
    'ㅏ', 'ㅐ', 'ㅑ', 'ㅒ', 'ㅓ', 'ㅔ', 'ㅕ', 'ㅖ', 'ㅗ', 'ㅘ', 'ㅙ', 'ㅚ', 'ㅛ', 'ㅜ', 'ㅝ', 'ㅞ',
    'ㅟ', 'ㅠ', 'ㅡ', 'ㅢ', 'ㅣ',
];

// Index 0 is "no final".
const FINAL: [char; 28] = [
    '\0', 'ㄱ', 'ㄲ', 'ㄳ', 'ㄴ', 'ㄵ', 'ㄶ', 'ㄷ', 'ㄹ', 'ㄺ', 'ㄻ', 'ㄼ', 'ㄽ', 'ㄾ', 'ㄿ', 'ㅀ',
    'ㅁ', 'ㅂ', 'ㅄ', 'ㅅ', 'ㅆ', 'ㅇ', 'ㅈ', 'ㅊ', 'ㅋ', 'ㅌ', 'ㅍ', 'ㅎ',
];

fn split_cluster(c: char) -> &'static [char] {
    match c {
        'ㄳ' => &['ㄱ', 'ㅅ'],
        'ㄵ' => &['ㄴ', 'ㅈ'],
        'ㄶ' => &['ㄴ', 'ㅎ'],
        'ㄺ' => &['ㄹ', 'ㄱ'],
        'ㄻ' => &['ㄹ', 'ㅁ'],
        'ㄼ' => &['ㄹ', 'ㅂ'],
        'ㄽ' => &['ㄹ', 'ㅅ'],
        'ㄾ' => &['ㄹ', 'ㅌ'],
        'ㄿ' => &['ㄹ', 'ㅍ'],
        'ㅀ' => &['ㄹ', 'ㅎ'],
        'ㅄ' => &['ㅂ', 'ㅅ'],
        _ => &[],
    }
}

fn push_consonant(out: &mut Vec<char>, c: char) {
    match split_cluster(c) {
        [] => out.push(c),
        parts => out.extend_from_slice(parts),
    }
}

/// Appends the jamo of `c` to `out`. Precomposed syllables, conjoining jamo
/// and compatibility jamo all map onto compatibility jamo, with consonant
/// clusters split; any other character maps to itself.
pub fn push_jamo(out: &mut Vec<char>, c: char) {
    let code = c as u32;
    match code {
        SYLLABLE_BASE..=SYLLABLE_LAST => {
            let offset = code - SYLLABLE_BASE;
            let initial = offset / (VOWELS * FINALS);
            let medial = (offset % (VOWELS * FINALS)) / FINALS;
            let fin = offset % FINALS;
            out.push(INITIAL[initial as usize]);
            out.push(MEDIAL[medial as usize]);
            if fin > 0 {
                push_consonant(out, FINAL[fin as usize]);
            }
        }
        0x1100..=0x1112 => out.push(INITIAL[(code - 0x1100) as usize]),
        0x1161..=0x1175 => out.push(MEDIAL[(code - 0x1161) as usize]),
        0x11A8..=0x11C2 => push_consonant(out, FINAL[(code - 0x11A7) as usize]),
        _ => push_consonant(out, c),
    }
}

pub fn jamo(s: &str) -> Vec<char> {
    let mut out = Vec::with_capacity(s.len());
    for c in s.chars() {
        push_jamo(&mut out, c);
    }
    out
}

pub fn is_syllable(c: char) -> bool {
    (SYLLABLE_BASE..=SYLLABLE_LAST).contains(&(c as u32))
}
