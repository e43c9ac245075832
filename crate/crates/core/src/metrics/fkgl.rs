//! Flesch-Kincaid grade level.
//!
//! `0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59`
//!
//! Words are tokens containing at least one alphanumeric character. Syllables
//! come from a vowel-group count with a few fixed adjustments:
//!
//! 1. a word listed in the exception table uses the listed count;
//! 2. otherwise count maximal runs of `a e i o u y`;
//! 3. a final silent `e` is dropped unless the word ends in consonant + `le`;
//! 4. a final `ed` is dropped unless preceded by `t` or `d`;
//! 5. a final `es` is dropped unless preceded by `s`, `x`, `z`, `ch` or `sh`;
//! 6. every word has at least one syllable (numbers count as one).
//!
//! Rules 3 to 5 apply only while the count is above one.

use super::MetricsError;
use crate::text::Sentence;

const EXCEPTIONS: &[(&str, usize)] = &[
    ("area", 3),
    ("being", 2),
    ("business", 2),
    ("every", 2),
    ("idea", 3),
    ("people", 2),
    ("poem", 2),
    ("quiet", 2),
    ("science", 2),
    ("create", 2),
    ("video", 3),
    ("whole", 1),
];

pub fn is_word(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric)
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

pub fn count_syllables(word: &str) -> usize {
    let w: String = word
        .to_lowercase()
        .chars()
        .filter(char::is_ascii_alphabetic)
        .collect();
    if w.is_empty() {
        return 1;
    }
    if let Some(&(_, n)) = EXCEPTIONS.iter().find(|(e, _)| *e == w) {
        return n;
    }
    let chars: Vec<char> = w.chars().collect();
    let mut count = 0;
    let mut prev_vowel = false;
    for &c in &chars {
        let v = is_vowel(c);
        if v && !prev_vowel {
            count += 1;
        }
        prev_vowel = v;
    }
    let len = chars.len();
    let at = |i: usize| chars.get(i).copied().unwrap_or(' ');
    if count > 1 && w.ends_with('e') && !w.ends_with("ee") {
        let consonant_le = w.ends_with("le") && len >= 3 && !is_vowel(at(len - 3));
        if !consonant_le && !w.ends_with("ed") && !w.ends_with("es") {
            count -= 1;
        }
    }
    if count > 1 && w.ends_with("ed") && !matches!(at(len.wrapping_sub(3)), 't' | 'd') {
        count -= 1;
    }
    if count > 1 && w.ends_with("es") {
        let keeps = matches!(at(len.wrapping_sub(3)), 's' | 'x' | 'z')
            || w.ends_with("ches")
            || w.ends_with("shes");
        if !keeps {
            count -= 1;
        }
    }
    count.max(1)
}

pub fn fkgl_from_counts(sentences: usize, words: usize, syllables: usize) -> f64 {
    0.39 * (words as f64 / sentences as f64) + 11.8 * (syllables as f64 / words as f64) - 15.59
}

/// Corpus FKGL, treating each [`Sentence`] as one sentence.
pub fn fkgl(corpus: &[Sentence]) -> Result<f64, MetricsError> {
    if corpus.is_empty() {
        return Err(MetricsError::Validation("FKGL of an empty corpus".into()));
    }
    let mut words = 0;
    let mut syllables = 0;
    for tok in corpus.iter().flat_map(Sentence::tokens).filter(|t| is_word(t)) {
        words += 1;
        syllables += count_syllables(tok);
    }
    if words == 0 {
        return Err(MetricsError::Validation("FKGL of a corpus with no words".into()));
    }
    Ok(fkgl_from_counts(corpus.len(), words, syllables))
}

/// Mean number of tokens per sentence.
pub fn mean_length(corpus: &[Sentence]) -> f64 {
    if corpus.is_empty() {
        return 0.0;
    }
    corpus.iter().map(Sentence::len).sum::<usize>() as f64 / corpus.len() as f64
}
