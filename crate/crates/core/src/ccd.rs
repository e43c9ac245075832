//! Complex component detection from classifier attention.
//!
//! With `A[h][i]` the `[CLS]` attention of head `h` to token `i`:
//!
//! ```text
//! score[i]  = sum_h A[h][i]
//! threshold = (sum_h sum_i A[h][i]) / N
//! complex_i = score[i] >= threshold
//! ```
//!
//! Subtoken scores are summed per word, and a word is complex when its summed
//! score reaches the threshold. Complex words outside the stoplist become the
//! paraphraser's negative constraints.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::backends::AttentionTensor;
use crate::text::{is_punctuation, Sentence};

/// Function words never used as negative constraints.
pub const STOPLIST: &[&str] = &[
    "a", "about", "after", "all", "also", "an", "and", "any", "are", "as", "at", "be", "been",
    "but", "by", "can", "could", "did", "do", "does", "for", "from", "had", "has", "have", "he",
    "her", "his", "how", "i", "if", "in", "into", "is", "it", "its", "may", "more", "most", "no",
    "not", "of", "on", "or", "our", "she", "so", "some", "than", "that", "the", "their", "them",
    "then", "there", "these", "they", "this", "those", "to", "under", "up", "was", "we", "were",
    "what", "when", "where", "which", "while", "who", "will", "with", "would", "you", "your",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcdError {
    #[error("attention maps a token to word {word}, but the sentence has {len} words")]
    DimensionMismatch { word: usize, len: usize },
    #[error("attention has {heads} heads and {tokens} tokens; both must be non-zero")]
    EmptyAttention { heads: usize, tokens: usize },
    #[error("attention head {head} has {got} entries, expected {expected}")]
    RaggedHead {
        head: usize,
        got: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityMarking {
    /// Mean per-token score over the classifier tokens.
    pub threshold: f64,
    /// Per classifier token, summed over heads.
    pub token_scores: Vec<f64>,
    pub flags: Vec<bool>,
    /// Per sentence word: sum of its subtoken scores.
    pub word_scores: Vec<f64>,
    pub word_flags: Vec<bool>,
    /// Lowercase forms of every flagged word.
    pub complex_words: BTreeSet<String>,
    /// `complex_words` minus stopwords and punctuation.
    pub constraint_words: BTreeSet<String>,
}

pub fn is_stopword(word: &str) -> bool {
    is_punctuation(word) || STOPLIST.contains(&word)
}

/// Marks complex tokens and words of `s` from `att`.
pub fn detect(att: &AttentionTensor, s: &Sentence) -> Result<ComplexityMarking, CcdError> {
    let n = att.tokens();
    if att.heads() == 0 || n == 0 {
        return Err(CcdError::EmptyAttention {
            heads: att.heads(),
            tokens: n,
        });
    }
    let mut token_scores = vec![0.0; n];
    for (head, row) in att.weights().iter().enumerate() {
        if row.len() != n {
            return Err(CcdError::RaggedHead {
                head,
                got: row.len(),
                expected: n,
            });
        }
        for (acc, a) in token_scores.iter_mut().zip(row) {
            *acc += a;
        }
    }
    // the mean never exceeds the maximum, but a rounded mean of equal scores
    // can land one ulp above them; clamping keeps at least one token flagged
    let max = token_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = (token_scores.iter().sum::<f64>() / n as f64).min(max);
    let flags = token_scores.iter().map(|&sc| sc >= threshold).collect();

    let words = s.len();
    let mut word_scores = vec![0.0; words];
    let mut covered = vec![false; words];
    for (&w, &sc) in att.token_map().iter().zip(&token_scores) {
        if w >= words {
            return Err(CcdError::DimensionMismatch { word: w, len: words });
        }
        word_scores[w] += sc;
        covered[w] = true;
    }
    let word_flags: Vec<bool> = word_scores
        .iter()
        .zip(&covered)
        .map(|(&sc, &c)| c && sc >= threshold)
        .collect();
    let complex_words: BTreeSet<String> = s
        .tokens()
        .iter()
        .zip(&word_flags)
        .filter(|(_, &f)| f)
        .map(|(t, _)| t.to_lowercase())
        .collect();
    let constraint_words = complex_words
        .iter()
        .filter(|w| !is_stopword(w))
        .cloned()
        .collect();
    Ok(ComplexityMarking {
        threshold,
        token_scores,
        flags,
        word_scores,
        word_flags,
        complex_words,
        constraint_words,
    })
}
