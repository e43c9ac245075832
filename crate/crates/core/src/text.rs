//! Sentences and the engine-wide tokenizer.
//!
//! Tokenization rules, applied to each whitespace-separated chunk:
//!
//! 1. Leading opening punctuation (`( [ { " ' “ ‘ «`) is split off one character at a time.
//! 2. Trailing closing punctuation (`. , ; : ! ? ) ] } " ' ” ’ » …`) is split off one
//!    character at a time.
//! 3. Whatever remains is one token. Word-internal apostrophes survive, so
//!    contractions such as `don't` or `it's` stay whole.
//!
//! Detokenization joins tokens with single spaces, except that closing punctuation
//! attaches to the previous token, opening brackets attach to the next one, and
//! straight quotes alternate between opening and closing.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const OPENERS: &[char] = &['(', '[', '{', '"', '\'', '“', '‘', '«'];
const CLOSERS: &[char] = &[
    '.', ',', ';', ':', '!', '?', ')', ']', '}', '"', '\'', '”', '’', '»', '…',
];
const QUOTES: &[char] = &['"', '\''];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenizeError {
    #[error("input sentence is empty")]
    EmptyInput,
}

/// A tokenized sentence. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sentence {
    id: String,
    surface: String,
    tokens: Vec<String>,
}

impl Sentence {
    /// Tokenizes `surface` and assigns `id`.
    pub fn new(id: impl Into<String>, surface: &str) -> Result<Self, TokenizeError> {
        let tokens = tokenize_str(surface);
        if tokens.is_empty() {
            return Err(TokenizeError::EmptyInput);
        }
        Ok(Self {
            id: id.into(),
            surface: surface.split_whitespace().collect::<Vec<_>>().join(" "),
            tokens,
        })
    }

    /// Builds a sentence from tokens; the surface is the detokenized form.
    pub fn from_tokens<S: AsRef<str>>(
        id: impl Into<String>,
        tokens: &[S],
    ) -> Result<Self, TokenizeError> {
        let tokens: Vec<String> = tokens
            .iter()
            .map(|t| t.as_ref().trim())
            .filter(|t| !t.is_empty())
            .map(str::to_owned)
            .collect();
        if tokens.is_empty() {
            return Err(TokenizeError::EmptyInput);
        }
        Ok(Self {
            id: id.into(),
            surface: detokenize(&tokens),
            tokens,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Canonical identity of the sentence content: tokens joined by single spaces.
    pub fn key(&self) -> String {
        self.tokens.join(" ")
    }

    pub fn lowercase_tokens(&self) -> impl Iterator<Item = String> + '_ {
        self.tokens.iter().map(|t| t.to_lowercase())
    }

    pub fn with_id(&self, id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            ..self.clone()
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}

/// Tokenizes `surface` into a [`Sentence`] with an empty id.
pub fn tokenize(surface: &str) -> Result<Sentence, TokenizeError> {
    Sentence::new("", surface)
}

/// Raw token split; returns an empty vector for blank input.
pub fn tokenize_str(surface: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in surface.split_whitespace() {
        split_chunk(chunk, &mut out);
    }
    out
}

fn split_chunk(chunk: &str, out: &mut Vec<String>) {
    let mut rest = chunk;
    while let Some(c) = rest.chars().next() {
        if !OPENERS.contains(&c) {
            break;
        }
        out.push(c.to_string());
        rest = &rest[c.len_utf8()..];
    }
    let mut trailing = Vec::new();
    while let Some(c) = rest.chars().next_back() {
        if !CLOSERS.contains(&c) {
            break;
        }
        trailing.push(c.to_string());
        rest = &rest[..rest.len() - c.len_utf8()];
    }
    if !rest.is_empty() {
        out.push(rest.to_owned());
    }
    out.extend(trailing.into_iter().rev());
}

fn single_char(token: &str) -> Option<char> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

/// True when the token consists only of punctuation characters.
pub fn is_punctuation(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| !c.is_alphanumeric())
}

/// Joins tokens back into a surface string.
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut quote_open = [false; 2];
    let mut glue_next = false;
    for (i, tok) in tokens.iter().enumerate() {
        let tok = tok.as_ref();
        let mut space_before = i > 0 && !glue_next;
        glue_next = false;
        match single_char(tok) {
            Some(c) if QUOTES.contains(&c) => {
                let slot = usize::from(c == '\'');
                if quote_open[slot] {
                    space_before = false;
                } else {
                    glue_next = true;
                }
                quote_open[slot] = !quote_open[slot];
            }
            Some(c) if CLOSERS.contains(&c) => space_before = false,
            Some(c) if OPENERS.contains(&c) => glue_next = true,
            _ => {}
        }
        if space_before {
            out.push(' ');
        }
        out.push_str(tok);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s).unwrap().tokens().to_vec()
    }

    #[test]
    fn canonical_split() {
        assert_eq!(toks("He ran."), ["He", "ran", "."]);
    }

    #[test]
    fn contractions_stay_whole() {
        // rule 3: the apostrophe is word-internal, nothing to peel on either side
        assert_eq!(toks("don't stop"), ["don't", "stop"]);
        assert_eq!(toks("It's fine, isn't it?"), ["It's", "fine", ",", "isn't", "it", "?"]);
    }

    #[test]
    fn quotes_and_brackets() {
        assert_eq!(
            toks("He said \"stop (now).\""),
            ["He", "said", "\"", "stop", "(", "now", ")", ".", "\""]
        );
        assert_eq!(detokenize(&toks("He said \"stop (now).\"")), "He said \"stop (now).\"");
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(tokenize(""), Err(TokenizeError::EmptyInput));
        assert_eq!(tokenize("  \t\n"), Err(TokenizeError::EmptyInput));
        assert!(Sentence::from_tokens::<&str>("x", &[]).is_err());
    }

    #[test]
    fn detokenize_attaches_punctuation() {
        assert_eq!(detokenize(&["the", "dog", "barked", "."]), "the dog barked.");
        assert_eq!(detokenize(&["a", ",", "b", ";", "c"]), "a, b; c");
    }

    proptest! {
        #[test]
        fn retokenizing_detokenized_output_is_stable(s in "\\PC{0,40}") {
            let first = tokenize_str(&s);
            let again = tokenize_str(&detokenize(&first));
            prop_assert_eq!(&first, &again);
            let strip = |x: &str| x.chars().filter(|c| !c.is_whitespace()).collect::<String>();
            prop_assert_eq!(strip(&detokenize(&first)), strip(&s));
        }

        #[test]
        fn punctuation_heavy_text_is_stable(s in "[a-zA-Z'\",.;:!?()\\[\\] ]{1,40}") {
            let first = tokenize_str(&s);
            let again = tokenize_str(&detokenize(&first));
            prop_assert_eq!(&first, &again);
            let strip = |x: &str| x.chars().filter(|c| !c.is_whitespace()).collect::<String>();
            prop_assert_eq!(strip(&detokenize(&first)), strip(&s));
        }
    }
}
