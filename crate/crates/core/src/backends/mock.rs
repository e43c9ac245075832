//! Deterministic, model-free backends.
//!
//! * Simplicity: `0.9 * 0.5^hits`, where `hits` counts tokens found in the
//!   complex-word lexicon. Attention gives lexicon words ten times the base
//!   weight, with a small fixed per-head jitter; words longer than ten
//!   characters are split into several subtokens. Each head row sums to 0.9,
//!   the remaining mass standing for the excluded special tokens.
//! * Embedder: hashed bag of lowercase tokens (FNV-1a), punctuation at a
//!   quarter weight.
//! * Acceptability: 0.9 if any token is a known verb form, else 0.1.
//! * Paraphraser: replaces each constrained word using the synonym table and
//!   fails with `Unsatisfiable` when a constrained word has no usable entry.
//! * Parser: looks up registered bracketed trees by sentence text, otherwise
//!   falls back to a shallow clause/NP/VP/PP chunker.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::{
    AcceptabilityClassifier, AttentionTensor, BackendError, Backends, Constituent,
    ConstituencyParser, Embedder, Paraphraser, SimplicityClassifier, SimplicityJudgment, Tree,
};
use crate::text::{is_punctuation, tokenize_str, Sentence};

pub const DEFAULT_LEXICON: &str = include_str!("../../data/lexicon.txt");
pub const DEFAULT_SYNONYMS: &str = include_str!("../../data/synonyms.tsv");
pub const DEFAULT_VERBS: &str = include_str!("../../data/verbs.txt");

const PREPOSITIONS: &[&str] = &[
    "about", "above", "across", "after", "against", "along", "among", "around", "at", "before",
    "behind", "below", "beneath", "beside", "between", "beyond", "by", "during", "for", "from",
    "in", "inside", "into", "near", "of", "on", "onto", "over", "through", "throughout", "to",
    "toward", "towards", "under", "until", "upon", "with", "within", "without",
];

const CLAUSE_BREAKS: &[&str] = &[",", ";", ":"];
const SUBTOKEN_CHARS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: expected `word<TAB>replacement`, got {text:?}")]
    Synonym { line: usize, text: String },
    #[error("line {line}: expected a single word, got {text:?}")]
    Word { line: usize, text: String },
}

/// Parses a word list: one word per line, `#` starts a comment line.
pub fn parse_word_list(text: &str) -> Result<BTreeSet<String>, TableError> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.split_whitespace().count() != 1 {
            return Err(TableError::Word {
                line: i + 1,
                text: raw.to_owned(),
            });
        }
        out.insert(line.to_lowercase());
    }
    Ok(out)
}

/// Parses a tab-separated synonym table (`word<TAB>replacement`).
pub fn parse_synonyms(text: &str) -> Result<BTreeMap<String, String>, TableError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let bad = || TableError::Synonym {
            line: i + 1,
            text: raw.to_owned(),
        };
        let (word, replacement) = raw.split_once('\t').ok_or_else(bad)?;
        let (word, replacement) = (word.trim(), replacement.trim());
        if word.is_empty()
            || replacement.is_empty()
            || word.split_whitespace().count() != 1
            || replacement.contains('\t')
        {
            return Err(bad());
        }
        out.insert(word.to_lowercase(), replacement.to_owned());
    }
    Ok(out)
}

/// Word tables shared by the mock backends.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MockTables {
    pub complex: BTreeSet<String>,
    pub synonyms: BTreeMap<String, String>,
    pub verbs: BTreeSet<String>,
}

impl MockTables {
    /// The tables bundled with the crate.
    pub fn builtin() -> Self {
        Self {
            complex: parse_word_list(DEFAULT_LEXICON).expect("bundled lexicon parses"),
            synonyms: parse_synonyms(DEFAULT_SYNONYMS).expect("bundled synonyms parse"),
            verbs: parse_word_list(DEFAULT_VERBS).expect("bundled verbs parse"),
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Complex-simple classifier driven by a word lexicon.
#[derive(Debug, Clone)]
pub struct MockSimplicity {
    complex: Arc<BTreeSet<String>>,
    heads: usize,
}

impl MockSimplicity {
    pub fn new(complex: BTreeSet<String>, heads: usize) -> Self {
        Self {
            complex: Arc::new(complex),
            heads: heads.max(1),
        }
    }

    pub fn hits(&self, s: &Sentence) -> usize {
        s.lowercase_tokens().filter(|t| self.complex.contains(t)).count()
    }

    /// Closed form used by this mock: `0.9 * 0.5^hits`.
    pub fn probability(hits: usize) -> f64 {
        0.9 * 0.5f64.powi(hits.min(1000) as i32)
    }

    fn attention(&self, s: &Sentence) -> AttentionTensor {
        let mut base = Vec::new();
        let mut token_map = Vec::new();
        for (w, tok) in s.tokens().iter().enumerate() {
            let weight = if self.complex.contains(&tok.to_lowercase()) {
                10.0
            } else {
                1.0
            };
            let pieces = tok.chars().count().div_ceil(SUBTOKEN_CHARS).max(1);
            for _ in 0..pieces {
                base.push(weight / pieces as f64);
                token_map.push(w);
            }
        }
        let weights = (0..self.heads)
            .map(|h| {
                let raw: Vec<f64> = base
                    .iter()
                    .enumerate()
                    .map(|(j, b)| b * (1.0 + 0.05 * ((7 * j + 3 * h) % 5) as f64))
                    .collect();
                let sum: f64 = raw.iter().sum();
                raw.into_iter().map(|x| 0.9 * x / sum).collect()
            })
            .collect();
        AttentionTensor::unchecked(weights, token_map)
    }
}

impl SimplicityClassifier for MockSimplicity {
    fn id(&self) -> String {
        format!("mock-simplicity(heads={},lexicon={})", self.heads, self.complex.len())
    }

    fn classify_simplicity(&self, s: &Sentence) -> Result<SimplicityJudgment, BackendError> {
        if s.is_empty() {
            return Err(BackendError::failure("mock-simplicity", s, "empty sentence"));
        }
        Ok(SimplicityJudgment {
            prob_simple: Self::probability(self.hits(s)),
            attention: self.attention(s),
        })
    }
}

/// Hashed bag-of-words embedder.
#[derive(Debug, Clone)]
pub struct MockEmbedder {
    dim: usize,
}

impl MockEmbedder {
    pub fn new(dim: usize) -> Self {
        Self { dim: dim.max(1) }
    }

    pub fn bucket(&self, token: &str) -> usize {
        (fnv1a(&token.to_lowercase()) % self.dim as u64) as usize
    }
}

impl Default for MockEmbedder {
    fn default() -> Self {
        Self::new(1024)
    }
}

impl Embedder for MockEmbedder {
    fn id(&self) -> String {
        format!("mock-embedder(dim={})", self.dim)
    }

    fn embed(&self, s: &Sentence) -> Result<Vec<f64>, BackendError> {
        if s.is_empty() {
            return Err(BackendError::failure("mock-embedder", s, "empty sentence"));
        }
        let mut v = vec![0.0; self.dim];
        for tok in s.tokens() {
            v[self.bucket(tok)] += if is_punctuation(tok) { 0.25 } else { 1.0 };
        }
        Ok(v)
    }
}

/// Verb-presence acceptability rule.
#[derive(Debug, Clone)]
pub struct MockAcceptability {
    verbs: Arc<BTreeSet<String>>,
}

impl MockAcceptability {
    pub const WITH_VERB: f64 = 0.9;
    pub const VERBLESS: f64 = 0.1;

    pub fn new(verbs: BTreeSet<String>) -> Self {
        Self {
            verbs: Arc::new(verbs),
        }
    }
}

impl AcceptabilityClassifier for MockAcceptability {
    fn id(&self) -> String {
        format!("mock-acceptability(verbs={})", self.verbs.len())
    }

    fn classify_acceptability(&self, s: &Sentence) -> Result<f64, BackendError> {
        if s.is_empty() {
            return Err(BackendError::failure("mock-acceptability", s, "empty sentence"));
        }
        Ok(if s.lowercase_tokens().any(|t| self.verbs.contains(&t)) {
            Self::WITH_VERB
        } else {
            Self::VERBLESS
        })
    }
}

/// Synonym-table paraphraser honouring negative constraints.
#[derive(Debug, Clone)]
pub struct MockParaphraser {
    synonyms: Arc<BTreeMap<String, String>>,
    leaky: bool,
}

impl MockParaphraser {
    pub fn new(synonyms: BTreeMap<String, String>) -> Self {
        Self {
            synonyms: Arc::new(synonyms),
            leaky: false,
        }
    }

    /// Emits replacements even when they are themselves constrained, like a
    /// decoder that ignores its constraints. For exercising contract checks.
    pub fn leaky(mut self) -> Self {
        self.leaky = true;
        self
    }
}

fn match_case(original: &str, replacement: &str) -> String {
    if original.chars().next().is_some_and(char::is_uppercase) {
        let mut chars = replacement.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    } else {
        replacement.to_owned()
    }
}

impl Paraphraser for MockParaphraser {
    fn id(&self) -> String {
        let leaky = if self.leaky { ",leaky" } else { "" };
        format!("mock-paraphraser(synonyms={}{leaky})", self.synonyms.len())
    }

    fn paraphrase(
        &self,
        s: &Sentence,
        negative_constraints: &BTreeSet<String>,
    ) -> Result<Sentence, BackendError> {
        let unsatisfiable = || BackendError::Unsatisfiable {
            sentence_id: s.id().to_owned(),
            constraints: negative_constraints.iter().cloned().collect(),
        };
        let mut out: Vec<String> = Vec::with_capacity(s.len());
        for tok in s.tokens() {
            let lower = tok.to_lowercase();
            if !negative_constraints.contains(&lower) {
                out.push(tok.clone());
                continue;
            }
            let replacement = self.synonyms.get(&lower).ok_or_else(unsatisfiable)?;
            let pieces = tokenize_str(replacement);
            if pieces.is_empty()
                || (!self.leaky
                    && pieces
                        .iter()
                        .any(|p| negative_constraints.contains(&p.to_lowercase())))
            {
                return Err(unsatisfiable());
            }
            for (k, p) in pieces.iter().enumerate() {
                out.push(if k == 0 { match_case(tok, p) } else { p.clone() });
            }
        }
        Sentence::from_tokens(s.id(), &out)
            .map_err(|e| BackendError::failure("mock-paraphraser", s, e.to_string()))
    }
}

/// Parser that serves registered trees and otherwise chunks heuristically.
#[derive(Debug, Clone)]
pub struct MockParser {
    trees: Arc<BTreeMap<String, Tree>>,
    verbs: Arc<BTreeSet<String>>,
}

impl MockParser {
    pub fn new(verbs: BTreeSet<String>) -> Self {
        Self {
            trees: Arc::default(),
            verbs: Arc::new(verbs),
        }
    }

    /// Registers bracketed trees keyed by the sentence they describe.
    pub fn with_trees(mut self, trees: impl IntoIterator<Item = (Sentence, Tree)>) -> Self {
        let mut map = (*self.trees).clone();
        for (s, t) in trees {
            map.insert(s.key().to_lowercase(), t);
        }
        self.trees = Arc::new(map);
        self
    }

    /// Shallow chunker: clauses split at `, ; :`, then subject NP / VP at the
    /// first known verb, then nested PPs at each preposition.
    pub fn chunk(&self, tokens: &[String]) -> Vec<Constituent> {
        let n = tokens.len();
        let mut spans = vec![Constituent::new(0, n, "S", 0)];
        let body_end = n - tokens.iter().rev().take_while(|t| is_punctuation(t)).count();
        let mut segments = Vec::new();
        let mut start = 0;
        for (i, tok) in tokens.iter().enumerate().take(body_end + 1) {
            if i == body_end || CLAUSE_BREAKS.contains(&tok.as_str()) {
                if i > start {
                    segments.push((start, i));
                }
                start = i + 1;
            }
        }
        let multi = segments.len() > 1;
        for (a, b) in segments {
            let end = if b == body_end { n } else { b };
            let depth = if multi {
                if (a, end) != (0, n) {
                    spans.push(Constituent::new(a, end, "CL", 1));
                }
                2
            } else {
                1
            };
            let verb = (a..b).find(|&i| self.verbs.contains(&tokens[i].to_lowercase()));
            let mut regions = Vec::new();
            match verb {
                Some(v) if v > a => {
                    spans.push(Constituent::new(a, v, "NP", depth));
                    spans.push(Constituent::new(v, end, "VP", depth));
                    regions.push((a, v, v, depth + 1));
                    regions.push((v + 1, b, end, depth + 1));
                }
                Some(v) => regions.push((v + 1, b, end, depth)),
                None => regions.push((a + 1, b, end, depth)),
            }
            for (from, to, close, d) in regions {
                let mut d = d;
                for (p, tok) in tokens.iter().enumerate().take(to).skip(from) {
                    if PREPOSITIONS.contains(&tok.to_lowercase().as_str()) {
                        spans.push(Constituent::new(p, close, "PP", d));
                        d += 1;
                    }
                }
            }
        }
        spans
    }
}

impl ConstituencyParser for MockParser {
    fn id(&self) -> String {
        format!("mock-parser(trees={})", self.trees.len())
    }

    fn parse_constituents(&self, s: &Sentence) -> Result<Vec<Constituent>, BackendError> {
        if s.is_empty() {
            return Err(BackendError::failure("mock-parser", s, "empty sentence"));
        }
        match self.trees.get(&s.key().to_lowercase()) {
            Some(tree) => tree
                .constituents(s.tokens())
                .map_err(|e| BackendError::failure("mock-parser", s, e.to_string())),
            None => Ok(self.chunk(s.tokens())),
        }
    }
}

/// Assembles the five mock backends.
#[derive(Debug, Clone)]
pub struct MockBackends {
    pub tables: MockTables,
    pub heads: usize,
    pub dim: usize,
    pub trees: Vec<(Sentence, Tree)>,
    pub leaky_paraphraser: bool,
}

impl MockBackends {
    pub fn new(tables: MockTables) -> Self {
        Self {
            tables,
            heads: 4,
            dim: 1024,
            trees: Vec::new(),
            leaky_paraphraser: false,
        }
    }

    pub fn heads(mut self, heads: usize) -> Self {
        self.heads = heads;
        self
    }

    pub fn dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    pub fn tree(mut self, sentence: Sentence, tree: Tree) -> Self {
        self.trees.push((sentence, tree));
        self
    }

    pub fn build(self) -> Backends {
        let parser = MockParser::new(self.tables.verbs.clone()).with_trees(self.trees);
        Backends {
            simplicity: Arc::new(MockSimplicity::new(self.tables.complex, self.heads)),
            embedder: Arc::new(MockEmbedder::new(self.dim)),
            acceptability: Arc::new(MockAcceptability::new(self.tables.verbs)),
            paraphraser: Arc::new(if self.leaky_paraphraser {
                MockParaphraser::new(self.tables.synonyms).leaky()
            } else {
                MockParaphraser::new(self.tables.synonyms)
            }),
            parser: Arc::new(parser),
        }
    }
}
