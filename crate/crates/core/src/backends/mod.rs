//! Contracts for the learned and parsing components the engine consumes.
//!
//! Real-model adapters implement these traits: the simplicity and acceptability
//! classifiers are fine-tuned transformer classifiers (the simplicity one must
//! expose second-layer `[CLS]` attention), the embedder is a sentence-embedding
//! model, the paraphraser is an encoder-decoder generator with negative lexically
//! constrained decoding, and the parser is any constituency parser. The
//! [`mock`] module provides deterministic implementations that need no models.

pub mod mock;
pub mod tree;

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::text::Sentence;

pub use tree::{Constituent, Tree, TreeError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BackendError {
    /// The backend could not produce an answer for this input.
    #[error("backend {backend} failed on sentence {sentence_id:?}: {message}")]
    Failure {
        backend: String,
        sentence_id: String,
        message: String,
    },
    /// The backend answered, but the answer breaks its contract.
    #[error("backend {backend} violated its contract on sentence {sentence_id:?}: {message}")]
    ContractViolation {
        backend: String,
        sentence_id: String,
        message: String,
    },
    /// The paraphraser cannot avoid every negative constraint.
    #[error("no paraphrase of {sentence_id:?} avoids constraints {constraints:?}")]
    Unsatisfiable {
        sentence_id: String,
        constraints: Vec<String>,
    },
}

impl BackendError {
    pub fn failure(backend: &str, s: &Sentence, message: impl Into<String>) -> Self {
        BackendError::Failure {
            backend: backend.to_owned(),
            sentence_id: s.id().to_owned(),
            message: message.into(),
        }
    }

    pub fn contract(backend: &str, s: &Sentence, message: impl Into<String>) -> Self {
        BackendError::ContractViolation {
            backend: backend.to_owned(),
            sentence_id: s.id().to_owned(),
            message: message.into(),
        }
    }

    pub fn is_contract_violation(&self) -> bool {
        matches!(self, BackendError::ContractViolation { .. })
    }
}

/// `[CLS]`-row attention from the classifier's second encoder layer, one row per
/// head, special tokens already removed.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionTensor {
    weights: Vec<Vec<f64>>,
    token_map: Vec<usize>,
}

impl AttentionTensor {
    /// `weights` is heads x subtokens; `token_map[j]` is the word index of subtoken `j`.
    pub fn new(weights: Vec<Vec<f64>>, token_map: Vec<usize>) -> Result<Self, String> {
        let n = token_map.len();
        if weights.is_empty() || n == 0 {
            return Err("attention needs at least one head and one token".into());
        }
        for (h, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(format!("head {h} has {} entries, expected {n}", row.len()));
            }
            if row.iter().any(|a| !(0.0..=1.0).contains(a)) {
                return Err(format!("head {h} has an entry outside [0, 1]"));
            }
            if row.iter().sum::<f64>() > 1.0 + 1e-9 {
                return Err(format!("head {h} has attention mass above 1"));
            }
        }
        if token_map.windows(2).any(|w| w[1] < w[0]) {
            return Err("token_map must be non-decreasing".into());
        }
        Ok(Self { weights, token_map })
    }

    /// One subtoken per word.
    pub fn word_aligned(weights: Vec<Vec<f64>>) -> Result<Self, String> {
        let n = weights.first().map_or(0, Vec::len);
        Self::new(weights, (0..n).collect())
    }

    /// Builds a tensor without the per-row mass and range checks. Intended for
    /// property tests that rescale attention.
    pub fn unchecked(weights: Vec<Vec<f64>>, token_map: Vec<usize>) -> Self {
        Self { weights, token_map }
    }

    pub fn heads(&self) -> usize {
        self.weights.len()
    }

    pub fn tokens(&self) -> usize {
        self.token_map.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn token_map(&self) -> &[usize] {
        &self.token_map
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicityJudgment {
    pub prob_simple: f64,
    pub attention: AttentionTensor,
}

/// Complex-simple classifier.
pub trait SimplicityClassifier: Send + Sync {
    fn id(&self) -> String;
    fn classify_simplicity(&self, s: &Sentence) -> Result<SimplicityJudgment, BackendError>;
}

/// Sentence embedder used by the meaning-preservation filter.
pub trait Embedder: Send + Sync {
    fn id(&self) -> String;
    fn embed(&self, s: &Sentence) -> Result<Vec<f64>, BackendError>;
}

/// Grammaticality classifier.
pub trait AcceptabilityClassifier: Send + Sync {
    fn id(&self) -> String;
    fn classify_acceptability(&self, s: &Sentence) -> Result<f64, BackendError>;
}

/// Paraphrase generator with negative lexical constraints. The output must not
/// contain any token whose lowercase form is in `negative_constraints`.
pub trait Paraphraser: Send + Sync {
    fn id(&self) -> String;
    fn paraphrase(
        &self,
        s: &Sentence,
        negative_constraints: &BTreeSet<String>,
    ) -> Result<Sentence, BackendError>;
}

/// Constituency parser. Spans must be well nested and include the root `(0, len)`.
pub trait ConstituencyParser: Send + Sync {
    fn id(&self) -> String;
    fn parse_constituents(&self, s: &Sentence) -> Result<Vec<Constituent>, BackendError>;
}

/// Serializes access to a backend that is not safe for concurrent use.
pub struct Exclusive<B>(Mutex<B>);

impl<B> Exclusive<B> {
    pub fn new(backend: B) -> Self {
        Self(Mutex::new(backend))
    }

    fn with<R>(&self, f: impl FnOnce(&B) -> R) -> R {
        let guard = self.0.lock().unwrap_or_else(|poisoned| poisoned.into_inner());
        f(&guard)
    }
}

impl<B: SimplicityClassifier> SimplicityClassifier for Exclusive<B> {
    fn id(&self) -> String {
        self.with(|b| b.id())
    }
    fn classify_simplicity(&self, s: &Sentence) -> Result<SimplicityJudgment, BackendError> {
        self.with(|b| b.classify_simplicity(s))
    }
}

impl<B: Embedder> Embedder for Exclusive<B> {
    fn id(&self) -> String {
        self.with(|b| b.id())
    }
    fn embed(&self, s: &Sentence) -> Result<Vec<f64>, BackendError> {
        self.with(|b| b.embed(s))
    }
}

impl<B: AcceptabilityClassifier> AcceptabilityClassifier for Exclusive<B> {
    fn id(&self) -> String {
        self.with(|b| b.id())
    }
    fn classify_acceptability(&self, s: &Sentence) -> Result<f64, BackendError> {
        self.with(|b| b.classify_acceptability(s))
    }
}

impl<B: Paraphraser> Paraphraser for Exclusive<B> {
    fn id(&self) -> String {
        self.with(|b| b.id())
    }
    fn paraphrase(
        &self,
        s: &Sentence,
        negative_constraints: &BTreeSet<String>,
    ) -> Result<Sentence, BackendError> {
        self.with(|b| b.paraphrase(s, negative_constraints))
    }
}

impl<B: ConstituencyParser> ConstituencyParser for Exclusive<B> {
    fn id(&self) -> String {
        self.with(|b| b.id())
    }
    fn parse_constituents(&self, s: &Sentence) -> Result<Vec<Constituent>, BackendError> {
        self.with(|b| b.parse_constituents(s))
    }
}

/// The five components one engine run uses.
#[derive(Clone)]
pub struct Backends {
    pub simplicity: Arc<dyn SimplicityClassifier>,
    pub embedder: Arc<dyn Embedder>,
    pub acceptability: Arc<dyn AcceptabilityClassifier>,
    pub paraphraser: Arc<dyn Paraphraser>,
    pub parser: Arc<dyn ConstituencyParser>,
}

impl Backends {
    /// Backend identifiers, in a fixed order, for run manifests.
    pub fn ids(&self) -> Vec<(&'static str, String)> {
        vec![
            ("simplicity", self.simplicity.id()),
            ("embedder", self.embedder.id()),
            ("acceptability", self.acceptability.id()),
            ("paraphraser", self.paraphraser.id()),
            ("parser", self.parser.id()),
        ]
    }
}

/// Cosine similarity. Returns `None` when either vector has zero norm or the
/// dimensions differ.
pub fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return None;
    }
    Some((dot / (na * nb)).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_basics() {
        assert!((cosine(&[1.0, 2.0], &[1.0, 2.0]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 3.0]), Some(0.0));
        assert_eq!(cosine(&[1.0, 0.0], &[-2.0, 0.0]), Some(-1.0));
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 0.0]), None);
        assert_eq!(cosine(&[1.0], &[1.0, 0.0]), None);
    }

    #[test]
    fn attention_shape_checks() {
        assert!(AttentionTensor::word_aligned(vec![vec![0.8, 0.2]]).is_ok());
        assert!(AttentionTensor::word_aligned(vec![]).is_err());
        assert!(AttentionTensor::word_aligned(vec![vec![0.8, 0.2], vec![0.5]]).is_err());
        assert!(AttentionTensor::word_aligned(vec![vec![0.8, 0.7]]).is_err());
        assert!(AttentionTensor::word_aligned(vec![vec![-0.1, 0.2]]).is_err());
        assert!(AttentionTensor::new(vec![vec![0.1, 0.1]], vec![1, 0]).is_err());
    }
}
