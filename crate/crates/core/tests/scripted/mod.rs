//! Table-driven backends for search tests: every score is looked up by the
//! candidate's token key.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use editsimp::backends::{
    AcceptabilityClassifier, AttentionTensor, BackendError, Backends, Constituent,
    ConstituencyParser, Embedder, Paraphraser, SimplicityClassifier, SimplicityJudgment,
};
use editsimp::Sentence;

#[derive(Debug, Clone, Default)]
pub struct Script {
    pub simplicity: HashMap<String, f64>,
    pub similarity: HashMap<String, f64>,
    pub acceptability: HashMap<String, f64>,
    pub paraphrase: HashMap<String, String>,
    pub spans: HashMap<String, Vec<(usize, usize, usize)>>,
    pub failing: BTreeSet<String>,
}

fn key(text: &str) -> String {
    Sentence::new("", text).unwrap().key()
}

impl Script {
    pub fn simple(mut self, text: &str, p: f64) -> Self {
        self.simplicity.insert(key(text), p);
        self
    }

    pub fn sim(mut self, text: &str, cos: f64) -> Self {
        self.similarity.insert(key(text), cos);
        self
    }

    pub fn acceptable(mut self, text: &str, p: f64) -> Self {
        self.acceptability.insert(key(text), p);
        self
    }

    pub fn paraphrase(mut self, from: &str, to: &str) -> Self {
        self.paraphrase.insert(key(from), to.to_owned());
        self
    }

    /// `(start, end, depth)` spans; the root is added automatically.
    pub fn spans(mut self, text: &str, spans: &[(usize, usize, usize)]) -> Self {
        self.spans.insert(key(text), spans.to_vec());
        self
    }

    /// Scoring calls for this text fail recoverably.
    pub fn failing(mut self, text: &str) -> Self {
        self.failing.insert(key(text));
        self
    }

    pub fn build(self) -> Backends {
        let s = Arc::new(self);
        Backends {
            simplicity: Arc::new(Scripted(s.clone())),
            embedder: Arc::new(Scripted(s.clone())),
            acceptability: Arc::new(Scripted(s.clone())),
            paraphraser: Arc::new(Scripted(s.clone())),
            parser: Arc::new(Scripted(s)),
        }
    }
}

struct Scripted(Arc<Script>);

impl Scripted {
    fn check(&self, s: &Sentence) -> Result<(), BackendError> {
        if self.0.failing.contains(&s.key()) {
            return Err(BackendError::failure("scripted", s, "scripted failure"));
        }
        Ok(())
    }
}

impl SimplicityClassifier for Scripted {
    fn id(&self) -> String {
        "scripted".into()
    }

    /// Attention concentrates on the first token, so the first word is the
    /// only flagged one.
    fn classify_simplicity(&self, s: &Sentence) -> Result<SimplicityJudgment, BackendError> {
        self.check(s)?;
        let mut row = vec![0.0; s.len()];
        row[0] = 1.0;
        Ok(SimplicityJudgment {
            prob_simple: self.0.simplicity.get(&s.key()).copied().unwrap_or(0.1),
            attention: AttentionTensor::word_aligned(vec![row]).unwrap(),
        })
    }
}

impl Embedder for Scripted {
    fn id(&self) -> String {
        "scripted".into()
    }

    /// A unit vector at the scripted angle from the source direction.
    fn embed(&self, s: &Sentence) -> Result<Vec<f64>, BackendError> {
        self.check(s)?;
        let cos = self.0.similarity.get(&s.key()).copied().unwrap_or(1.0);
        Ok(vec![cos, (1.0 - cos * cos).max(0.0).sqrt()])
    }
}

impl AcceptabilityClassifier for Scripted {
    fn id(&self) -> String {
        "scripted".into()
    }

    fn classify_acceptability(&self, s: &Sentence) -> Result<f64, BackendError> {
        self.check(s)?;
        Ok(self.0.acceptability.get(&s.key()).copied().unwrap_or(1.0))
    }
}

impl Paraphraser for Scripted {
    fn id(&self) -> String {
        "scripted".into()
    }

    fn paraphrase(&self, s: &Sentence, _: &BTreeSet<String>) -> Result<Sentence, BackendError> {
        match self.0.paraphrase.get(&s.key()) {
            Some(out) => Ok(Sentence::new(s.id(), out).unwrap()),
            None => Err(BackendError::Unsatisfiable {
                sentence_id: s.id().to_owned(),
                constraints: Vec::new(),
            }),
        }
    }
}

impl ConstituencyParser for Scripted {
    fn id(&self) -> String {
        "scripted".into()
    }

    fn parse_constituents(&self, s: &Sentence) -> Result<Vec<Constituent>, BackendError> {
        let mut out = vec![Constituent::new(0, s.len(), "S", 0)];
        for &(a, b, d) in self.0.spans.get(&s.key()).map(Vec::as_slice).unwrap_or(&[]) {
            out.push(Constituent::new(a, b, "X", d));
        }
        Ok(out)
    }
}
