//! Candidate score: simplicity probability, zeroed by the meaning-preservation
//! and linguistic-acceptability hard filters.

use crate::backends::{cosine, BackendError, Backends};
use crate::config::EngineConfig;
use crate::text::Sentence;
use crate::trace::ScoreBreakdown;

/// Scoring state for one source sentence.
pub struct ScoringContext<'a> {
    original: Sentence,
    original_embedding: Vec<f64>,
    config: EngineConfig,
    backends: &'a Backends,
}

impl<'a> ScoringContext<'a> {
    pub fn new(
        original: &Sentence,
        backends: &'a Backends,
        config: EngineConfig,
    ) -> Result<Self, BackendError> {
        let original_embedding = backends.embedder.embed(original)?;
        if original_embedding.iter().all(|x| *x == 0.0) {
            return Err(BackendError::contract(
                &backends.embedder.id(),
                original,
                "zero embedding",
            ));
        }
        Ok(Self {
            original: original.clone(),
            original_embedding,
            config,
            backends,
        })
    }

    pub fn original(&self) -> &Sentence {
        &self.original
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn backends(&self) -> &'a Backends {
        self.backends
    }

    /// Cosine similarity to the original and whether it clears `mp_threshold`.
    pub fn meaning_filter(&self, c: &Sentence) -> Result<(f64, bool), BackendError> {
        let v = self.backends.embedder.embed(c)?;
        let sim = cosine(&v, &self.original_embedding).ok_or_else(|| {
            BackendError::contract(
                &self.backends.embedder.id(),
                c,
                format!(
                    "embedding of dimension {} with norm zero or mismatched (original has {})",
                    v.len(),
                    self.original_embedding.len()
                ),
            )
        })?;
        Ok((sim, sim >= self.config.mp_threshold))
    }

    /// Acceptability probability and whether it clears `la_threshold`.
    pub fn acceptability_filter(&self, c: &Sentence) -> Result<(f64, bool), BackendError> {
        let p = self.backends.acceptability.classify_acceptability(c)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(BackendError::contract(
                &self.backends.acceptability.id(),
                c,
                format!("acceptability {p} outside [0, 1]"),
            ));
        }
        Ok((p, p >= self.config.la_threshold))
    }

    pub fn simplicity(&self, c: &Sentence) -> Result<f64, BackendError> {
        let p = self.backends.simplicity.classify_simplicity(c)?.prob_simple;
        if !(0.0..=1.0).contains(&p) {
            return Err(BackendError::contract(
                &self.backends.simplicity.id(),
                c,
                format!("simplicity {p} outside [0, 1]"),
            ));
        }
        Ok(p)
    }

    pub fn score(&self, c: &Sentence) -> Result<ScoreBreakdown, BackendError> {
        let simplicity = self.simplicity(c)?;
        let (meaning_sim, _) = self.meaning_filter(c)?;
        let (acceptability, _) = self.acceptability_filter(c)?;
        Ok(ScoreBreakdown::combine(
            simplicity,
            meaning_sim,
            acceptability,
            &self.config,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::mock::{MockBackends, MockTables};

    fn backends() -> Backends {
        let mut tables = MockTables::default();
        tables.complex.insert("massive".into());
        tables.verbs.extend(["barked".to_string(), "purr".to_string()]);
        MockBackends::new(tables).build()
    }

    fn sent(s: &str) -> Sentence {
        Sentence::new("t", s).unwrap()
    }

    #[test]
    fn identity_passes_meaning_filter() {
        let b = backends();
        let o = sent("the massive dog barked");
        let ctx = ScoringContext::new(&o, &b, EngineConfig::default()).unwrap();
        let (sim, pass) = ctx.meaning_filter(&o).unwrap();
        assert!((sim - 1.0).abs() < 1e-12 && pass);
        let s = ctx.score(&o).unwrap();
        assert!(s.mp_pass && s.la_pass);
        assert_eq!(s.total, 0.45);
    }

    #[test]
    fn disjoint_candidate_fails_meaning_filter() {
        let b = backends();
        let ctx = ScoringContext::new(&sent("the dog barked"), &b, EngineConfig::default()).unwrap();
        let (sim, pass) = ctx.meaning_filter(&sent("cats purr loudly")).unwrap();
        assert_eq!(sim, 0.0);
        assert!(!pass);
        let s = ctx.score(&sent("cats purr loudly")).unwrap();
        assert_eq!((s.simplicity, s.total), (0.9, 0.0));
    }

    #[test]
    fn threshold_above_one_rejects_identity() {
        let b = backends();
        let o = sent("the dog barked");
        let cfg = EngineConfig {
            mp_threshold: 1.01,
            ..EngineConfig::default()
        };
        let ctx = ScoringContext::new(&o, &b, cfg).unwrap();
        assert!(!ctx.meaning_filter(&o).unwrap().1);
    }

    #[test]
    fn acceptability_boundaries() {
        let b = backends();
        let o = sent("the dog barked");
        let ctx = ScoringContext::new(&o, &b, EngineConfig::default()).unwrap();
        assert_eq!(ctx.acceptability_filter(&sent("the big dog")).unwrap(), (0.1, false));
        let at = EngineConfig {
            la_threshold: 0.1,
            ..EngineConfig::default()
        };
        let ctx = ScoringContext::new(&o, &b, at).unwrap();
        assert_eq!(ctx.acceptability_filter(&sent("the big dog")).unwrap(), (0.1, true));
        let zero = EngineConfig {
            la_threshold: 0.0,
            ..EngineConfig::default()
        };
        let ctx = ScoringContext::new(&o, &b, zero).unwrap();
        assert!(ctx.acceptability_filter(&sent("dog")).unwrap().1);
    }

    #[test]
    fn hard_filter_zeroes_total() {
        let b = backends();
        let ctx = ScoringContext::new(&sent("the dog barked"), &b, EngineConfig::default()).unwrap();
        let s = ctx.score(&sent("the dog")).unwrap();
        assert!(!s.la_pass);
        assert_eq!(s.simplicity, 0.9);
        assert_eq!(s.total, 0.0);
    }
}
