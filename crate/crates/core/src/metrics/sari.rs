//! SARI over n = 1..4.
//!
//! Per n-gram order, counts are accumulated over the corpus:
//!
//! * add: n-grams in the output but not the source (as sets), correct when
//!   some reference contains them;
//! * keep: source n-grams also in the output, with source and output counts
//!   multiplied by the number of references and compared against the pooled
//!   reference counts;
//! * delete: source n-grams missing from the output, weighted the same way.
//!
//! Precision and recall are averaged over the four orders before taking F1
//! for add and keep; delete uses averaged precision only. Empty denominators
//! give zero.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::text::Sentence;

pub const NGRAM_ORDER: usize = 4;

/// Scores on the 0–100 scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SariResult {
    pub overall: f64,
    pub add: f64,
    pub keep: f64,
    pub delete: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Counts {
    correct: f64,
    sys: f64,
    reference: f64,
}

impl Counts {
    fn precision(&self) -> f64 {
        if self.sys > 0.0 {
            self.correct / self.sys
        } else {
            0.0
        }
    }

    fn recall(&self) -> f64 {
        if self.reference > 0.0 {
            self.correct / self.reference
        } else {
            0.0
        }
    }
}

/// Corpus-level SARI accumulator.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SariStats {
    add: [Counts; NGRAM_ORDER],
    keep: [Counts; NGRAM_ORDER],
    delete: [Counts; NGRAM_ORDER],
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], f64> {
    let mut out = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *out.entry(w).or_insert(0.0) += 1.0;
        }
    }
    out
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

impl SariStats {
    pub fn add_sentence(&mut self, source: &[String], output: &[String], references: &[&[String]]) {
        let num_refs = references.len() as f64;
        for n in 1..=NGRAM_ORDER {
            let k = n - 1;
            let orig = ngram_counts(source, n);
            let sys = ngram_counts(output, n);
            let mut refs: HashMap<&[String], f64> = HashMap::new();
            for r in references {
                for (g, c) in ngram_counts(r, n) {
                    *refs.entry(g).or_insert(0.0) += c;
                }
            }

            let orig_set: HashSet<&[String]> = orig.keys().copied().collect();
            let added: HashSet<&[String]> = sys.keys().copied().filter(|g| !orig_set.contains(g)).collect();
            self.add[k].correct += added.iter().filter(|g| refs.contains_key(*g)).count() as f64;
            self.add[k].sys += added.len() as f64;
            self.add[k].reference += refs.keys().filter(|g| !orig_set.contains(*g)).count() as f64;

            for (g, &oc) in &orig {
                let o = oc * num_refs;
                let s = sys.get(g).copied().unwrap_or(0.0) * num_refs;
                let r = refs.get(g).copied().unwrap_or(0.0);
                let orig_and_sys = o.min(s);
                let orig_and_refs = o.min(r);
                self.keep[k].correct += orig_and_sys.min(orig_and_refs);
                self.keep[k].sys += orig_and_sys;
                self.keep[k].reference += orig_and_refs;

                let orig_not_sys = (o - s).max(0.0);
                let orig_not_refs = (o - r).max(0.0);
                self.delete[k].correct += orig_not_sys.min(orig_not_refs);
                self.delete[k].sys += orig_not_sys;
                self.delete[k].reference += orig_not_refs;
            }
        }
    }

    pub fn result(&self) -> SariResult {
        let mean = |counts: &[Counts; NGRAM_ORDER], f: fn(&Counts) -> f64| {
            counts.iter().map(f).sum::<f64>() / NGRAM_ORDER as f64
        };
        let add = 100.0 * f1(mean(&self.add, Counts::precision), mean(&self.add, Counts::recall));
        let keep = 100.0 * f1(mean(&self.keep, Counts::precision), mean(&self.keep, Counts::recall));
        let delete = 100.0 * mean(&self.delete, Counts::precision);
        SariResult {
            overall: (add + keep + delete) / 3.0,
            add,
            keep,
            delete,
        }
    }
}

/// Sentence-level SARI.
pub fn sari(
    source: &Sentence,
    output: &Sentence,
    references: &[Sentence],
) -> Result<SariResult, MetricsError> {
    corpus_sari(
        std::slice::from_ref(source),
        std::slice::from_ref(output),
        &[references.to_vec()],
    )
}

/// Corpus-level SARI: counts pooled over sentences, then scored once.
pub fn corpus_sari(
    sources: &[Sentence],
    outputs: &[Sentence],
    references: &[Vec<Sentence>],
) -> Result<SariResult, MetricsError> {
    if sources.is_empty() {
        return Err(MetricsError::Validation("empty corpus".into()));
    }
    if sources.len() != outputs.len() || sources.len() != references.len() {
        return Err(MetricsError::Validation(format!(
            "misaligned corpus: {} sources, {} outputs, {} reference sets",
            sources.len(),
            outputs.len(),
            references.len()
        )));
    }
    let mut stats = SariStats::default();
    for (i, ((src, out), refs)) in sources.iter().zip(outputs).zip(references).enumerate() {
        if refs.is_empty() {
            return Err(MetricsError::Validation(format!("sentence {i} has no references")));
        }
        let ref_tokens: Vec<&[String]> = refs.iter().map(Sentence::tokens).collect();
        stats.add_sentence(src.tokens(), out.tokens(), &ref_tokens);
    }
    Ok(stats.result())
}
