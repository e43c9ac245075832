use serde::{Deserialize, Serialize};

use crate::trace::EditKind;

/// Mean accepted steps per sentence, overall and per operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceStats {
    pub sentences: usize,
    pub iterations: f64,
    pub paraphrase: f64,
    pub removal: f64,
    pub extraction: f64,
}

/// Aggregates per-sentence step kinds. An empty input gives all-zero means.
pub fn trace_stats<T, K>(traces: T) -> TraceStats
where
    T: IntoIterator<Item = K>,
    K: IntoIterator<Item = EditKind>,
{
    let mut sentences = 0usize;
    let mut counts = [0usize; 3];
    for kinds in traces {
        sentences += 1;
        for k in kinds {
            counts[k as usize] += 1;
        }
    }
    let mean = |c: usize| if sentences == 0 { 0.0 } else { c as f64 / sentences as f64 };
    TraceStats {
        sentences,
        iterations: mean(counts.iter().sum()),
        paraphrase: mean(counts[EditKind::Paraphrase as usize]),
        removal: mean(counts[EditKind::DeleteRemoval as usize]),
        extraction: mean(counts[EditKind::DeleteExtraction as usize]),
    }
}
