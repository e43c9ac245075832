//! Evaluation metrics: SARI, FKGL, complex word identification scores and
//! trace statistics.

mod cwi;
mod fkgl;
mod sari;
mod stats;

use thiserror::Error;

pub use cwi::{cwi_eval, parse_cwi, write_cwi, CwiResult, CwiSentence};
pub use fkgl::{count_syllables, fkgl, fkgl_from_counts, is_word, mean_length};
pub use sari::{corpus_sari, sari, SariResult, SariStats, NGRAM_ORDER};
pub use stats::{trace_stats, TraceStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("{0}")]
    Validation(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}
