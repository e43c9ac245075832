//! Iterative, edit-based sentence simplification.
//!
//! A sentence is revised one edit at a time. Each iteration proposes a
//! paraphrase that avoids the words an attention-based detector marks as
//! complex, plus removal and extraction of parse constituents. Candidates are
//! scored by simplicity under meaning-preservation and acceptability hard
//! filters, gated against the current sentence with a per-operation
//! multiplier, and the best survivor becomes the next input. Every accepted
//! edit is recorded in a [`SimplificationTrace`].

pub mod backends;
pub mod ccd;
pub mod config;
pub mod edit_ops;
mod error;
pub mod metrics;
pub mod scoring;
pub mod search;
pub mod text;
pub mod trace;

pub use config::{load_config, EngineConfig};
pub use error::{Error, Result};
pub use search::{gate, Engine, OpSet, SearchState};
pub use text::{tokenize, Sentence};
pub use trace::{Candidate, EditKind, Provenance, ScoreBreakdown, SimplificationTrace, TraceRecord};
