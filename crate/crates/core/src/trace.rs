//! Candidates, score breakdowns and the simplification trace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::text::Sentence;

/// The edit operation that produced a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EditKind {
    Paraphrase,
    DeleteRemoval,
    DeleteExtraction,
}

impl EditKind {
    pub const ALL: [EditKind; 3] = [
        EditKind::Paraphrase,
        EditKind::DeleteRemoval,
        EditKind::DeleteExtraction,
    ];

    pub fn is_deletion(self) -> bool {
        !matches!(self, EditKind::Paraphrase)
    }
}

impl fmt::Display for EditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EditKind::Paraphrase => "PARAPHRASE",
            EditKind::DeleteRemoval => "DELETE_REMOVAL",
            EditKind::DeleteExtraction => "DELETE_EXTRACTION",
        })
    }
}

/// Sub-scores of a candidate. `total` is `simplicity` when both hard filters
/// pass and exactly zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub simplicity: f64,
    pub meaning_sim: f64,
    pub acceptability: f64,
    pub mp_pass: bool,
    pub la_pass: bool,
    pub total: f64,
}

impl ScoreBreakdown {
    pub fn combine(simplicity: f64, meaning_sim: f64, acceptability: f64, config: &EngineConfig) -> Self {
        let mp_pass = meaning_sim >= config.mp_threshold;
        let la_pass = acceptability >= config.la_threshold;
        let total = if mp_pass && la_pass { simplicity } else { 0.0 };
        Self {
            simplicity,
            meaning_sim,
            acceptability,
            mp_pass,
            la_pass,
            total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DeletionMode {
    Removal,
    Extraction,
}

impl DeletionMode {
    pub fn kind(self) -> EditKind {
        match self {
            DeletionMode::Removal => EditKind::DeleteRemoval,
            DeletionMode::Extraction => EditKind::DeleteExtraction,
        }
    }
}

/// One constituent-level deletion that yields a candidate text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionOrigin {
    pub span: [usize; 2],
    pub label: String,
    pub mode: DeletionMode,
    pub depth: usize,
}

impl DeletionOrigin {
    pub fn order_key(&self) -> (usize, usize, DeletionMode, usize) {
        (self.depth, self.span[0], self.mode, self.span[1])
    }
}

/// Operation-specific detail recorded for auditing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Provenance {
    Paraphrase {
        constraints: Vec<String>,
    },
    Deletion {
        #[serde(flatten)]
        origin: DeletionOrigin,
        /// Further spans that produced the same text.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        merged: Vec<DeletionOrigin>,
    },
}

impl Provenance {
    pub fn is_empty(&self) -> bool {
        match self {
            Provenance::Paraphrase { constraints } => constraints.is_empty(),
            Provenance::Deletion { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub sentence: Sentence,
    pub kind: EditKind,
    pub score: ScoreBreakdown,
    pub provenance: Provenance,
}

/// Why the search loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// No edit operation produced any candidate.
    NoCandidates,
    /// Candidates existed but every one scored zero on the hard filters.
    AllFiltered,
    /// Some candidates scored, none cleared the gate.
    NoImprovement,
    /// Every candidate's scoring call failed.
    BackendOutage,
    MaxIterations,
}

/// Ordered record of accepted revisions from the source to the output.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplificationTrace {
    pub source: Sentence,
    pub source_score: ScoreBreakdown,
    pub steps: Vec<Candidate>,
    pub final_sentence: Sentence,
    pub iterations: usize,
    pub termination: Termination,
}

/// Step as stored in trace JSONL.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub text: String,
    pub kind: EditKind,
    pub provenance: Provenance,
    pub scores: ScoreBreakdown,
}

/// One line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub id: String,
    pub source: String,
    pub source_scores: ScoreBreakdown,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub final_text: String,
    pub iterations: usize,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReplayViolation {
    /// Step `index` did not beat the previous total times its gate multiplier.
    Gate { index: usize, total: f64, previous: f64, t_op: f64 },
    IterationCount { recorded: usize, steps: usize },
    FinalMismatch,
    ScoreOutOfRange { index: usize },
    EmptyProvenance { index: usize },
}

impl TraceRecord {
    /// Re-checks every recorded step against the gate `S(c) > S(c') * t_op`
    /// and the structural trace invariants.
    pub fn replay(&self, config: &EngineConfig) -> Result<(), ReplayViolation> {
        if self.iterations != self.steps.len() {
            return Err(ReplayViolation::IterationCount {
                recorded: self.iterations,
                steps: self.steps.len(),
            });
        }
        let expected_final = self.steps.last().map_or(&self.source, |s| &s.text);
        if *expected_final != self.final_text {
            return Err(ReplayViolation::FinalMismatch);
        }
        let mut previous = self.source_scores.total;
        for (index, step) in self.steps.iter().enumerate() {
            let total = step.scores.total;
            if !(0.0..=1.0).contains(&total) {
                return Err(ReplayViolation::ScoreOutOfRange { index });
            }
            if step.provenance.is_empty() {
                return Err(ReplayViolation::EmptyProvenance { index });
            }
            let t_op = config.t_op(step.kind);
            if total <= previous * t_op {
                return Err(ReplayViolation::Gate {
                    index,
                    total,
                    previous,
                    t_op,
                });
            }
            previous = total;
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("trace records always serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Trace(e.to_string()))
    }
}

impl SimplificationTrace {
    pub fn to_record(&self) -> TraceRecord {
        TraceRecord {
            id: self.source.id().to_owned(),
            source: self.source.surface().to_owned(),
            source_scores: self.source_score,
            steps: self
                .steps
                .iter()
                .map(|c| StepRecord {
                    text: c.sentence.surface().to_owned(),
                    kind: c.kind,
                    provenance: c.provenance.clone(),
                    scores: c.score,
                })
                .collect(),
            final_text: self.final_sentence.surface().to_owned(),
            iterations: self.iterations,
            termination: self.termination,
        }
    }

    pub fn replay(&self, config: &EngineConfig) -> Result<(), ReplayViolation> {
        self.to_record().replay(config)
    }

    pub fn kinds(&self) -> impl Iterator<Item = EditKind> + '_ {
        self.steps.iter().map(|c| c.kind)
    }
}
