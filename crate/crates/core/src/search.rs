//! The iterative simplification loop.
//!
//! Each iteration proposes one paraphrase and all deletion candidates for the
//! current sentence, scores them, keeps those with `S(c) > S(current) * t_op`
//! whose text has not been visited, and moves to the best survivor. The loop
//! ends when nothing survives or `max_iterations` steps have been taken.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::backends::{BackendError, Backends};
use crate::config::EngineConfig;
use crate::edit_ops::{generate_deletion_candidates, generate_paraphrase_candidate, Proposal};
use crate::error::Result;
use crate::scoring::ScoringContext;
use crate::text::Sentence;
use crate::trace::{Candidate, ScoreBreakdown, SimplificationTrace, Termination};

/// Which edit operations the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSet {
    pub paraphrase: bool,
    pub deletion: bool,
}

impl OpSet {
    pub const PARAPHRASE_ONLY: OpSet = OpSet {
        paraphrase: true,
        deletion: false,
    };
    pub const DELETION_ONLY: OpSet = OpSet {
        paraphrase: false,
        deletion: true,
    };
    pub const ALL: OpSet = OpSet {
        paraphrase: true,
        deletion: true,
    };
}

impl Default for OpSet {
    fn default() -> Self {
        OpSet::ALL
    }
}

impl FromStr for OpSet {
    type Err = String;

    /// Accepts `pa`, `dl`, or both separated by a comma or `+`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut ops = OpSet {
            paraphrase: false,
            deletion: false,
        };
        for part in s.split([',', '+']).map(str::trim) {
            match part.to_ascii_lowercase().as_str() {
                "pa" => ops.paraphrase = true,
                "dl" => ops.deletion = true,
                other => return Err(format!("unknown operation {other:?} (expected pa or dl)")),
            }
        }
        Ok(ops)
    }
}

impl fmt::Display for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.paraphrase, self.deletion) {
            (true, true) => f.write_str("pa,dl"),
            (true, false) => f.write_str("pa"),
            (false, true) => f.write_str("dl"),
            (false, false) => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchState {
    pub current: Sentence,
    pub current_score: ScoreBreakdown,
    pub visited: BTreeSet<String>,
    pub iteration: usize,
    pub steps: Vec<Candidate>,
}

impl SearchState {
    pub fn new(source: Sentence, score: ScoreBreakdown) -> Self {
        let visited = BTreeSet::from([source.key()]);
        Self {
            current: source,
            current_score: score,
            visited,
            iteration: 0,
            steps: Vec::new(),
        }
    }
}

/// Acceptance test for one scored candidate against the current sentence.
pub fn gate(candidate: &Candidate, state: &SearchState, config: &EngineConfig) -> bool {
    candidate.score.total > state.current_score.total * config.t_op(candidate.kind)
        && !state.visited.contains(&candidate.sentence.key())
}

#[derive(Debug)]
pub enum StepOutcome {
    Advanced(SearchState),
    Terminated(SearchState, Termination),
}

/// Scores memoized by sentence text within one search.
#[derive(Debug, Default)]
pub struct ScoreCache(BTreeMap<String, ScoreBreakdown>);

impl ScoreCache {
    pub fn score(&mut self, ctx: &ScoringContext<'_>, s: &Sentence) -> Result<ScoreBreakdown, BackendError> {
        if let Some(hit) = self.0.get(&s.key()) {
            return Ok(*hit);
        }
        let score = ctx.score(s)?;
        self.0.insert(s.key(), score);
        Ok(score)
    }
}

pub struct Engine {
    backends: Backends,
    config: EngineConfig,
    ops: OpSet,
}

impl Engine {
    pub fn new(backends: Backends, config: EngineConfig) -> Self {
        Self {
            backends,
            config,
            ops: OpSet::ALL,
        }
    }

    pub fn with_ops(mut self, ops: OpSet) -> Self {
        self.ops = ops;
        self
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn ops(&self) -> OpSet {
        self.ops
    }

    pub fn backends(&self) -> &Backends {
        &self.backends
    }

    /// Paraphrase candidate first, then deletions in `(depth, start)` order.
    pub fn propose(&self, s: &Sentence) -> Result<Vec<Proposal>, BackendError> {
        let mut out = Vec::new();
        if self.ops.paraphrase {
            out.extend(generate_paraphrase_candidate(s, &self.backends)?);
        }
        if self.ops.deletion {
            out.extend(generate_deletion_candidates(s, &self.backends)?);
        }
        Ok(out)
    }

    /// Scores every proposal, dropping those whose scoring call failed.
    /// Returns the scored candidates and the number of failures.
    pub fn score_all(
        &self,
        proposals: Vec<Proposal>,
        ctx: &ScoringContext<'_>,
        cache: &mut ScoreCache,
    ) -> Result<(Vec<Candidate>, usize), BackendError> {
        let mut failures = 0;
        let mut out = Vec::with_capacity(proposals.len());
        for p in proposals {
            match cache.score(ctx, &p.sentence) {
                Ok(score) => out.push(Candidate {
                    sentence: p.sentence,
                    kind: p.kind,
                    score,
                    provenance: p.provenance,
                }),
                Err(e) if e.is_contract_violation() => return Err(e),
                Err(e) => {
                    warn!(error = %e, "scoring failed; candidate dropped");
                    failures += 1;
                }
            }
        }
        Ok((out, failures))
    }

    /// One iteration of the loop.
    pub fn step(
        &self,
        mut state: SearchState,
        ctx: &ScoringContext<'_>,
        cache: &mut ScoreCache,
    ) -> Result<StepOutcome, BackendError> {
        if state.iteration >= self.config.max_iterations {
            return Ok(StepOutcome::Terminated(state, Termination::MaxIterations));
        }
        let proposals = self.propose(&state.current)?;
        if proposals.is_empty() {
            return Ok(StepOutcome::Terminated(state, Termination::NoCandidates));
        }
        let (scored, _failures) = self.score_all(proposals, ctx, cache)?;
        if scored.is_empty() {
            return Ok(StepOutcome::Terminated(state, Termination::BackendOutage));
        }
        let mut best: Option<Candidate> = None;
        for c in scored.iter().filter(|c| gate(c, &state, &self.config)) {
            if best.as_ref().is_none_or(|b| c.score.total > b.score.total) {
                best = Some(c.clone());
            }
        }
        let Some(best) = best else {
            let reason = if scored.iter().all(|c| c.score.total == 0.0) {
                Termination::AllFiltered
            } else {
                Termination::NoImprovement
            };
            return Ok(StepOutcome::Terminated(state, reason));
        };
        state.visited.insert(best.sentence.key());
        state.current = best.sentence.clone();
        state.current_score = best.score;
        state.iteration += 1;
        state.steps.push(best);
        Ok(StepOutcome::Advanced(state))
    }

    /// Runs the loop to completion on `s`.
    pub fn simplify(&self, s: &Sentence) -> Result<SimplificationTrace> {
        let ctx = ScoringContext::new(s, &self.backends, self.config)?;
        let mut cache = ScoreCache::default();
        let source_score = cache.score(&ctx, s)?;
        let mut state = SearchState::new(s.clone(), source_score);
        let termination = loop {
            match self.step(state, &ctx, &mut cache)? {
                StepOutcome::Advanced(next) => state = next,
                StepOutcome::Terminated(last, reason) => {
                    state = last;
                    break reason;
                }
            }
        };
        Ok(SimplificationTrace {
            source: s.clone(),
            source_score,
            final_sentence: state.current,
            iterations: state.steps.len(),
            steps: state.steps,
            termination,
        })
    }
}
