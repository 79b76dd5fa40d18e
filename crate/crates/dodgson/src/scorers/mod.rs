//! The five exact Dodgson-score algorithms behind one interface.
//!
//! A candidate's Dodgson score is the minimum number of adjacent upward swaps,
//! summed over voters, that makes it a Condorcet winner. Every scorer here is
//! exact and returns the full set of minimum-cost swap profiles, so results
//! are interchangeable; they differ only in how much of the bounded swap space
//! they touch:
//!
//! * [`ScorerKind::Baseline`] materializes the whole space, then scans it.
//! * [`ScorerKind::Dfs`] visits every vector depth-first without storing them.
//! * [`ScorerKind::Ucs`] pops vectors from a best-first frontier in score
//!   order and stops at the first winning layer.
//! * [`ScorerKind::Sc`] materializes one score layer at a time and scans it.
//! * [`ScorerKind::Icr`] streams each score layer in constant memory.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use thiserror::Error;

use crate::model::{CandidateIndex, PreferenceProfile, SwapProfile};

mod baseline;
mod context;
mod dfs;
mod layered;
mod ucs;

pub(crate) use layered::{IcrSearch, ScSearch};
pub(crate) use ucs::UcsSearch;

/// Selects one of the five scoring algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScorerKind {
    Baseline,
    Dfs,
    Ucs,
    Sc,
    Icr,
}

/// All scorers, in presentation order.
pub const ALL_SCORERS: [ScorerKind; 5] = [
    ScorerKind::Baseline,
    ScorerKind::Dfs,
    ScorerKind::Ucs,
    ScorerKind::Sc,
    ScorerKind::Icr,
];

impl ScorerKind {
    /// True for scorers that enumerate in score order and can therefore stop
    /// early against a known bound.
    pub fn supports_pruning(self) -> bool {
        matches!(self, ScorerKind::Ucs | ScorerKind::Sc | ScorerKind::Icr)
    }
}

impl fmt::Display for ScorerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScorerKind::Baseline => "baseline",
            ScorerKind::Dfs => "dfs",
            ScorerKind::Ucs => "ucs",
            ScorerKind::Sc => "sc",
            ScorerKind::Icr => "icr",
        };
        f.write_str(s)
    }
}

/// Limits on a single scoring run. `score_cap` only affects scorers that
/// search in score order (see [`ScorerKind::supports_pruning`]); the
/// exhaustive scorers ignore it and honor `max_millis` alone.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScoreBudget {
    pub max_millis: Option<u64>,
    pub score_cap: Option<u64>,
}

impl ScoreBudget {
    pub const UNLIMITED: ScoreBudget = ScoreBudget {
        max_millis: None,
        score_cap: None,
    };
}

/// Tuning knobs that do not change results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScorerOptions {
    /// Refuse to materialize more than this many entries at once (whole space
    /// for the baseline, single layer for SC).
    pub entry_cap: u64,
    /// Lets DFS skip subtrees whose partial sum already exceeds the best score
    /// seen. Off by default: the plain traversal is the reference behavior.
    pub dfs_prune: bool,
}

impl Default for ScorerOptions {
    fn default() -> Self {
        ScorerOptions {
            entry_cap: 100_000_000,
            dfs_prune: false,
        }
    }
}

/// Work counters for one scoring run. `condorcet_checks` counts full Condorcet
/// evaluations of candidate swap profiles; `nodes_generated` counts swap
/// profiles materialized or enqueued.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstrumentationCounters {
    pub condorcet_checks: u64,
    pub nodes_generated: u64,
    pub elapsed_ms: u64,
}

/// A completed scoring run: the exact score and every minimum-cost solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreResult {
    pub candidate: CandidateIndex,
    pub score: u64,
    pub minimal_solutions: BTreeSet<SwapProfile>,
    pub stats: InstrumentationCounters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbandonReason {
    /// The next score layer would have exceeded the configured cap.
    ScoreCap,
    /// The time budget ran out.
    Timeout,
}

/// An abandoned run. `lower_bound` is certified: every layer strictly below it
/// was fully examined (or ruled out) without finding a solution, so the true
/// score is at least `lower_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abandoned {
    pub candidate: CandidateIndex,
    pub lower_bound: u64,
    pub reason: AbandonReason,
    pub stats: InstrumentationCounters,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoreOutcome {
    Exact(ScoreResult),
    Abandoned(Abandoned),
}

impl ScoreOutcome {
    pub fn exact(&self) -> Option<&ScoreResult> {
        match self {
            ScoreOutcome::Exact(r) => Some(r),
            ScoreOutcome::Abandoned(_) => None,
        }
    }

    pub fn stats(&self) -> &InstrumentationCounters {
        match self {
            ScoreOutcome::Exact(r) => &r.stats,
            ScoreOutcome::Abandoned(a) => &a.stats,
        }
    }
}

/// Materialization would blow past the configured entry cap.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SizeLimitError {
    #[error("swap space holds {required} entries, above the cap of {cap}")]
    FullSpace { required: BigUint, cap: u64 },
    #[error("score layer {layer} holds {required} entries, above the cap of {cap}")]
    Layer {
        layer: u64,
        required: BigUint,
        cap: u64,
    },
}

/// Scores `candidate` with default options.
pub fn score(
    kind: ScorerKind,
    profile: &PreferenceProfile,
    candidate: CandidateIndex,
    budget: &ScoreBudget,
) -> Result<ScoreOutcome, SizeLimitError> {
    score_with(kind, profile, candidate, budget, &ScorerOptions::default())
}

/// Scores `candidate` on `profile` with the chosen algorithm. All scorers
/// agree on the score and the solution set; an interrupted run reports a
/// certified lower bound instead.
pub fn score_with(
    kind: ScorerKind,
    profile: &PreferenceProfile,
    candidate: CandidateIndex,
    budget: &ScoreBudget,
    options: &ScorerOptions,
) -> Result<ScoreOutcome, SizeLimitError> {
    let start = Instant::now();
    let deadline = budget
        .max_millis
        .map(|ms| start + Duration::from_millis(ms));
    run_raw(
        kind,
        profile,
        candidate,
        budget.score_cap,
        options,
        deadline,
        start,
    )
}

/// [`score_with`] against a caller-supplied deadline, so a tournament can hold
/// every candidate to one shared wall clock.
pub(crate) fn run_raw(
    kind: ScorerKind,
    profile: &PreferenceProfile,
    candidate: CandidateIndex,
    score_cap: Option<u64>,
    options: &ScorerOptions,
    deadline: Option<Instant>,
    start: Instant,
) -> Result<ScoreOutcome, SizeLimitError> {
    match kind {
        ScorerKind::Baseline => baseline::run(profile, candidate, options, deadline, start),
        ScorerKind::Dfs => dfs::run(profile, candidate, options, deadline, start),
        ScorerKind::Ucs | ScorerKind::Sc | ScorerKind::Icr => {
            let mut engine = SearchEngine::new(kind, profile, candidate, options);
            let mut k = 0u64;
            loop {
                if let Some(cap) = score_cap {
                    if k > cap {
                        return Ok(ScoreOutcome::Abandoned(Abandoned {
                            candidate,
                            lower_bound: k,
                            reason: AbandonReason::ScoreCap,
                            stats: engine.counters(start),
                        }));
                    }
                }
                match engine.run_layer(k, deadline)? {
                    LayerResult::Continue => k += 1,
                    LayerResult::Found { score, solutions } => {
                        return Ok(ScoreOutcome::Exact(ScoreResult {
                            candidate,
                            score,
                            minimal_solutions: solutions,
                            stats: engine.counters(start),
                        }));
                    }
                    LayerResult::TimedOut { lower_bound } => {
                        return Ok(ScoreOutcome::Abandoned(Abandoned {
                            candidate,
                            lower_bound,
                            reason: AbandonReason::Timeout,
                            stats: engine.counters(start),
                        }));
                    }
                }
            }
        }
    }
}

/// Outcome of driving one score layer to completion.
#[derive(Debug)]
pub(crate) enum LayerResult {
    /// Layer finished without a solution.
    Continue,
    /// This layer contains solutions; all of them are returned.
    Found {
        score: u64,
        solutions: BTreeSet<SwapProfile>,
    },
    /// Deadline hit somewhere inside the layer. Layers strictly below
    /// `lower_bound` are fully verified empty.
    TimedOut { lower_bound: u64 },
}

/// A layer-steppable search: the score-ordered scorers behind a common face,
/// so the tournament can advance many candidates one score level at a time.
pub(crate) enum SearchEngine<'a> {
    Ucs(UcsSearch<'a>),
    Sc(ScSearch<'a>),
    Icr(IcrSearch<'a>),
}

impl<'a> SearchEngine<'a> {
    pub fn new(
        kind: ScorerKind,
        profile: &'a PreferenceProfile,
        candidate: CandidateIndex,
        options: &ScorerOptions,
    ) -> Self {
        match kind {
            ScorerKind::Ucs => SearchEngine::Ucs(UcsSearch::new(profile, candidate)),
            ScorerKind::Sc => {
                SearchEngine::Sc(ScSearch::new(profile, candidate, options.entry_cap))
            }
            ScorerKind::Icr => SearchEngine::Icr(IcrSearch::new(profile, candidate)),
            _ => panic!("{kind} cannot run as a layered search"),
        }
    }

    /// Runs score layer `k`. Callers must feed consecutive layers starting
    /// from zero and stop after the first `Found`.
    pub fn run_layer(
        &mut self,
        k: u64,
        deadline: Option<Instant>,
    ) -> Result<LayerResult, SizeLimitError> {
        match self {
            SearchEngine::Ucs(s) => Ok(s.run_layer(k, deadline)),
            SearchEngine::Sc(s) => s.run_layer(k, deadline),
            SearchEngine::Icr(s) => Ok(s.run_layer(k, deadline)),
        }
    }

    pub fn counters(&self, start: Instant) -> InstrumentationCounters {
        let (checks, nodes) = match self {
            SearchEngine::Ucs(s) => s.raw_counters(),
            SearchEngine::Sc(s) => s.raw_counters(),
            SearchEngine::Icr(s) => s.raw_counters(),
        };
        InstrumentationCounters {
            condorcet_checks: checks,
            nodes_generated: nodes,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

pub(crate) fn past(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}
