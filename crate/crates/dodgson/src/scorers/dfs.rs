//! Depth-first traversal of the bounded swap space.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::model::{CandidateIndex, PreferenceProfile, SwapProfile};

use super::context::CheckContext;
use super::{
    past, Abandoned, AbandonReason, InstrumentationCounters, ScoreOutcome, ScoreResult,
    ScorerOptions, SizeLimitError,
};

/// Walks the space as a tree, one voter per level, checking every leaf. Needs
/// no layer bookkeeping and only `n + 1` stack frames of state, at the price
/// of visiting the whole space. With `dfs_prune` set, subtrees whose partial
/// sum already exceeds the best score found are skipped; this keeps results
/// identical and only reduces the number of leaves checked.
pub(super) fn run(
    profile: &PreferenceProfile,
    candidate: CandidateIndex,
    options: &ScorerOptions,
    deadline: Option<Instant>,
    start: Instant,
) -> Result<ScoreOutcome, SizeLimitError> {
    let bounds = profile.position_table(candidate);
    let mut ctx = CheckContext::new(profile, candidate);
    if past(deadline) {
        return Ok(ScoreOutcome::Abandoned(Abandoned {
            candidate,
            lower_bound: 0,
            reason: AbandonReason::Timeout,
            stats: counters(&ctx, start),
        }));
    }

    let mut walk = Walk {
        ctx: &mut ctx,
        bounds: &bounds.positions,
        current: vec![0u32; bounds.len()],
        best: None,
        solutions: BTreeSet::new(),
        prune: options.dfs_prune,
        deadline,
    };
    let timed_out = walk.descend(0, 0).is_err();
    let (best, solutions) = (walk.best, walk.solutions);
    if timed_out {
        return Ok(ScoreOutcome::Abandoned(Abandoned {
            candidate,
            lower_bound: 0,
            reason: AbandonReason::Timeout,
            stats: counters(&ctx, start),
        }));
    }

    Ok(ScoreOutcome::Exact(ScoreResult {
        candidate,
        score: best.expect("full traversal always finds the full raise"),
        minimal_solutions: solutions,
        stats: counters(&ctx, start),
    }))
}

struct Walk<'a, 'p> {
    ctx: &'a mut CheckContext<'p>,
    bounds: &'a [u32],
    current: Vec<u32>,
    best: Option<u64>,
    solutions: BTreeSet<SwapProfile>,
    prune: bool,
    deadline: Option<Instant>,
}

struct TimedOut;

impl Walk<'_, '_> {
    fn descend(&mut self, depth: usize, partial: u64) -> Result<(), TimedOut> {
        if depth == self.bounds.len() {
            self.ctx.nodes += 1;
            if self.ctx.nodes.is_multiple_of(4096) && past(self.deadline) {
                return Err(TimedOut);
            }
            if self.ctx.is_winner(&self.current) {
                match self.best {
                    None => {
                        self.best = Some(partial);
                        self.solutions.insert(SwapProfile::new(self.current.clone()));
                    }
                    Some(b) if partial < b => {
                        self.best = Some(partial);
                        self.solutions.clear();
                        self.solutions.insert(SwapProfile::new(self.current.clone()));
                    }
                    Some(b) if partial == b => {
                        self.solutions.insert(SwapProfile::new(self.current.clone()));
                    }
                    Some(_) => {}
                }
            }
            return Ok(());
        }
        for v in 0..=self.bounds[depth] {
            if self.prune {
                if let Some(b) = self.best {
                    // Counts only grow along a branch; once the partial sum
                    // passes the incumbent nothing below can be minimal.
                    if partial + u64::from(v) > b {
                        break;
                    }
                }
            }
            self.current[depth] = v;
            self.descend(depth + 1, partial + u64::from(v))?;
        }
        self.current[depth] = 0;
        Ok(())
    }
}

fn counters(ctx: &CheckContext, start: Instant) -> InstrumentationCounters {
    InstrumentationCounters {
        condorcet_checks: ctx.checks,
        nodes_generated: ctx.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
