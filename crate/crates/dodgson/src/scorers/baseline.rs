//! Exhaustive reference scorer: materialize, then scan.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::model::{CandidateIndex, PreferenceProfile, SwapProfile};
use crate::permutor::space_size;

use super::context::CheckContext;
use super::{
    past, Abandoned, AbandonReason, InstrumentationCounters, ScoreOutcome, ScoreResult,
    ScorerOptions, SizeLimitError,
};

/// Builds every vector `v <= positions` in lexicographic order, then checks
/// each one and keeps the minimum-score Condorcet entries. Simple, memory
/// hungry, and the yardstick the other scorers are validated against.
pub(super) fn run(
    profile: &PreferenceProfile,
    candidate: CandidateIndex,
    options: &ScorerOptions,
    deadline: Option<Instant>,
    start: Instant,
) -> Result<ScoreOutcome, SizeLimitError> {
    let bounds = profile.position_table(candidate);
    let required = space_size(&bounds);
    if required > BigUint::from(options.entry_cap) {
        return Err(SizeLimitError::FullSpace {
            required,
            cap: options.entry_cap,
        });
    }
    let total = required.to_usize().expect("cap fits usize targets");

    let mut ctx = CheckContext::new(profile, candidate);
    let abandoned = |ctx: &CheckContext| {
        ScoreOutcome::Abandoned(Abandoned {
            candidate,
            lower_bound: 0,
            reason: AbandonReason::Timeout,
            stats: counters(ctx, start),
        })
    };
    if past(deadline) {
        return Ok(abandoned(&ctx));
    }

    // Pass 1: materialize the space with an odometer, rightmost voter fastest.
    let mut entries: Vec<SwapProfile> = Vec::with_capacity(total);
    let mut v = vec![0u32; bounds.len()];
    'odometer: loop {
        entries.push(SwapProfile::new(v.clone()));
        ctx.nodes += 1;
        if ctx.nodes.is_multiple_of(4096) && past(deadline) {
            return Ok(abandoned(&ctx));
        }
        let mut j = bounds.len();
        loop {
            if j == 0 {
                break 'odometer;
            }
            j -= 1;
            if v[j] < bounds.positions[j] {
                v[j] += 1;
                v[j + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
    debug_assert_eq!(entries.len(), total);

    // Pass 2: check everything, remember the cheapest winners.
    let mut best: Option<u64> = None;
    let mut solutions: BTreeSet<SwapProfile> = BTreeSet::new();
    for sp in &entries {
        if ctx.checks % 4096 == 4095 && past(deadline) {
            return Ok(abandoned(&ctx));
        }
        if !ctx.is_winner(&sp.counts) {
            continue;
        }
        let s = sp.score();
        match best {
            None => {
                best = Some(s);
                solutions.insert(sp.clone());
            }
            Some(b) if s < b => {
                best = Some(s);
                solutions.clear();
                solutions.insert(sp.clone());
            }
            Some(b) if s == b => {
                solutions.insert(sp.clone());
            }
            Some(_) => {}
        }
    }

    let score = best.expect("raising the candidate everywhere always wins");
    Ok(ScoreOutcome::Exact(ScoreResult {
        candidate,
        score,
        minimal_solutions: solutions,
        stats: counters(&ctx, start),
    }))
}

fn counters(ctx: &CheckContext, start: Instant) -> InstrumentationCounters {
    InstrumentationCounters {
        condorcet_checks: ctx.checks,
        nodes_generated: ctx.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
