//! Election-wide winner determination.
//!
//! The Dodgson winner is the alternative with the smallest score, so scoring
//! runs can share a cap: once some candidate finishes with score `s`, no other
//! search ever needs to look past score level `s`. The strategies here differ
//! in how that cap circulates.
//!
//! The concurrent strategies advance all candidates in lockstep, one score
//! level per round, and fold finished scores into the shared cap only at round
//! boundaries. That makes every pruning decision a pure function of the
//! profile: outcomes, standings, and work counters come out identical run
//! after run, no matter how the rounds are scheduled across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{CandidateIndex, PreferenceProfile, SwapProfile};
use crate::scorers::{
    run_raw, AbandonReason, InstrumentationCounters, LayerResult, ScoreBudget, ScoreOutcome,
    ScorerKind, ScorerOptions, SearchEngine, SizeLimitError,
};

/// How the per-candidate searches are arranged and how the shared score cap
/// propagates between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TournamentStrategy {
    /// Every candidate runs to completion on its own; no cap is shared.
    FullSequential,
    /// Candidates run one after another, most promising first (descending
    /// Borda count), each capped by the best score seen so far.
    OrderedSequential,
    /// All candidates advance together one score level per round; the cap is
    /// the best finished score and is applied between rounds.
    Concurrent,
    /// [`TournamentStrategy::Concurrent`] with lanes laid out in descending
    /// Borda order. A scheduling hint only: results are identical.
    ConcurrentOrdered,
}

/// All strategies, in presentation order.
pub const ALL_STRATEGIES: [TournamentStrategy; 4] = [
    TournamentStrategy::FullSequential,
    TournamentStrategy::OrderedSequential,
    TournamentStrategy::Concurrent,
    TournamentStrategy::ConcurrentOrdered,
];

impl TournamentStrategy {
    /// True for strategies that feed one candidate's finished score into the
    /// budget of another, which only works with score-ordered scorers.
    pub fn requires_pruning(self) -> bool {
        !matches!(self, TournamentStrategy::FullSequential)
    }
}

impl fmt::Display for TournamentStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TournamentStrategy::FullSequential => "full-sequential",
            TournamentStrategy::OrderedSequential => "ordered-sequential",
            TournamentStrategy::Concurrent => "concurrent",
            TournamentStrategy::ConcurrentOrdered => "concurrent-ordered",
        };
        f.write_str(s)
    }
}

/// Where one candidate's search ended up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Standing {
    /// The search finished: exact score and every minimum-cost swap profile.
    Exact {
        score: u64,
        solutions: BTreeSet<SwapProfile>,
    },
    /// The search was cut off by the score cap after ruling out every score
    /// below `round`. The candidate provably cannot win.
    PrunedAt { round: u64 },
    /// The search timed out. Scores below `bound` are ruled out; nothing more
    /// is known.
    LowerBound { bound: u64 },
}

impl Standing {
    /// Certified minimum score implied by this standing.
    pub fn floor(&self) -> u64 {
        match self {
            Standing::Exact { score, .. } => *score,
            Standing::PrunedAt { round } => *round,
            Standing::LowerBound { bound } => *bound,
        }
    }
}

/// The complete result of a tournament over every alternative in the profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentOutcome {
    /// Alternatives with the minimum Dodgson score, in declaration order.
    /// Empty when the tournament is not conclusive.
    pub winners: Vec<CandidateIndex>,
    /// The winning score, when conclusive.
    pub winning_score: Option<u64>,
    /// Whether the winner set is fully determined. Timeouts can leave
    /// candidates whose scores might still undercut the best finished one.
    pub conclusive: bool,
    pub standings: BTreeMap<CandidateIndex, Standing>,
    pub stats: BTreeMap<CandidateIndex, InstrumentationCounters>,
    pub scorer: ScorerKind,
    pub strategy: TournamentStrategy,
    pub elapsed_ms: u64,
}

impl TournamentOutcome {
    /// No alternative has a Dodgson score below this.
    pub fn score_floor(&self) -> Option<u64> {
        self.standings.values().map(Standing::floor).min()
    }

    /// Total Condorcet checks across all candidates.
    pub fn total_checks(&self) -> u64 {
        self.stats.values().map(|c| c.condorcet_checks).sum()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("the {scorer} scorer cannot be pruned; the {strategy} strategy needs ucs, sc, or icr")]
    ScorerNotPrunable {
        scorer: ScorerKind,
        strategy: TournamentStrategy,
    },
    #[error(transparent)]
    SizeLimit(#[from] SizeLimitError),
}

/// Candidates ordered most promising first: descending Borda count, ties by
/// declaration order. A high Borda count needs broad support, which tends to
/// go with a low Dodgson score, so finishing these candidates first shrinks
/// the cap early.
pub fn borda_descending(profile: &PreferenceProfile) -> Vec<CandidateIndex> {
    let mut order: Vec<CandidateIndex> = profile.candidates().collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(profile.borda_count(a)), a.0));
    order
}

/// Runs a tournament with default scorer options.
pub fn run_tournament(
    profile: &PreferenceProfile,
    scorer: ScorerKind,
    strategy: TournamentStrategy,
    budget: &ScoreBudget,
) -> Result<TournamentOutcome, TournamentError> {
    run_tournament_with(profile, scorer, strategy, budget, &ScorerOptions::default())
}

/// Scores every alternative and determines the winner set. `budget.max_millis`
/// bounds the whole tournament on one shared clock; `budget.score_cap` seeds
/// the shared cap, so even the first candidate searches no deeper than that.
pub fn run_tournament_with(
    profile: &PreferenceProfile,
    scorer: ScorerKind,
    strategy: TournamentStrategy,
    budget: &ScoreBudget,
    options: &ScorerOptions,
) -> Result<TournamentOutcome, TournamentError> {
    if strategy.requires_pruning() && !scorer.supports_pruning() {
        return Err(TournamentError::ScorerNotPrunable { scorer, strategy });
    }
    let start = Instant::now();
    let deadline = budget
        .max_millis
        .map(|ms| start + Duration::from_millis(ms));
    let (standings, stats) = match strategy {
        TournamentStrategy::FullSequential => {
            sequential(profile, scorer, budget.score_cap, false, options, deadline)?
        }
        TournamentStrategy::OrderedSequential => {
            sequential(profile, scorer, budget.score_cap, true, options, deadline)?
        }
        TournamentStrategy::Concurrent => {
            lockstep(profile, scorer, budget.score_cap, false, options, deadline, start)?
        }
        TournamentStrategy::ConcurrentOrdered => {
            lockstep(profile, scorer, budget.score_cap, true, options, deadline, start)?
        }
    };
    Ok(assemble(scorer, strategy, standings, stats, start))
}

type PerCandidate = (
    BTreeMap<CandidateIndex, Standing>,
    BTreeMap<CandidateIndex, InstrumentationCounters>,
);

fn standing_from(outcome: ScoreOutcome) -> Standing {
    match outcome {
        ScoreOutcome::Exact(r) => Standing::Exact {
            score: r.score,
            solutions: r.minimal_solutions,
        },
        ScoreOutcome::Abandoned(a) => match a.reason {
            AbandonReason::ScoreCap => Standing::PrunedAt {
                round: a.lower_bound,
            },
            AbandonReason::Timeout => Standing::LowerBound {
                bound: a.lower_bound,
            },
        },
    }
}

fn sequential(
    profile: &PreferenceProfile,
    scorer: ScorerKind,
    initial_cap: Option<u64>,
    shrink_cap: bool,
    options: &ScorerOptions,
    deadline: Option<Instant>,
) -> Result<PerCandidate, SizeLimitError> {
    let order = if shrink_cap {
        borda_descending(profile)
    } else {
        profile.candidates().collect()
    };
    let mut cap = initial_cap;
    let mut standings = BTreeMap::new();
    let mut stats = BTreeMap::new();
    for a in order {
        let call_start = Instant::now();
        let outcome = run_raw(scorer, profile, a, cap, options, deadline, call_start)?;
        if shrink_cap {
            if let ScoreOutcome::Exact(r) = &outcome {
                cap = Some(cap.map_or(r.score, |c| c.min(r.score)));
            }
        }
        stats.insert(a, *outcome.stats());
        standings.insert(a, standing_from(outcome));
    }
    Ok((standings, stats))
}

struct Lane<'a> {
    candidate: CandidateIndex,
    engine: SearchEngine<'a>,
    state: Option<Standing>,
}

#[allow(clippy::too_many_arguments)]
fn lockstep(
    profile: &PreferenceProfile,
    scorer: ScorerKind,
    initial_cap: Option<u64>,
    ordered: bool,
    options: &ScorerOptions,
    deadline: Option<Instant>,
    start: Instant,
) -> Result<PerCandidate, SizeLimitError> {
    let order = if ordered {
        borda_descending(profile)
    } else {
        profile.candidates().collect()
    };
    let mut lanes: Vec<Lane> = order
        .into_iter()
        .map(|a| Lane {
            candidate: a,
            engine: SearchEngine::new(scorer, profile, a, options),
            state: None,
        })
        .collect();
    let mut cap = initial_cap;
    let mut round = 0u64;
    loop {
        // Between rounds the cap is settled, so pruning is deterministic: a
        // lane whose next level lies above the cap can never win.
        if let Some(c) = cap {
            if round > c {
                for lane in lanes.iter_mut().filter(|l| l.state.is_none()) {
                    lane.state = Some(Standing::PrunedAt { round });
                }
            }
        }
        if lanes.iter().all(|l| l.state.is_some()) {
            break;
        }
        // Surviving lanes each complete score level `round` in parallel; the
        // collect below is the barrier that ends the round.
        let results: Vec<Option<Result<LayerResult, SizeLimitError>>> = lanes
            .par_iter_mut()
            .map(|lane| {
                lane.state
                    .is_none()
                    .then(|| lane.engine.run_layer(round, deadline))
            })
            .collect();
        for (lane, result) in lanes.iter_mut().zip(results) {
            let Some(result) = result else { continue };
            match result? {
                LayerResult::Continue => {}
                LayerResult::Found { score, solutions } => {
                    debug_assert_eq!(score, round, "layered scorers report the current level");
                    cap = Some(cap.map_or(score, |c| c.min(score)));
                    lane.state = Some(Standing::Exact { score, solutions });
                }
                LayerResult::TimedOut { lower_bound } => {
                    lane.state = Some(Standing::LowerBound { bound: lower_bound });
                }
            }
        }
        round += 1;
    }
    let mut standings = BTreeMap::new();
    let mut stats = BTreeMap::new();
    for lane in lanes {
        stats.insert(lane.candidate, lane.engine.counters(start));
        standings.insert(lane.candidate, lane.state.expect("every lane settled"));
    }
    Ok((standings, stats))
}

fn assemble(
    scorer: ScorerKind,
    strategy: TournamentStrategy,
    standings: BTreeMap<CandidateIndex, Standing>,
    stats: BTreeMap<CandidateIndex, InstrumentationCounters>,
    start: Instant,
) -> TournamentOutcome {
    let mut best: Option<u64> = None;
    for standing in standings.values() {
        if let Standing::Exact { score, .. } = standing {
            best = Some(best.map_or(*score, |b| b.min(*score)));
        }
    }
    // The winner set is certain only if every unfinished candidate is already
    // certified to score above the best finished one.
    let conclusive = match best {
        None => false,
        Some(w) => standings
            .values()
            .all(|s| matches!(s, Standing::Exact { .. }) || s.floor() > w),
    };
    let winners = if conclusive {
        standings
            .iter()
            .filter(|(_, s)| matches!(s, Standing::Exact { score, .. } if Some(*score) == best))
            .map(|(&a, _)| a)
            .collect()
    } else {
        Vec::new()
    };
    TournamentOutcome {
        winners,
        winning_score: if conclusive { best } else { None },
        conclusive,
        standings,
        stats,
        scorer,
        strategy,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::generate_impartial_culture;

    const PRUNING: [ScorerKind; 3] = [ScorerKind::Ucs, ScorerKind::Sc, ScorerKind::Icr];

    fn pp(text: &str) -> PreferenceProfile {
        PreferenceProfile::parse(text).unwrap()
    }

    fn run(
        profile: &PreferenceProfile,
        scorer: ScorerKind,
        strategy: TournamentStrategy,
    ) -> TournamentOutcome {
        run_tournament(profile, scorer, strategy, &ScoreBudget::UNLIMITED).unwrap()
    }

    #[test]
    fn borda_orders_most_supported_first() {
        let profile = pp("3 3\nB A C\nB A C\nA B C\n");
        let order: Vec<&str> = borda_descending(&profile)
            .into_iter()
            .map(|a| profile.name(a))
            .collect();
        assert_eq!(order, ["B", "A", "C"]);
    }

    #[test]
    fn unanimous_winner_prunes_everyone_else_at_round_one() {
        let profile = pp("3 3\nA B C\nA B C\nA B C\n");
        for scorer in PRUNING {
            let out = run(&profile, scorer, TournamentStrategy::Concurrent);
            assert!(out.conclusive);
            assert_eq!(out.winning_score, Some(0));
            assert_eq!(out.winners, vec![CandidateIndex(0)]);
            for loser in [1, 2] {
                assert_eq!(
                    out.standings[&CandidateIndex(loser)],
                    Standing::PrunedAt { round: 1 },
                    "{scorer}"
                );
            }
        }
    }

    #[test]
    fn condorcet_winner_takes_the_tournament() {
        let profile = pp("3 3\nB A C\nB A C\nA B C\n");
        for scorer in PRUNING {
            for strategy in ALL_STRATEGIES {
                let out = run(&profile, scorer, strategy);
                assert!(out.conclusive, "{scorer} {strategy}");
                assert_eq!(out.winning_score, Some(0), "{scorer} {strategy}");
                assert_eq!(
                    out.winners,
                    vec![profile.lookup("B").unwrap()],
                    "{scorer} {strategy}"
                );
            }
        }
    }

    #[test]
    fn perfect_tie_yields_co_winners() {
        let profile = pp("2 2\nA B\nB A\n");
        for strategy in ALL_STRATEGIES {
            let out = run(&profile, ScorerKind::Icr, strategy);
            assert!(out.conclusive);
            assert_eq!(out.winning_score, Some(1));
            assert_eq!(out.winners, vec![CandidateIndex(0), CandidateIndex(1)]);
            for (a, counts) in [(0, vec![0, 1]), (1, vec![1, 0])] {
                match &out.standings[&CandidateIndex(a)] {
                    Standing::Exact { score, solutions } => {
                        assert_eq!(*score, 1);
                        assert_eq!(
                            solutions.iter().cloned().collect::<Vec<_>>(),
                            vec![SwapProfile::new(counts.clone())]
                        );
                    }
                    other => panic!("expected exact standing, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn every_strategy_agrees_on_winners() {
        for seed in 0..8u64 {
            let profile = generate_impartial_culture(5, 4, 900 + seed).unwrap();
            let reference = run(&profile, ScorerKind::Icr, TournamentStrategy::FullSequential);
            assert!(reference.conclusive);
            for scorer in PRUNING {
                for strategy in ALL_STRATEGIES {
                    let out = run(&profile, scorer, strategy);
                    assert_eq!(out.winners, reference.winners, "{scorer} {strategy} {seed}");
                    assert_eq!(out.winning_score, reference.winning_score);
                }
            }
            for scorer in [ScorerKind::Baseline, ScorerKind::Dfs] {
                let out = run(&profile, scorer, TournamentStrategy::FullSequential);
                assert_eq!(out.winners, reference.winners, "{scorer} {seed}");
            }
        }
    }

    #[test]
    fn concurrent_never_checks_more_than_full_sequential() {
        for seed in 0..8u64 {
            let profile = generate_impartial_culture(5, 4, 300 + seed).unwrap();
            for scorer in PRUNING {
                let full = run(&profile, scorer, TournamentStrategy::FullSequential);
                let conc = run(&profile, scorer, TournamentStrategy::Concurrent);
                assert!(
                    conc.total_checks() <= full.total_checks(),
                    "{scorer} seed {seed}: {} > {}",
                    conc.total_checks(),
                    full.total_checks()
                );
            }
        }
    }

    #[test]
    fn repeated_concurrent_runs_are_identical() {
        let profile = generate_impartial_culture(7, 4, 4242).unwrap();
        for strategy in [
            TournamentStrategy::Concurrent,
            TournamentStrategy::ConcurrentOrdered,
        ] {
            let first = run(&profile, ScorerKind::Ucs, strategy);
            for _ in 0..4 {
                let again = run(&profile, ScorerKind::Ucs, strategy);
                assert_eq!(again.winners, first.winners);
                assert_eq!(again.standings, first.standings);
                let work = |o: &TournamentOutcome| {
                    o.stats
                        .iter()
                        .map(|(&a, c)| (a, c.condorcet_checks, c.nodes_generated))
                        .collect::<Vec<_>>()
                };
                assert_eq!(work(&again), work(&first), "{strategy}");
            }
        }
    }

    #[test]
    fn exhaustive_scorers_refuse_pruning_strategies() {
        let profile = pp("2 2\nA B\nB A\n");
        for scorer in [ScorerKind::Baseline, ScorerKind::Dfs] {
            for strategy in ALL_STRATEGIES {
                let result = run_tournament(&profile, scorer, strategy, &ScoreBudget::UNLIMITED);
                if strategy.requires_pruning() {
                    assert!(matches!(
                        result,
                        Err(TournamentError::ScorerNotPrunable { .. })
                    ));
                } else {
                    assert!(result.is_ok());
                }
            }
        }
    }

    #[test]
    fn initial_cap_below_every_score_is_inconclusive() {
        let profile = pp("2 2\nA B\nB A\n");
        let budget = ScoreBudget {
            max_millis: None,
            score_cap: Some(0),
        };
        let out =
            run_tournament(&profile, ScorerKind::Icr, TournamentStrategy::Concurrent, &budget)
                .unwrap();
        assert!(!out.conclusive);
        assert!(out.winners.is_empty());
        assert_eq!(out.winning_score, None);
        assert_eq!(out.score_floor(), Some(1));
        for a in profile.candidates() {
            assert_eq!(out.standings[&a], Standing::PrunedAt { round: 1 });
        }
    }

    #[test]
    fn initial_cap_still_finds_cheap_winner() {
        let profile = pp("3 3\nB A C\nB A C\nA B C\n");
        let budget = ScoreBudget {
            max_millis: None,
            score_cap: Some(0),
        };
        let out = run_tournament(
            &profile,
            ScorerKind::Ucs,
            TournamentStrategy::OrderedSequential,
            &budget,
        )
        .unwrap();
        assert!(out.conclusive);
        assert_eq!(out.winners, vec![profile.lookup("B").unwrap()]);
        assert_eq!(
            out.standings[&profile.lookup("C").unwrap()],
            Standing::PrunedAt { round: 1 }
        );
    }

    #[test]
    fn zero_timeout_is_inconclusive() {
        let profile = pp("3 3\nB A C\nB A C\nA B C\n");
        let budget = ScoreBudget {
            max_millis: Some(0),
            score_cap: None,
        };
        let out = run_tournament(
            &profile,
            ScorerKind::Icr,
            TournamentStrategy::Concurrent,
            &budget,
        )
        .unwrap();
        assert!(!out.conclusive);
        assert!(out.winners.is_empty());
        assert!(out
            .standings
            .values()
            .all(|s| matches!(s, Standing::LowerBound { .. })));
    }

    #[test]
    fn full_sequential_reports_every_exact_score() {
        let profile = pp("3 3\nB A C\nB A C\nA B C\n");
        let out = run(&profile, ScorerKind::Sc, TournamentStrategy::FullSequential);
        let score_of = |name: &str| out.standings[&profile.lookup(name).unwrap()].floor();
        assert_eq!(score_of("B"), 0);
        assert_eq!(score_of("A"), 1);
        assert_eq!(score_of("C"), 4);
        assert!(out.conclusive);
    }
}
