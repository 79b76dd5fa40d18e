//! Exact Dodgson scores for ranked preference profiles.
//!
//! The Dodgson score of an alternative is the smallest number of adjacent
//! upward swaps, across all ballots, that turns it into a Condorcet winner.
//! This crate enumerates the bounded swap space exactly: every scorer returns
//! the score together with all minimal swap profiles achieving it, plus
//! instrumentation counters for comparing search strategies. Election-wide
//! winner determination runs the per-candidate searches under sequential or
//! concurrent pruning tournaments.

pub mod analysis;
pub mod bench;
pub mod model;
pub mod permutor;
pub mod random;
pub mod scorers;
pub mod tournament;

pub use model::{
    Ballot, CandidateIndex, PositionTable, PreferenceProfile, ProfileError, SwapProfile,
};
pub use scorers::{score, score_with, ScoreBudget, ScoreOutcome, ScoreResult, ScorerKind};
pub use tournament::{run_tournament, TournamentOutcome, TournamentStrategy};
