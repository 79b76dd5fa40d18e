//! Naive reference implementations for cross-checking the library.
//!
//! Everything here recomputes results from first principles: ballots are
//! plain index vectors, swaps are applied by remove-and-insert, and majorities
//! are recounted per rival. None of the library's search or evaluation
//! machinery is reused, so agreement is meaningful evidence.

// Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dodgson::model::{CandidateIndex, PreferenceProfile};

/// Exhaustively computed score and complete minimal-solution set.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub score: u64,
    pub solutions: BTreeSet<Vec<u32>>,
}

fn rankings_of(profile: &PreferenceProfile) -> Vec<Vec<usize>> {
    profile
        .ballots()
        .iter()
        .map(|b| b.ranking().iter().map(|c| c.0).collect())
        .collect()
}

fn position_in(ranking: &[usize], candidate: usize) -> usize {
    ranking
        .iter()
        .position(|&c| c == candidate)
        .expect("candidate appears in every ballot")
}

/// True if `candidate` beats every rival by strict majority after raising it
/// `swaps[v]` places in each ballot `v`.
fn wins_after(rankings: &[Vec<usize>], m: usize, candidate: usize, swaps: &[u32]) -> bool {
    let mut edited = rankings.to_vec();
    for (ranking, &s) in edited.iter_mut().zip(swaps) {
        let p = position_in(ranking, candidate);
        let c = ranking.remove(p);
        ranking.insert(p - s as usize, c);
    }
    let majority = rankings.len() / 2 + 1;
    for rival in 0..m {
        if rival == candidate {
            continue;
        }
        let ahead = edited
            .iter()
            .filter(|r| position_in(r, candidate) < position_in(r, rival))
            .count();
        if ahead < majority {
            return false;
        }
    }
    true
}

/// Dodgson score by brute force: every bounded swap vector, visited in
/// increasing-total order; the first total containing winners is the score and
/// all its winners are the minimal solutions.
pub fn oracle_score(profile: &PreferenceProfile, candidate: CandidateIndex) -> OracleResult {
    let rankings = rankings_of(profile);
    let m = profile.num_alternatives();
    let bounds: Vec<u32> = rankings
        .iter()
        .map(|r| position_in(r, candidate.0) as u32)
        .collect();

    // Materialize the whole bounded box, then bucket by total.
    let mut by_total: Vec<Vec<Vec<u32>>> =
        vec![Vec::new(); bounds.iter().map(|&b| b as usize).sum::<usize>() + 1];
    let mut v = vec![0u32; bounds.len()];
    loop {
        let total: u32 = v.iter().sum();
        by_total[total as usize].push(v.clone());
        let mut digit = bounds.len();
        loop {
            if digit == 0 {
                let mut result = None;
                for (total, bucket) in by_total.iter().enumerate() {
                    let winners: BTreeSet<Vec<u32>> = bucket
                        .iter()
                        .filter(|swaps| wins_after(&rankings, m, candidate.0, swaps))
                        .cloned()
                        .collect();
                    if !winners.is_empty() {
                        result = Some(OracleResult {
                            score: total as u64,
                            solutions: winners,
                        });
                        break;
                    }
                }
                return result.expect("raising a candidate to the top of every ballot wins");
            }
            digit -= 1;
            if v[digit] < bounds[digit] {
                v[digit] += 1;
                v[digit + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// Condorcet winner by direct pairwise recount.
pub fn oracle_condorcet_winner(profile: &PreferenceProfile) -> Option<CandidateIndex> {
    let rankings = rankings_of(profile);
    let m = profile.num_alternatives();
    let no_swaps = vec![0u32; rankings.len()];
    (0..m)
        .find(|&c| wins_after(&rankings, m, c, &no_swaps))
        .map(CandidateIndex)
}

/// Profile of `n` copies of the same ballot over `m` alternatives, the
/// worst-case shape for search-space size.
pub fn identical_profile(n: usize, m: usize) -> PreferenceProfile {
    let names = (0..m).map(|i| format!("A{}", i + 1)).collect();
    PreferenceProfile::new(names, vec![(0..m).collect(); n]).unwrap()
}
