//! Best-first search over swap profiles, cheapest total first.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::time::Instant;

use crate::model::{CandidateIndex, PreferenceProfile, SwapProfile};

use super::context::{solution_floor, CheckContext};
use super::{past, LayerResult};

/// A frontier entry: a swap vector keyed by its score, with lexicographic
/// tie-breaking, plus the highest voter index it has ever incremented.
#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    score: u64,
    counts: Vec<u32>,
    frontier: usize,
}

/// Uniform-cost search: pop the cheapest unexamined vector, check it, push its
/// successors. Pops are non-decreasing in score, so the first winning pop
/// fixes the exact score; the rest of that score layer is then drained to
/// collect every minimal solution.
///
/// Two refinements keep the examined count near the useful part of the space
/// without changing any result:
///
/// * Duplicate suppression with interchangeable-voter folding. A vector is
///   generated by incrementing voters left to right (never below the highest
///   index already touched), and voters who cast identical ballots only carry
///   canonical, non-increasing count patterns. Each orbit of equivalent
///   vectors is examined once; reported solutions are expanded back to all
///   members, which are solutions by symmetry.
/// * A pairwise-majority floor. No vector cheaper than the floor can possibly
///   win, so those pops are expanded but not checked.
pub(crate) struct UcsSearch<'a> {
    ctx: CheckContext<'a>,
    heap: BinaryHeap<Reverse<Node>>,
    bounds: Vec<u32>,
    /// Nearest earlier voter with the identical ballot, if any.
    prev_twin: Vec<Option<usize>>,
    /// Voter groups sharing a ballot, for orbit expansion.
    twin_groups: Vec<Vec<usize>>,
    check_floor: u64,
    winners: Vec<Vec<u32>>,
    done: bool,
}

impl<'a> UcsSearch<'a> {
    pub fn new(profile: &'a PreferenceProfile, candidate: CandidateIndex) -> Self {
        let ctx = CheckContext::new(profile, candidate);
        let bounds = ctx.positions().to_vec();
        let n = bounds.len();

        let mut first_member: HashMap<&[crate::model::CandidateIndex], usize> = HashMap::new();
        let mut prev_twin = vec![None; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut last_member: Vec<usize> = Vec::new();
        for (i, ballot) in profile.ballots().iter().enumerate() {
            match first_member.entry(ballot.ranking()) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    let g = *e.get();
                    prev_twin[i] = Some(last_member[g]);
                    last_member[g] = i;
                    groups[g].push(i);
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(groups.len());
                    last_member.push(i);
                    groups.push(vec![i]);
                }
            }
        }

        let mut heap = BinaryHeap::new();
        heap.push(Reverse(Node {
            score: 0,
            counts: vec![0; n],
            frontier: 0,
        }));
        let mut search = UcsSearch {
            check_floor: solution_floor(profile, candidate),
            ctx,
            heap,
            bounds,
            prev_twin,
            twin_groups: groups,
            winners: Vec::new(),
            done: false,
        };
        search.ctx.nodes = 1;
        search
    }

    pub fn raw_counters(&self) -> (u64, u64) {
        (self.ctx.checks, self.ctx.nodes)
    }

    /// Pops and handles every frontier node of score `k`.
    pub fn run_layer(&mut self, k: u64, deadline: Option<Instant>) -> LayerResult {
        debug_assert!(!self.done, "layer requested after the search finished");
        if past(deadline) {
            return LayerResult::TimedOut { lower_bound: k };
        }
        let mut pops: u32 = 0;
        while let Some(Reverse(top)) = self.heap.peek() {
            debug_assert!(top.score >= k, "frontier must never regress");
            if top.score > k {
                break;
            }
            let node = self.heap.pop().expect("peeked").0;
            pops += 1;
            if pops.is_multiple_of(256) && past(deadline) {
                return LayerResult::TimedOut { lower_bound: k };
            }
            if self.winners.is_empty() {
                self.expand(&node);
            }
            if node.score >= self.check_floor && self.ctx.is_winner(&node.counts) {
                self.winners.push(node.counts);
            }
        }
        if self.winners.is_empty() {
            return LayerResult::Continue;
        }
        self.done = true;
        let mut solutions = BTreeSet::new();
        for canonical in self.winners.drain(..) {
            expand_orbit(&canonical, &self.twin_groups, &mut solutions);
        }
        LayerResult::Found {
            score: k,
            solutions,
        }
    }

    fn expand(&mut self, node: &Node) {
        for i in node.frontier..self.bounds.len() {
            if node.counts[i] >= self.bounds[i] {
                continue;
            }
            // Keep counts non-increasing along runs of identical ballots; the
            // skipped siblings are recovered by orbit expansion.
            if let Some(t) = self.prev_twin[i] {
                if node.counts[i] >= node.counts[t] {
                    continue;
                }
            }
            let mut counts = node.counts.clone();
            counts[i] += 1;
            self.heap.push(Reverse(Node {
                score: node.score + 1,
                counts,
                frontier: i,
            }));
            self.ctx.nodes += 1;
        }
    }
}

/// Emits every vector obtained from `canonical` by redistributing counts
/// within each group of identical-ballot voters. All of them apply the same
/// multiset of raises to interchangeable ballots, so all are solutions exactly
/// when the canonical one is.
fn expand_orbit(canonical: &[u32], groups: &[Vec<usize>], out: &mut BTreeSet<SwapProfile>) {
    let mut current = canonical.to_vec();
    fill_group(0, canonical, groups, &mut current, out);
}

fn fill_group(
    g: usize,
    canonical: &[u32],
    groups: &[Vec<usize>],
    current: &mut Vec<u32>,
    out: &mut BTreeSet<SwapProfile>,
) {
    if g == groups.len() {
        out.insert(SwapProfile::new(current.clone()));
        return;
    }
    let members = &groups[g];
    if members.len() == 1 {
        fill_group(g + 1, canonical, groups, current, out);
        return;
    }
    let mut pool: Vec<u32> = members.iter().map(|&i| canonical[i]).collect();
    pool.sort_unstable();
    place(&mut pool, 0, members, g, canonical, groups, current, out);
}

#[allow(clippy::too_many_arguments)]
fn place(
    pool: &mut Vec<u32>,
    slot: usize,
    members: &[usize],
    g: usize,
    canonical: &[u32],
    groups: &[Vec<usize>],
    current: &mut Vec<u32>,
    out: &mut BTreeSet<SwapProfile>,
) {
    if slot == members.len() {
        fill_group(g + 1, canonical, groups, current, out);
        return;
    }
    let mut last: Option<u32> = None;
    for idx in 0..pool.len() {
        let v = pool[idx];
        if last == Some(v) {
            continue;
        }
        last = Some(v);
        pool.remove(idx);
        current[members[slot]] = v;
        place(pool, slot + 1, members, g, canonical, groups, current, out);
        pool.insert(idx, v);
    }
}
