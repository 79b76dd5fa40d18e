//! Enumeration of bounded integer compositions.
//!
//! A score layer `k` for a candidate is the set of swap profiles whose counts
//! sum to exactly `k`, with voter `i` capped at the candidate's position in
//! ballot `i`. The cursor walks one layer in ascending lexicographic order
//! (voter 0 most significant) without materializing it, and [`layer_size`]
//! counts a layer by dynamic programming so callers can budget memory before
//! asking for the entries.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::model::{PositionTable, SwapProfile};

/// Iterative cursor over all vectors `v` with `sum(v) = target` and
/// `v[i] <= bounds[i]`. Emits each vector exactly once; yields nothing when
/// the target exceeds the summed bounds.
#[derive(Debug, Clone)]
pub struct CompositionCursor {
    bounds: Vec<u32>,
    current: Vec<u32>,
    started: bool,
    exhausted: bool,
}

impl CompositionCursor {
    pub fn new(target: u64, bounds: &PositionTable) -> Self {
        let bounds = bounds.positions.clone();
        let mut cursor = CompositionCursor {
            current: vec![0; bounds.len()],
            exhausted: false,
            started: false,
            bounds,
        };
        // Lexicographically smallest composition: pack the total as far to the
        // right as the bounds allow.
        if !cursor.pack_right(0, target) {
            cursor.exhausted = true;
        }
        cursor
    }

    /// Distributes `total` over positions `from..`, greedily filling from the
    /// right. Returns false when the suffix bounds cannot absorb the total.
    fn pack_right(&mut self, from: usize, total: u64) -> bool {
        let mut remaining = total;
        for i in (from..self.bounds.len()).rev() {
            let take = remaining.min(u64::from(self.bounds[i]));
            self.current[i] = take as u32;
            remaining -= take;
        }
        remaining == 0
    }

    /// Advances to the next composition and returns a borrowed view of it, or
    /// `None` once the layer is exhausted. The borrow avoids an allocation per
    /// step in scanning loops; use the `Iterator` impl to get owned values.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        // Find the rightmost position that can take one unit from its suffix,
        // increment it, and lay the rest of the suffix out minimally.
        let n = self.bounds.len();
        let mut suffix: u64 = 0;
        for i in (0..n.saturating_sub(1)).rev() {
            suffix += u64::from(self.current[i + 1]);
            if suffix > 0 && self.current[i] < self.bounds[i] {
                self.current[i] += 1;
                let packed = self.pack_right(i + 1, suffix - 1);
                debug_assert!(packed, "suffix shrank, repacking cannot fail");
                return Some(&self.current);
            }
        }
        self.exhausted = true;
        None
    }
}

impl Iterator for CompositionCursor {
    type Item = SwapProfile;

    fn next(&mut self) -> Option<SwapProfile> {
        self.advance().map(|v| SwapProfile::new(v.to_vec()))
    }
}

/// Exact number of compositions in layer `target`, by dynamic programming over
/// voters. Arbitrary precision: full spaces grow like `m^n`.
pub fn layer_size(target: u64, bounds: &PositionTable) -> BigUint {
    let cap = bounds.sum();
    if target > cap {
        return BigUint::zero();
    }
    let t = target as usize;
    let mut dp: Vec<BigUint> = vec![BigUint::zero(); t + 1];
    dp[0] = BigUint::one();
    for &b in &bounds.positions {
        let b = b as usize;
        // Prefix sums turn the bounded convolution into O(target) per voter.
        let mut prefix: Vec<BigUint> = Vec::with_capacity(t + 2);
        prefix.push(BigUint::zero());
        for v in &dp {
            let last = prefix.last().unwrap().clone();
            prefix.push(last + v);
        }
        for j in (0..=t).rev() {
            let lo = j.saturating_sub(b);
            dp[j] = &prefix[j + 1] - &prefix[lo];
        }
    }
    dp[t].clone()
}

/// Total size of the bounded swap space: the product of `bounds[i] + 1`.
pub fn space_size(bounds: &PositionTable) -> BigUint {
    bounds
        .positions
        .iter()
        .fold(BigUint::one(), |acc, &b| acc * BigUint::from(b + 1))
}
