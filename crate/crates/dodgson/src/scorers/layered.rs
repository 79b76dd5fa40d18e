//! Layer-driven scorers: grow the score level by level and stop at the first
//! level that contains a solution. Both finish the winning layer completely,
//! so they report every minimal solution.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::model::{CandidateIndex, PositionTable, PreferenceProfile, SwapProfile};
use crate::permutor::{layer_size, CompositionCursor};

use super::context::CheckContext;
use super::{past, LayerResult, SizeLimitError};

/// Score-cached search: materializes layer `k` in full, then scans it. The
/// cache makes the scan trivially restartable but costs one allocation per
/// entry, so each layer is counted against the entry cap before it is built.
pub(crate) struct ScSearch<'a> {
    ctx: CheckContext<'a>,
    bounds: PositionTable,
    entry_cap: u64,
}

impl<'a> ScSearch<'a> {
    pub fn new(profile: &'a PreferenceProfile, candidate: CandidateIndex, entry_cap: u64) -> Self {
        let ctx = CheckContext::new(profile, candidate);
        let bounds = PositionTable {
            positions: ctx.positions().to_vec(),
        };
        ScSearch {
            ctx,
            bounds,
            entry_cap,
        }
    }

    pub fn raw_counters(&self) -> (u64, u64) {
        (self.ctx.checks, self.ctx.nodes)
    }

    pub fn run_layer(
        &mut self,
        k: u64,
        deadline: Option<Instant>,
    ) -> Result<LayerResult, SizeLimitError> {
        if past(deadline) {
            return Ok(LayerResult::TimedOut { lower_bound: k });
        }
        let required = layer_size(k, &self.bounds);
        if required > BigUint::from(self.entry_cap) {
            return Err(SizeLimitError::Layer {
                layer: k,
                required,
                cap: self.entry_cap,
            });
        }
        let mut layer: Vec<SwapProfile> =
            Vec::with_capacity(required.to_usize().unwrap_or_default());
        let mut cursor = CompositionCursor::new(k, &self.bounds);
        while let Some(v) = cursor.advance() {
            layer.push(SwapProfile::new(v.to_vec()));
            self.ctx.nodes += 1;
            if self.ctx.nodes.is_multiple_of(4096) && past(deadline) {
                return Ok(LayerResult::TimedOut { lower_bound: k });
            }
        }

        let mut solutions = BTreeSet::new();
        for sp in &layer {
            if self.ctx.checks % 4096 == 4095 && past(deadline) {
                return Ok(LayerResult::TimedOut { lower_bound: k });
            }
            if self.ctx.is_winner(&sp.counts) {
                solutions.insert(sp.clone());
            }
        }
        if solutions.is_empty() {
            Ok(LayerResult::Continue)
        } else {
            Ok(LayerResult::Found { score: k, solutions })
        }
    }
}

/// Iterative cost raise: streams layer `k` straight from the cursor, checking
/// entries as they appear. Never holds a layer, so memory stays proportional
/// to the voter count no matter how large the layers grow.
pub(crate) struct IcrSearch<'a> {
    ctx: CheckContext<'a>,
    bounds: PositionTable,
}

impl<'a> IcrSearch<'a> {
    pub fn new(profile: &'a PreferenceProfile, candidate: CandidateIndex) -> Self {
        let ctx = CheckContext::new(profile, candidate);
        let bounds = PositionTable {
            positions: ctx.positions().to_vec(),
        };
        IcrSearch { ctx, bounds }
    }

    pub fn raw_counters(&self) -> (u64, u64) {
        (self.ctx.checks, self.ctx.nodes)
    }

    pub fn run_layer(&mut self, k: u64, deadline: Option<Instant>) -> LayerResult {
        if past(deadline) {
            return LayerResult::TimedOut { lower_bound: k };
        }
        let mut solutions = BTreeSet::new();
        let mut cursor = CompositionCursor::new(k, &self.bounds);
        while let Some(v) = cursor.advance() {
            self.ctx.nodes += 1;
            if self.ctx.nodes.is_multiple_of(4096) && past(deadline) {
                return LayerResult::TimedOut { lower_bound: k };
            }
            if self.ctx.is_winner(v) {
                solutions.insert(SwapProfile::new(v.to_vec()));
            }
        }
        if solutions.is_empty() {
            LayerResult::Continue
        } else {
            LayerResult::Found { score: k, solutions }
        }
    }
}
