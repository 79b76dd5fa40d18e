//! Seeded impartial-culture profile generation.
//!
//! Benchmarks must be reproducible across machines and languages, so the
//! generator uses a fixed, self-contained 64-bit mixing sequence rather than a
//! platform RNG. The same `(n, m, seed)` triple always yields the bit-identical
//! profile.

use thiserror::Error;

use crate::model::PreferenceProfile;

/// SplitMix-style 64-bit generator with a pinned constant sequence.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("voter count must be at least 1")]
    ZeroVoters,
    #[error("alternative count must be at least 1")]
    ZeroAlternatives,
}

/// Draws `n` independent uniformly random rankings over alternatives named
/// `A1..Am`. Each ballot is a Fisher-Yates shuffle of the identity order,
/// indices drawn as `next_u64() mod (i + 1)` with `i` running from `m - 1`
/// down to 1, all from one generator stream.
pub fn generate_impartial_culture(
    n: usize,
    m: usize,
    seed: u64,
) -> Result<PreferenceProfile, GenerateError> {
    if n == 0 {
        return Err(GenerateError::ZeroVoters);
    }
    if m == 0 {
        return Err(GenerateError::ZeroAlternatives);
    }
    let names: Vec<String> = (1..=m).map(|i| format!("A{i}")).collect();
    let mut rng = SplitMix64::new(seed);
    let mut rankings = Vec::with_capacity(n);
    for _ in 0..n {
        let mut ranking: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            ranking.swap(i, j);
        }
        rankings.push(ranking);
    }
    Ok(PreferenceProfile::new(names, rankings).expect("shuffled rankings are permutations"))
}
