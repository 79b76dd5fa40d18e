//! Closed-form size and work bounds for the bounded swap spaces.
//!
//! For a candidate ranked at 1-based position `i` on every one of `n` ballots,
//! the swap space holds `i^n` vectors, so space and work bounds for whole
//! profiles reduce to power sums over the candidate positions. The functions
//! here evaluate those sums exactly in big integers; nothing is sampled or
//! approximated.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Total swap-space size over all candidates of a unanimous `n`-voter profile:
/// the sum of `i^n` for `i` in `1..=m`. This is the number of vectors an
/// exhaustive scorer materializes to score every candidate, and the worst case
/// over all profiles with these dimensions.
pub fn phi_basic(n: u64, m: u64) -> BigUint {
    power_sum(m, n)
}

/// Worst-case total number of Condorcet checks for a score-ordered search
/// with symmetry folding and a floor gate: the sum of `i^⌈n/2⌉` for `i` in
/// `1..=m`. Compare with [`phi_basic`] to see how much of the space a
/// score-ordered search can skip.
pub fn c_worst(n: u64, m: u64) -> BigUint {
    power_sum(m, n.div_ceil(2))
}

fn power_sum(m: u64, exponent: u64) -> BigUint {
    let mut total = BigUint::zero();
    for i in 1..=m {
        total += BigUint::from(i).pow(exponent as u32);
    }
    total
}

/// Ceiling of `m · (m!)^((n + m) / m)`: the factorial-family upper bound on
/// the total swap-space size. The exponent is rarely integral, so the value
/// is computed exactly as the `m`-th root ceiling of `m^m · (m!)^(n+m)`.
pub fn phi_base_case_bound(n: u64, m: u64) -> BigUint {
    assert!(m >= 1, "at least one alternative");
    let fact = factorial(m);
    let radicand = BigUint::from(m).pow(m as u32) * fact.pow((n + m) as u32);
    let root = radicand.nth_root(m as u32);
    if root.pow(m as u32) == radicand {
        root
    } else {
        root + BigUint::one()
    }
}

fn factorial(m: u64) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=m {
        f *= BigUint::from(i);
    }
    f
}

/// How large a score the best-placed alternative can be forced to have:
/// `⌊(n − m) · T / m⌋` with `T` the triangular number of `⌊n/2⌋`, and zero
/// whenever there are at least as many alternatives as voters.
pub fn best_case_score_bound(n: u64, m: u64) -> u64 {
    assert!(m >= 1, "at least one alternative");
    if n <= m {
        return 0;
    }
    let half = n / 2;
    let triangular = half * (half + 1) / 2;
    (n - m) * triangular / m
}

/// One row of the space table: totals for profiles with `m` alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceEstimate {
    pub m: u64,
    /// Exhaustive total, [`phi_basic`].
    pub phi: BigUint,
    /// Score-ordered worst-case checks, [`c_worst`].
    pub c: BigUint,
    /// `c / phi` as a percentage in tenths, rounded half up: 273 means 27.3%.
    pub ratio_tenths: u64,
}

impl SpaceEstimate {
    pub fn new(n: u64, m: u64) -> Self {
        let phi = phi_basic(n, m);
        let c = c_worst(n, m);
        // Percent with one decimal, half-up: floor((2000c + phi) / (2 phi)).
        let ratio_tenths = ((BigUint::from(2000u32) * &c + &phi)
            / (BigUint::from(2u32) * &phi))
            .to_u64()
            .expect("ratio is at most 1000 tenths");
        SpaceEstimate {
            m,
            phi,
            c,
            ratio_tenths,
        }
    }

    /// The ratio as printed: "27.3".
    pub fn ratio_display(&self) -> String {
        format!("{}.{}", self.ratio_tenths / 10, self.ratio_tenths % 10)
    }
}

/// Space table for `n` voters, one row per alternative count up to `m_max`.
pub fn space_table(n: u64, m_max: u64) -> Vec<SpaceEstimate> {
    (1..=m_max).map(|m| SpaceEstimate::new(n, m)).collect()
}

pub const SPACE_CSV_HEADER: &str = "m,phi,c,ratio_percent";

/// CSV rows matching [`SPACE_CSV_HEADER`].
pub fn space_table_csv(rows: &[SpaceEstimate]) -> String {
    let mut out = String::from(SPACE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.m, r.phi, r.c, r.ratio_display()));
    }
    out
}
