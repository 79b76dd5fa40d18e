//! Timed comparisons of the scorers on random profiles.
//!
//! A benchmark cell scores every alternative of the same generated profiles
//! with each scorer, so the numbers are directly comparable. Work counters are
//! pure functions of the profile, which keeps `avg_calls` reproducible down to
//! the last bit; only the millisecond columns vary between machines.

use std::fmt;
use std::time::Instant;

use thiserror::Error;

use crate::model::PreferenceProfile;
use crate::random::{generate_impartial_culture, GenerateError};
use crate::scorers::{score_with, ScoreBudget, ScorerKind, ScorerOptions, SizeLimitError};
use crate::tournament::{run_tournament_with, TournamentError, TournamentStrategy};

/// How a scorer is driven during a benchmark run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMode {
    /// Each candidate is scored to completion on one thread.
    Standard,
    /// Candidates run as a concurrent pruning tournament. Only meaningful for
    /// the score-ordered scorers; the exhaustive ones cannot prune and run
    /// exactly as in [`BenchMode::Standard`].
    Threaded,
}

impl fmt::Display for BenchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchMode::Standard => "standard",
            BenchMode::Threaded => "threaded",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n: usize,
    pub m: usize,
    /// Profiles generated and averaged over; seeds are `seed_base..seed_base+runs`.
    pub runs: u64,
    pub seed_base: u64,
    pub scorers: Vec<ScorerKind>,
    pub mode: BenchMode,
}

/// Aggregated timings for one scorer over all benchmark runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub scorer: ScorerKind,
    pub mode: BenchMode,
    pub n: usize,
    pub m: usize,
    pub runs: u64,
    pub min_ms: f64,
    pub median_ms: f64,
    pub max_ms: f64,
    pub mean_ms: f64,
    pub sigma_ms: f64,
    /// Mean Condorcet checks per run, totalled over all candidates.
    pub avg_calls: f64,
    pub seed_base: u64,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    SizeLimit(#[from] SizeLimitError),
}

impl From<TournamentError> for BenchError {
    fn from(e: TournamentError) -> Self {
        match e {
            TournamentError::SizeLimit(s) => BenchError::SizeLimit(s),
            TournamentError::ScorerNotPrunable { .. } => {
                unreachable!("benchmarks only start tournaments for pruning scorers")
            }
        }
    }
}

/// Five-number summary of a sample, with the population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub mean: f64,
    pub sigma: f64,
}

impl Summary {
    pub fn of(samples: &[f64]) -> Self {
        assert!(!samples.is_empty(), "summary of an empty sample");
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let k = sorted.len();
        let median = if k % 2 == 1 {
            sorted[k / 2]
        } else {
            (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
        };
        let mean = sorted.iter().sum::<f64>() / k as f64;
        let var = sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / k as f64;
        Summary {
            min: sorted[0],
            median,
            max: sorted[k - 1],
            mean,
            sigma: var.sqrt(),
        }
    }
}

/// Times each configured scorer over the same generated profiles and returns
/// one aggregated row per scorer, in the configured order.
pub fn run_average_benchmark(cfg: &BenchConfig) -> Result<Vec<RunStats>, BenchError> {
    assert!(cfg.runs >= 1, "at least one run");
    let profiles: Vec<PreferenceProfile> = (0..cfg.runs)
        .map(|r| generate_impartial_culture(cfg.n, cfg.m, cfg.seed_base + r))
        .collect::<Result<_, _>>()?;
    let options = ScorerOptions::default();

    let mut rows = Vec::with_capacity(cfg.scorers.len());
    for &scorer in &cfg.scorers {
        let mut millis = Vec::with_capacity(profiles.len());
        let mut calls = Vec::with_capacity(profiles.len());
        for profile in &profiles {
            let started = Instant::now();
            let checks = if cfg.mode == BenchMode::Threaded && scorer.supports_pruning() {
                let outcome = run_tournament_with(
                    profile,
                    scorer,
                    TournamentStrategy::ConcurrentOrdered,
                    &ScoreBudget::UNLIMITED,
                    &options,
                )?;
                outcome.total_checks()
            } else {
                let mut total = 0u64;
                for a in profile.candidates() {
                    let outcome =
                        score_with(scorer, profile, a, &ScoreBudget::UNLIMITED, &options)?;
                    total += outcome.stats().condorcet_checks;
                }
                total
            };
            millis.push(started.elapsed().as_secs_f64() * 1000.0);
            calls.push(checks as f64);
        }
        let time = Summary::of(&millis);
        let work = Summary::of(&calls);
        rows.push(RunStats {
            scorer,
            mode: cfg.mode,
            n: cfg.n,
            m: cfg.m,
            runs: cfg.runs,
            min_ms: time.min,
            median_ms: time.median,
            max_ms: time.max,
            mean_ms: time.mean,
            sigma_ms: time.sigma,
            avg_calls: work.mean,
            seed_base: cfg.seed_base,
        });
    }
    Ok(rows)
}

pub const BENCH_CSV_HEADER: &str =
    "scorer,mode,n,m,runs,min_ms,median_ms,max_ms,mean_ms,sigma_ms,avg_calls,seed_base";

/// CSV rows matching [`BENCH_CSV_HEADER`].
pub fn bench_csv(rows: &[RunStats]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{:.1},{}\n",
            r.scorer,
            r.mode,
            r.n,
            r.m,
            r.runs,
            r.min_ms,
            r.median_ms,
            r.max_ms,
            r.mean_ms,
            r.sigma_ms,
            r.avg_calls,
            r.seed_base
        ));
    }
    out
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Wall-clock budget for one full winner determination.
    pub window_millis: u64,
    /// Profiles tried per cell; the reported ceiling is their average.
    pub repetitions: u64,
    pub seed_base: u64,
    /// Driven through a tournament, so `FullSequential` paired with an
    /// exhaustive scorer sweeps the plain all-candidates solve.
    pub scorer: ScorerKind,
    pub strategy: TournamentStrategy,
    /// Skip even voter counts, where majorities tie easily.
    pub odd_n_only: bool,
    /// Hard stops so a sweep always terminates promptly.
    pub max_m: u64,
    pub max_n: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            window_millis: 1000,
            repetitions: 3,
            seed_base: 1,
            scorer: ScorerKind::Icr,
            strategy: TournamentStrategy::ConcurrentOrdered,
            odd_n_only: true,
            max_m: 256,
            max_n: 99,
        }
    }
}

/// Largest solvable alternative count at one voter count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub n: u64,
    /// Average over repetitions of the largest `m` whose winner determination
    /// stayed conclusive within the window.
    pub m_max: f64,
}

/// Walks voter counts upward from one and reports, for each, how many
/// alternatives a winner determination can handle inside the time window.
/// Stops when the ceiling falls to four alternatives or the voter limit is
/// reached.
pub fn run_range_sweep(cfg: &SweepConfig) -> Result<Vec<SweepPoint>, TournamentError> {
    let mut points = Vec::new();
    let mut n = 1u64;
    while n <= cfg.max_n {
        let mut total = 0u64;
        for rep in 0..cfg.repetitions {
            total += sweep_ceiling(cfg, n, rep)?;
        }
        let m_max = total as f64 / cfg.repetitions as f64;
        points.push(SweepPoint { n, m_max });
        if m_max <= 4.0 {
            break;
        }
        n += if cfg.odd_n_only { 2 } else { 1 };
    }
    Ok(points)
}

/// Largest `m` (up to the configured cap) for which one generated profile is
/// solved conclusively within the window.
fn sweep_ceiling(cfg: &SweepConfig, n: u64, rep: u64) -> Result<u64, TournamentError> {
    let budget = ScoreBudget {
        max_millis: Some(cfg.window_millis),
        score_cap: None,
    };
    let mut best = 1u64;
    for m in 2..=cfg.max_m {
        let seed = cfg.seed_base + n * 1_000_000 + m * 1_000 + rep;
        let profile = generate_impartial_culture(n as usize, m as usize, seed)
            .expect("sweep dimensions are positive");
        let outcome = run_tournament_with(
            &profile,
            cfg.scorer,
            cfg.strategy,
            &budget,
            &ScorerOptions::default(),
        )?;
        if !outcome.conclusive {
            break;
        }
        best = m;
    }
    Ok(best)
}

pub const SWEEP_CSV_HEADER: &str = "n,m_max,window_ms,repetitions";

/// CSV rows matching [`SWEEP_CSV_HEADER`].
pub fn sweep_csv(points: &[SweepPoint], cfg: &SweepConfig) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{:.1},{},{}\n",
            p.n, p.m_max, cfg.window_millis, cfg.repetitions
        ));
    }
    out
}
