//! Command-line front end: scoring, winner determination, profile generation,
//! space analysis, and benchmarking.
//!
//! Exit codes: 0 success, 2 inconclusive (a budget ran out and only bounds are
//! known), 64 usage error, 65 malformed input, 70 size-limit refusal.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dodgson::analysis::{space_table, space_table_csv};
use dodgson::bench::{
    bench_csv, run_average_benchmark, run_range_sweep, sweep_csv, BenchConfig, BenchError,
    BenchMode, SweepConfig,
};
use dodgson::model::PreferenceProfile;
use dodgson::random::generate_impartial_culture;
use dodgson::scorers::{ScoreBudget, ScoreOutcome, ScorerKind};
use dodgson::tournament::{
    run_tournament, Standing, TournamentError, TournamentOutcome, TournamentStrategy,
};

const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_FORMAT: u8 = 65;
const EXIT_SIZE_LIMIT: u8 = 70;

#[derive(Parser)]
#[command(
    name = "dodgson",
    version,
    about = "Exact Dodgson scores, winners, and search benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Score one alternative of a profile file
    Score {
        /// Profile file: header "n m", then one ranking per line
        file: PathBuf,
        /// Name of the alternative to score
        #[arg(long)]
        candidate: String,
        #[arg(long, value_enum, default_value_t = ScorerArg::Icr)]
        scorer: ScorerArg,
        /// Give up after this many milliseconds and report a lower bound
        #[arg(long, value_name = "MS")]
        timeout: Option<u64>,
        /// Single-line JSON instead of human-readable text
        #[arg(long)]
        json: bool,
    },
    /// Determine the Dodgson winner(s) of a profile file
    Winner {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::ConcurrentOrdered)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = ScorerArg::Icr)]
        scorer: ScorerArg,
        /// Give up after this many milliseconds and report bounds
        #[arg(long, value_name = "MS")]
        timeout: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a uniformly random profile and print it
    Gen {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        alts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print swap-space sizes and worst-case check counts per alternative count
    Analyze {
        #[arg(long)]
        voters: u64,
        /// Rows for m = 1 up to this count
        #[arg(long)]
        alts_max: u64,
        /// Aligned table with % signs instead of CSV
        #[arg(long)]
        pretty: bool,
    },
    /// Time the scorers over seeded random profiles; prints CSV
    Bench {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        alts: usize,
        #[arg(long, default_value_t = 100)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
        mode: ModeArg,
        /// Comma-separated scorer list
        #[arg(long, value_delimiter = ',', default_value = "baseline,dfs,ucs,sc,icr")]
        scorers: Vec<ScorerArg>,
    },
    /// Find, per voter count, the largest solvable alternative count; prints CSV
    Sweep {
        /// Time budget for one full winner determination
        #[arg(long, value_name = "MS", default_value_t = 1000)]
        window: u64,
        /// Profiles averaged per voter count
        #[arg(long, default_value_t = 3)]
        reps: u64,
        /// Skip even voter counts
        #[arg(long)]
        odd_n: bool,
        #[arg(long, value_enum, default_value_t = ScorerArg::Icr)]
        scorer: ScorerArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::ConcurrentOrdered)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Stop raising the alternative count here even if still solvable
        #[arg(long, default_value_t = 256)]
        max_m: u64,
        /// Stop the sweep at this voter count
        #[arg(long, default_value_t = 99)]
        max_n: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScorerArg {
    Baseline,
    Dfs,
    Ucs,
    Sc,
    Icr,
}

impl From<ScorerArg> for ScorerKind {
    fn from(a: ScorerArg) -> Self {
        match a {
            ScorerArg::Baseline => ScorerKind::Baseline,
            ScorerArg::Dfs => ScorerKind::Dfs,
            ScorerArg::Ucs => ScorerKind::Ucs,
            ScorerArg::Sc => ScorerKind::Sc,
            ScorerArg::Icr => ScorerKind::Icr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Full,
    Ordered,
    Concurrent,
    ConcurrentOrdered,
}

impl From<StrategyArg> for TournamentStrategy {
    fn from(a: StrategyArg) -> Self {
        match a {
            StrategyArg::Full => TournamentStrategy::FullSequential,
            StrategyArg::Ordered => TournamentStrategy::OrderedSequential,
            StrategyArg::Concurrent => TournamentStrategy::Concurrent,
            StrategyArg::ConcurrentOrdered => TournamentStrategy::ConcurrentOrdered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Standard,
    Threaded,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    ExitCode::from(match cli.cmd {
        Cmd::Score {
            file,
            candidate,
            scorer,
            timeout,
            json,
        } => cmd_score(&file, &candidate, scorer.into(), timeout, json),
        Cmd::Winner {
            file,
            strategy,
            scorer,
            timeout,
            json,
        } => cmd_winner(&file, strategy, scorer.into(), timeout, json),
        Cmd::Gen { voters, alts, seed } => cmd_gen(voters, alts, seed),
        Cmd::Analyze {
            voters,
            alts_max,
            pretty,
        } => cmd_analyze(voters, alts_max, pretty),
        Cmd::Bench {
            voters,
            alts,
            runs,
            seed,
            mode,
            scorers,
        } => cmd_bench(voters, alts, runs, seed, mode, &scorers),
        Cmd::Sweep {
            window,
            reps,
            odd_n,
            scorer,
            strategy,
            seed,
            max_m,
            max_n,
        } => cmd_sweep(window, reps, odd_n, scorer.into(), strategy.into(), seed, max_m, max_n),
    })
}

fn load_profile(file: &PathBuf) -> Result<PreferenceProfile, u8> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", file.display());
        EXIT_FORMAT
    })?;
    PreferenceProfile::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", file.display());
        EXIT_FORMAT
    })
}

fn cmd_score(
    file: &PathBuf,
    candidate: &str,
    scorer: ScorerKind,
    timeout: Option<u64>,
    json: bool,
) -> u8 {
    let profile = match load_profile(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let Some(a) = profile.lookup(candidate) else {
        eprintln!(
            "error: no alternative named {candidate} in {}",
            file.display()
        );
        return EXIT_USAGE;
    };
    let budget = ScoreBudget {
        max_millis: timeout,
        score_cap: None,
    };
    let outcome = match dodgson::scorers::score(scorer, &profile, a, &budget) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_SIZE_LIMIT;
        }
    };
    match outcome {
        ScoreOutcome::Exact(r) => {
            if json {
                let solutions: Vec<Vec<u32>> = r
                    .minimal_solutions
                    .iter()
                    .map(|s| s.counts.clone())
                    .collect();
                println!(
                    "{}",
                    json!({
                        "candidate": candidate,
                        "scorer": scorer.to_string(),
                        "score": r.score,
                        "solutions": solutions,
                        "condorcet_checks": r.stats.condorcet_checks,
                        "nodes_generated": r.stats.nodes_generated,
                        "elapsed_ms": r.stats.elapsed_ms,
                    })
                );
            } else {
                println!("score: {}", r.score);
                println!("solutions: {}", r.minimal_solutions.len());
                for s in &r.minimal_solutions {
                    println!("  {s}");
                }
                println!("condorcet_checks: {}", r.stats.condorcet_checks);
                println!("nodes_generated: {}", r.stats.nodes_generated);
                println!("elapsed_ms: {}", r.stats.elapsed_ms);
            }
            0
        }
        ScoreOutcome::Abandoned(ab) => {
            let reason = match ab.reason {
                dodgson::scorers::AbandonReason::Timeout => "timeout",
                dodgson::scorers::AbandonReason::ScoreCap => "score-cap",
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "candidate": candidate,
                        "scorer": scorer.to_string(),
                        "lower_bound": ab.lower_bound,
                        "reason": reason,
                        "condorcet_checks": ab.stats.condorcet_checks,
                        "nodes_generated": ab.stats.nodes_generated,
                        "elapsed_ms": ab.stats.elapsed_ms,
                    })
                );
            } else {
                println!("lower bound: {} ({reason})", ab.lower_bound);
                println!("condorcet_checks: {}", ab.stats.condorcet_checks);
                println!("nodes_generated: {}", ab.stats.nodes_generated);
                println!("elapsed_ms: {}", ab.stats.elapsed_ms);
            }
            EXIT_INCONCLUSIVE
        }
    }
}

fn strategy_token(strategy: TournamentStrategy) -> &'static str {
    match strategy {
        TournamentStrategy::FullSequential => "full",
        TournamentStrategy::OrderedSequential => "ordered",
        TournamentStrategy::Concurrent => "concurrent",
        TournamentStrategy::ConcurrentOrdered => "concurrent-ordered",
    }
}

fn cmd_winner(
    file: &PathBuf,
    strategy: StrategyArg,
    scorer: ScorerKind,
    timeout: Option<u64>,
    json: bool,
) -> u8 {
    let profile = match load_profile(file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let budget = ScoreBudget {
        max_millis: timeout,
        score_cap: None,
    };
    let outcome = match run_tournament(&profile, scorer, strategy.into(), &budget) {
        Ok(o) => o,
        Err(e @ TournamentError::ScorerNotPrunable { .. }) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(TournamentError::SizeLimit(e)) => {
            eprintln!("error: {e}");
            return EXIT_SIZE_LIMIT;
        }
    };
    if json {
        println!("{}", winner_json(&profile, &outcome));
    } else {
        print!("{}", winner_text(&profile, &outcome));
    }
    if outcome.conclusive {
        0
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn winner_text(profile: &PreferenceProfile, outcome: &TournamentOutcome) -> String {
    let mut out = String::new();
    if outcome.conclusive {
        let names: Vec<&str> = outcome.winners.iter().map(|&a| profile.name(a)).collect();
        let label = if names.len() == 1 { "winner" } else { "winners" };
        let score = outcome.winning_score.expect("conclusive outcome has a score");
        let _ = writeln!(out, "{label}: {} (score {score})", names.join(", "));
    } else {
        let floor = outcome.score_floor().unwrap_or(0);
        let _ = writeln!(out, "inconclusive: no alternative better than {floor}");
    }
    for (&a, standing) in &outcome.standings {
        let line = match standing {
            Standing::Exact { score, solutions } => {
                format!("exact {score} (solutions: {})", solutions.len())
            }
            Standing::PrunedAt { round } => format!("pruned at {round}"),
            Standing::LowerBound { bound } => format!("lower bound {bound}"),
        };
        let _ = writeln!(out, "{}: {line}", profile.name(a));
    }
    out
}

fn winner_json(profile: &PreferenceProfile, outcome: &TournamentOutcome) -> String {
    let winners: Vec<&str> = outcome.winners.iter().map(|&a| profile.name(a)).collect();
    let standings: Vec<serde_json::Value> = outcome
        .standings
        .iter()
        .map(|(&a, standing)| {
            let stats = &outcome.stats[&a];
            let mut v = match standing {
                Standing::Exact { score, solutions } => json!({
                    "status": "exact",
                    "score": score,
                    "solutions": solutions.len(),
                }),
                Standing::PrunedAt { round } => json!({
                    "status": "pruned",
                    "round": round,
                }),
                Standing::LowerBound { bound } => json!({
                    "status": "lower-bound",
                    "bound": bound,
                }),
            };
            let obj = v.as_object_mut().expect("standing is an object");
            obj.insert("name".into(), json!(profile.name(a)));
            obj.insert("condorcet_checks".into(), json!(stats.condorcet_checks));
            obj.insert("nodes_generated".into(), json!(stats.nodes_generated));
            v
        })
        .collect();
    json!({
        "winners": winners,
        "winning_score": outcome.winning_score,
        "conclusive": outcome.conclusive,
        "score_floor": outcome.score_floor(),
        "scorer": outcome.scorer.to_string(),
        "strategy": strategy_token(outcome.strategy),
        "standings": standings,
        "elapsed_ms": outcome.elapsed_ms,
    })
    .to_string()
}

fn cmd_gen(voters: usize, alts: usize, seed: u64) -> u8 {
    match generate_impartial_culture(voters, alts, seed) {
        Ok(profile) => {
            print!("{}", profile.to_text());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_analyze(voters: u64, alts_max: u64, pretty: bool) -> u8 {
    if voters == 0 || alts_max == 0 {
        eprintln!("error: --voters and --alts-max must be at least 1");
        return EXIT_USAGE;
    }
    let rows = space_table(voters, alts_max);
    if pretty {
        println!("{:>4} {:>24} {:>16} {:>8}", "m", "phi", "c", "ratio");
        for r in &rows {
            println!(
                "{:>4} {:>24} {:>16} {:>7}%",
                r.m,
                r.phi.to_string(),
                r.c.to_string(),
                r.ratio_display()
            );
        }
    } else {
        print!("{}", space_table_csv(&rows));
    }
    0
}

fn cmd_bench(
    voters: usize,
    alts: usize,
    runs: u64,
    seed: u64,
    mode: ModeArg,
    scorers: &[ScorerArg],
) -> u8 {
    if voters == 0 || alts == 0 || runs == 0 || scorers.is_empty() {
        eprintln!("error: --voters, --alts, --runs, and --scorers must be non-empty");
        return EXIT_USAGE;
    }
    let cfg = BenchConfig {
        n: voters,
        m: alts,
        runs,
        seed_base: seed,
        scorers: scorers.iter().map(|&s| s.into()).collect(),
        mode: match mode {
            ModeArg::Standard => BenchMode::Standard,
            ModeArg::Threaded => BenchMode::Threaded,
        },
    };
    match run_average_benchmark(&cfg) {
        Ok(rows) => {
            print!("{}", bench_csv(&rows));
            0
        }
        Err(BenchError::Generate(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(BenchError::SizeLimit(e)) => {
            eprintln!("error: {e}");
            EXIT_SIZE_LIMIT
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    window: u64,
    reps: u64,
    odd_n: bool,
    scorer: ScorerKind,
    strategy: TournamentStrategy,
    seed: u64,
    max_m: u64,
    max_n: u64,
) -> u8 {
    if window == 0 || reps == 0 || max_m < 2 || max_n == 0 {
        eprintln!("error: --window, --reps, --max-m, and --max-n must be positive");
        return EXIT_USAGE;
    }
    let cfg = SweepConfig {
        window_millis: window,
        repetitions: reps,
        seed_base: seed,
        scorer,
        strategy,
        odd_n_only: odd_n,
        max_m,
        max_n,
    };
    match run_range_sweep(&cfg) {
        Ok(points) => {
            print!("{}", sweep_csv(&points, &cfg));
            0
        }
        Err(e @ TournamentError::ScorerNotPrunable { .. }) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(TournamentError::SizeLimit(e)) => {
            eprintln!("error: {e}");
            EXIT_SIZE_LIMIT
        }
    }
}
