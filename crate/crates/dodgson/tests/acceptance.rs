//! Acceptance gate: one test per criterion, each printing a PASS or FAIL line.
//!
//! These tests pin the externally promised behavior: the reference table, the
//! agreement of every scorer with brute force, the worst-case check bounds,
//! strategy equivalence, the pruning work ratio, the sweep ordering, and
//! bit-level determinism. Sizes are chosen to finish on a desk machine while
//! keeping the stated coverage.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;

use dodgson::analysis::c_worst;
use dodgson::bench::{run_average_benchmark, run_range_sweep, BenchConfig, BenchMode, SweepConfig};
use dodgson::model::{CandidateIndex, PreferenceProfile};
use dodgson::random::generate_impartial_culture;
use dodgson::scorers::{score, ScoreBudget, ScorerKind, ALL_SCORERS};
use dodgson::tournament::{run_tournament, TournamentStrategy, ALL_STRATEGIES};

use common::{identical_profile, oracle_condorcet_winner, oracle_score};

fn report(name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("acceptance {name}: PASS");
    } else {
        println!("acceptance {name}: FAIL");
        for f in failures.iter().take(10) {
            println!("  {f}");
        }
        if failures.len() > 10 {
            println!("  ... and {} more", failures.len() - 10);
        }
        panic!("acceptance criterion {name} failed ({} issue(s))", failures.len());
    }
}

fn exact(kind: ScorerKind, pp: &PreferenceProfile, a: CandidateIndex) -> dodgson::ScoreResult {
    score(kind, pp, a, &ScoreBudget::UNLIMITED)
        .unwrap()
        .exact()
        .cloned()
        .expect("unbudgeted runs complete")
}

fn counts_of(r: &dodgson::ScoreResult) -> BTreeSet<Vec<u32>> {
    r.minimal_solutions.iter().map(|s| s.counts.clone()).collect()
}

#[test]
fn criterion_1_reference_space_table() {
    let started = Instant::now();
    let expected = "m,phi,c,ratio_percent\n\
                    1,1,1,100.0\n\
                    2,33,9,27.3\n\
                    3,276,36,13.0\n\
                    4,1300,100,7.7\n\
                    5,4425,225,5.1\n\
                    6,12201,441,3.6\n\
                    7,29008,784,2.7\n\
                    8,61776,1296,2.1\n\
                    9,120825,2025,1.7\n\
                    10,220825,3025,1.4\n";
    let out = Command::new(env!("CARGO_BIN_EXE_dodgson"))
        .args(["analyze", "--voters", "5", "--alts-max", "10"])
        .output()
        .expect("binary runs");
    let mut failures = Vec::new();
    if !out.status.success() {
        failures.push(format!("analyze exited with {:?}", out.status.code()));
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    if stdout != expected {
        failures.push(format!("table mismatch, got:\n{stdout}"));
    }
    if started.elapsed().as_secs() >= 1 {
        failures.push("analyze took one second or more".into());
    }
    report("1 (reference space table)", failures);
}

/// The brute-force comparison corpus: identical-ballot worst cases on a full
/// small grid, plus at least 500 seeded random profiles.
fn comparison_corpus() -> Vec<(String, PreferenceProfile)> {
    let mut profiles = Vec::new();
    for n in 1..=5 {
        for m in 2..=5 {
            profiles.push((format!("identical {n}x{m}"), identical_profile(n, m)));
        }
    }
    let mut combo = 0u64;
    for n in [1usize, 3, 5, 7] {
        for m in 2usize..=5 {
            for s in 0..32u64 {
                let seed = combo * 1000 + s;
                profiles.push((
                    format!("random n={n} m={m} seed={seed}"),
                    generate_impartial_culture(n, m, seed).unwrap(),
                ));
            }
            combo += 1;
        }
    }
    profiles
}

#[test]
fn criterion_2_scorers_match_brute_force() {
    let started = Instant::now();
    let profiles = comparison_corpus();
    let seeded = profiles.iter().filter(|(l, _)| l.starts_with("random")).count();
    assert!(seeded >= 500, "corpus carries {seeded} seeded profiles");

    let mut failures = Vec::new();
    for (label, pp) in &profiles {
        for a in pp.candidates() {
            let want = oracle_score(pp, a);
            for kind in ALL_SCORERS {
                let got = exact(kind, pp, a);
                if got.score != want.score || counts_of(&got) != want.solutions {
                    failures.push(format!(
                        "{label}, candidate {}, {kind}: score {} with {} solutions vs oracle {} with {}",
                        pp.name(a),
                        got.score,
                        got.minimal_solutions.len(),
                        want.score,
                        want.solutions.len()
                    ));
                }
            }
        }
    }
    if started.elapsed().as_secs() >= 300 {
        failures.push("comparison exceeded five minutes".into());
    }
    report("2 (scorers match brute force)", failures);
}

#[test]
fn criterion_3_condorcet_winners_score_zero_and_win() {
    let mut failures = Vec::new();
    let mut with_winner = 0usize;
    let mut profiles: Vec<PreferenceProfile> = Vec::new();
    for n in 1..=5 {
        for m in 2..=5 {
            profiles.push(identical_profile(n, m));
        }
    }
    for n in [1usize, 3, 5, 7] {
        for m in 2usize..=5 {
            for s in 0..8u64 {
                profiles.push(generate_impartial_culture(n, m, 31_000 + s * 101 + (n * m) as u64).unwrap());
            }
        }
    }
    for pp in &profiles {
        let Some(cw) = oracle_condorcet_winner(pp) else {
            continue;
        };
        with_winner += 1;
        for kind in ALL_SCORERS {
            let r = exact(kind, pp, cw);
            if r.score != 0 {
                failures.push(format!("{kind} gave the pairwise champion score {}", r.score));
            }
        }
        for strategy in ALL_STRATEGIES {
            let out = run_tournament(pp, ScorerKind::Icr, strategy, &ScoreBudget::UNLIMITED)
                .unwrap();
            if !out.conclusive || out.winners != vec![cw] || out.winning_score != Some(0) {
                failures.push(format!(
                    "{strategy} returned {:?} instead of the unique pairwise champion",
                    out.winners
                ));
            }
        }
    }
    assert!(with_winner >= 30, "corpus has {with_winner} decisive profiles");
    report("3 (pairwise champions score zero and win)", failures);
}

#[test]
fn criterion_4_worst_case_check_bounds() {
    let mut failures = Vec::new();
    for n in [3usize, 5, 7] {
        let pp = identical_profile(n, 5);
        let mut total = 0u64;
        for (ix, a) in pp.candidates().enumerate() {
            let r = exact(ScorerKind::Ucs, &pp, a);
            let bound = ((ix + 1) as u64).pow(n.div_ceil(2) as u32);
            if r.stats.condorcet_checks > bound {
                failures.push(format!(
                    "n={n}: candidate at unanimous rank {} checked {} > {bound}",
                    ix + 1,
                    r.stats.condorcet_checks
                ));
            }
            total += r.stats.condorcet_checks;
        }
        let cap = c_worst(n as u64, 5);
        if BigUint::from(total) > cap {
            failures.push(format!("n={n}: total checks {total} exceed {cap}"));
        }
    }
    report("4 (worst-case check bounds)", failures);
}

#[test]
fn criterion_5_strategies_agree_and_scheduling_is_invisible() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut profiles = Vec::new();
    for n in [1usize, 3, 5, 7] {
        for m in 2usize..=5 {
            for s in 0..19u64 {
                profiles.push(generate_impartial_culture(n, m, 50_000 + s * 17 + (n * 100 + m) as u64).unwrap());
            }
        }
    }
    assert!(profiles.len() >= 300);
    for pp in &profiles {
        let reference =
            run_tournament(pp, ScorerKind::Icr, TournamentStrategy::FullSequential, &ScoreBudget::UNLIMITED)
                .unwrap();
        for strategy in ALL_STRATEGIES {
            let out = run_tournament(pp, ScorerKind::Icr, strategy, &ScoreBudget::UNLIMITED).unwrap();
            if out.winners != reference.winners || out.winning_score != reference.winning_score {
                failures.push(format!(
                    "{strategy} disagrees: {:?} vs {:?}",
                    out.winners, reference.winners
                ));
            }
        }
        let first =
            run_tournament(pp, ScorerKind::Icr, TournamentStrategy::Concurrent, &ScoreBudget::UNLIMITED)
                .unwrap();
        let work = |o: &dodgson::TournamentOutcome| {
            o.stats
                .iter()
                .map(|(&a, c)| (a, c.condorcet_checks, c.nodes_generated))
                .collect::<Vec<_>>()
        };
        for _ in 0..9 {
            let again =
                run_tournament(pp, ScorerKind::Icr, TournamentStrategy::Concurrent, &ScoreBudget::UNLIMITED)
                    .unwrap();
            if again.winners != first.winners
                || again.standings != first.standings
                || work(&again) != work(&first)
            {
                failures.push("a repeated concurrent run diverged".into());
            }
        }
    }
    if started.elapsed().as_secs() >= 300 {
        failures.push("strategy sweep exceeded five minutes".into());
    }
    report("5 (strategy equivalence and scheduling independence)", failures);
}

#[test]
fn criterion_6_pruned_tournament_cuts_checks_tenfold() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let standard = run_average_benchmark(&BenchConfig {
        n: 8,
        m: 5,
        runs: 100,
        seed_base: 7_000,
        scorers: vec![ScorerKind::Icr],
        mode: BenchMode::Standard,
    })
    .unwrap();
    let threaded = run_average_benchmark(&BenchConfig {
        n: 8,
        m: 5,
        runs: 100,
        seed_base: 7_000,
        scorers: vec![ScorerKind::Icr],
        mode: BenchMode::Threaded,
    })
    .unwrap();
    let ratio = standard[0].avg_calls / threaded[0].avg_calls;
    if ratio.is_nan() || ratio < 10.0 {
        failures.push(format!(
            "check ratio {ratio:.1} below 10 ({} standard vs {} threaded)",
            standard[0].avg_calls, threaded[0].avg_calls
        ));
    }
    if started.elapsed().as_secs() >= 120 {
        failures.push("benchmark exceeded two minutes".into());
    }
    report("6 (pruned tournament cuts checks tenfold)", failures);
}

#[test]
fn criterion_7_pruned_sweep_reaches_higher_ceilings() {
    let mut failures = Vec::new();
    let base_cfg = SweepConfig {
        window_millis: 100,
        repetitions: 1,
        seed_base: 70,
        scorer: ScorerKind::Baseline,
        strategy: TournamentStrategy::FullSequential,
        odd_n_only: true,
        max_m: 128,
        max_n: 3,
    };
    let fast_cfg = SweepConfig {
        scorer: ScorerKind::Icr,
        strategy: TournamentStrategy::ConcurrentOrdered,
        ..base_cfg.clone()
    };
    let base = run_range_sweep(&base_cfg).unwrap();
    let fast = run_range_sweep(&fast_cfg).unwrap();
    let at_three = |points: &[dodgson::bench::SweepPoint]| {
        points
            .iter()
            .find(|p| p.n == 3)
            .map(|p| p.m_max)
            .expect("sweep reaches n=3")
    };
    let (slow_m, fast_m) = (at_three(&base), at_three(&fast));
    if fast_m.is_nan() || fast_m <= slow_m {
        failures.push(format!(
            "concurrent ceiling {fast_m} not above exhaustive ceiling {slow_m}"
        ));
    }
    report("7 (pruned sweep reaches higher ceilings)", failures);
}

#[test]
fn criterion_8_everything_is_reproducible() {
    let mut failures = Vec::new();
    let combos: Vec<(usize, usize, u64)> = [1usize, 3, 5, 7]
        .iter()
        .flat_map(|&n| (2usize..=5).flat_map(move |m| (0..3u64).map(move |s| (n, m, 8_000 + s))))
        .collect();

    // label, score, solution set, checks, nodes
    type ScoreRow = (String, u64, BTreeSet<Vec<u32>>, u64, u64);

    #[derive(PartialEq, Debug)]
    struct Observed {
        text: String,
        scores: Vec<ScoreRow>,
        winners: Vec<CandidateIndex>,
        tournament_work: Vec<(CandidateIndex, u64, u64)>,
    }
    let observe = |&(n, m, seed): &(usize, usize, u64)| {
        let pp = generate_impartial_culture(n, m, seed).unwrap();
        let mut scores = Vec::new();
        for a in pp.candidates() {
            for kind in ALL_SCORERS {
                let r = exact(kind, &pp, a);
                scores.push((
                    format!("{}:{kind}", pp.name(a)),
                    r.score,
                    counts_of(&r),
                    r.stats.condorcet_checks,
                    r.stats.nodes_generated,
                ));
            }
        }
        let out = run_tournament(
            &pp,
            ScorerKind::Icr,
            TournamentStrategy::ConcurrentOrdered,
            &ScoreBudget::UNLIMITED,
        )
        .unwrap();
        Observed {
            text: pp.to_text(),
            scores,
            winners: out.winners.clone(),
            tournament_work: out
                .stats
                .iter()
                .map(|(&a, c)| (a, c.condorcet_checks, c.nodes_generated))
                .collect(),
        }
    };

    for combo in &combos {
        let first = observe(combo);
        let second = observe(combo);
        if first != second {
            failures.push(format!("combo {combo:?} not reproducible"));
        }
    }
    report("8 (bit-level reproducibility)", failures);
}
