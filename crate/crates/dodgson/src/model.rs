//! Election model: preference profiles, ballots, pairwise majorities and the
//! elementary operations every scoring algorithm builds on.
//!
//! A profile is an ordered list of named alternatives plus one strict ranking
//! per voter. All downstream code works with [`CandidateIndex`] values into the
//! profile's declaration order; names only matter at the I/O boundary.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of an alternative in a profile's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateIndex(pub usize);

impl fmt::Display for CandidateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One voter's strict ranking over all alternatives, best first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ballot {
    ranking: Vec<CandidateIndex>,
}

impl Ballot {
    /// The full ranking, best first.
    pub fn ranking(&self) -> &[CandidateIndex] {
        &self.ranking
    }

    /// 0-based position of `a` in this ballot (0 = top).
    pub fn position_of(&self, a: CandidateIndex) -> usize {
        self.ranking
            .iter()
            .position(|&c| c == a)
            .expect("candidate must appear in every ballot")
    }
}

/// 0-based rank of one candidate in every ballot. Entry `i` is simultaneously
/// the number of upward swaps available to the candidate in ballot `i`, so the
/// table doubles as the per-voter bound vector for swap enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionTable {
    pub positions: Vec<u32>,
}

impl PositionTable {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Sum of all entries: the maximum meaningful total swap count.
    pub fn sum(&self) -> u64 {
        self.positions.iter().map(|&p| u64::from(p)).sum()
    }
}

/// Per-voter upward swap counts for one candidate. The implied score is the
/// sum of the counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwapProfile {
    pub counts: Vec<u32>,
}

impl SwapProfile {
    pub fn new(counts: Vec<u32>) -> Self {
        SwapProfile { counts }
    }

    pub fn score(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }
}

impl fmt::Display for SwapProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    #[error("line {line}: malformed header, expected `<voters> <alternatives>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: profile needs at least one voter and one alternative")]
    EmptyDimensions { line: usize },
    #[error("line {line}: duplicate alternative name `{name}`")]
    DuplicateAlternative { line: usize, name: String },
    #[error("line {line}: unknown alternative `{name}` in ballot {ballot}")]
    UnknownAlternative {
        line: usize,
        ballot: usize,
        name: String,
    },
    #[error("line {line}: ballot {ballot} is not a permutation of the alternatives")]
    NotAPermutation { line: usize, ballot: usize },
    #[error("line {line}: ballot {ballot} lists {found} alternatives, expected {expected}")]
    BallotLength {
        line: usize,
        ballot: usize,
        found: usize,
        expected: usize,
    },
    #[error("expected {expected} ballots, found {found}")]
    BallotCount { expected: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
}

/// Raised when a swap profile asks a voter for more upward swaps than the
/// candidate's position allows.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("voter {voter}: {requested} upward swaps requested but only {available} available")]
pub struct SwapBoundError {
    pub voter: usize,
    pub requested: u32,
    pub available: u32,
}

/// An election instance: named alternatives in declaration order plus one
/// strict ranking per voter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    names: Vec<String>,
    ballots: Vec<Ballot>,
}

impl PreferenceProfile {
    /// Builds a profile from alternative names and per-voter rankings given as
    /// indices into `names`. Validates dimensions and that every ranking is a
    /// permutation.
    pub fn new(names: Vec<String>, rankings: Vec<Vec<usize>>) -> Result<Self, ProfileError> {
        if names.is_empty() || rankings.is_empty() {
            return Err(ProfileError::EmptyDimensions { line: 1 });
        }
        let m = names.len();
        let mut seen_names = HashMap::new();
        for name in &names {
            if seen_names.insert(name.clone(), ()).is_some() {
                return Err(ProfileError::DuplicateAlternative {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        let mut ballots = Vec::with_capacity(rankings.len());
        for (b, ranking) in rankings.into_iter().enumerate() {
            if ranking.len() != m {
                return Err(ProfileError::BallotLength {
                    line: 0,
                    ballot: b + 1,
                    found: ranking.len(),
                    expected: m,
                });
            }
            let mut seen = vec![false; m];
            for &ix in &ranking {
                if ix >= m || seen[ix] {
                    return Err(ProfileError::NotAPermutation {
                        line: 0,
                        ballot: b + 1,
                    });
                }
                seen[ix] = true;
            }
            ballots.push(Ballot {
                ranking: ranking.into_iter().map(CandidateIndex).collect(),
            });
        }
        Ok(PreferenceProfile { names, ballots })
    }

    /// Parses the plain-text format: a `<voters> <alternatives>` header line
    /// followed by one ballot per line, best first. Lines that are blank or
    /// start with `#` are skipped. The first ballot fixes the alternative
    /// declaration order.
    pub fn parse(text: &str) -> Result<Self, ProfileError> {
        let mut significant = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| {
                let t = l.trim_start();
                !t.is_empty() && !t.starts_with('#')
            });

        let (header_line, header) = significant.next().ok_or(ProfileError::MissingHeader)?;
        let mut fields = header.split_whitespace();
        let n: usize = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ProfileError::MalformedHeader { line: header_line })?;
        let m: usize = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ProfileError::MalformedHeader { line: header_line })?;
        if fields.next().is_some() {
            return Err(ProfileError::MalformedHeader { line: header_line });
        }
        if n == 0 || m == 0 {
            return Err(ProfileError::EmptyDimensions { line: header_line });
        }

        let mut names: Vec<String> = Vec::new();
        let mut index_of: HashMap<String, usize> = HashMap::new();
        let mut ballots: Vec<Ballot> = Vec::new();

        for (line, raw) in significant {
            let ballot_no = ballots.len() + 1;
            if ballots.len() == n {
                return Err(ProfileError::BallotCount {
                    expected: n,
                    found: ballot_no,
                });
            }
            let tokens: Vec<&str> = raw.split_whitespace().collect();
            if tokens.len() != m {
                return Err(ProfileError::BallotLength {
                    line,
                    ballot: ballot_no,
                    found: tokens.len(),
                    expected: m,
                });
            }
            if names.is_empty() {
                // First ballot declares the alternatives.
                for tok in &tokens {
                    if index_of.contains_key(*tok) {
                        return Err(ProfileError::DuplicateAlternative {
                            line,
                            name: (*tok).to_string(),
                        });
                    }
                    index_of.insert((*tok).to_string(), names.len());
                    names.push((*tok).to_string());
                }
                ballots.push(Ballot {
                    ranking: (0..m).map(CandidateIndex).collect(),
                });
            } else {
                let mut ranking = Vec::with_capacity(m);
                let mut seen = vec![false; m];
                for tok in &tokens {
                    let &ix = index_of.get(*tok).ok_or_else(|| {
                        ProfileError::UnknownAlternative {
                            line,
                            ballot: ballot_no,
                            name: (*tok).to_string(),
                        }
                    })?;
                    if seen[ix] {
                        return Err(ProfileError::NotAPermutation {
                            line,
                            ballot: ballot_no,
                        });
                    }
                    seen[ix] = true;
                    ranking.push(CandidateIndex(ix));
                }
                ballots.push(Ballot { ranking });
            }
        }

        if ballots.len() != n {
            return Err(ProfileError::BallotCount {
                expected: n,
                found: ballots.len(),
            });
        }
        Ok(PreferenceProfile { names, ballots })
    }

    /// Serializes back to the text format. Parsing the output reproduces the
    /// profile exactly; comments and blank lines are not preserved.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {}\n",
            self.num_voters(),
            self.num_alternatives()
        ));
        for ballot in &self.ballots {
            let line: Vec<&str> = ballot
                .ranking
                .iter()
                .map(|&c| self.names[c.0].as_str())
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn num_voters(&self) -> usize {
        self.ballots.len()
    }

    pub fn num_alternatives(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: CandidateIndex) -> &str {
        &self.names[a.0]
    }

    /// All candidate indices in declaration order.
    pub fn candidates(&self) -> impl Iterator<Item = CandidateIndex> {
        (0..self.num_alternatives()).map(CandidateIndex)
    }

    pub fn lookup(&self, name: &str) -> Option<CandidateIndex> {
        self.names.iter().position(|n| n == name).map(CandidateIndex)
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    /// Smallest ballot count that forms a strict majority: `floor(n/2) + 1`.
    pub fn majority_threshold(&self) -> usize {
        self.num_voters() / 2 + 1
    }

    /// Number of voters ranking `a` strictly above `b`.
    pub fn pairwise_tally(&self, a: CandidateIndex, b: CandidateIndex) -> usize {
        assert_ne!(a, b, "pairwise tally needs two distinct alternatives");
        self.ballots
            .iter()
            .filter(|ballot| ballot.position_of(a) < ballot.position_of(b))
            .count()
    }

    /// True iff `a` beats every other alternative by strict majority. Pairwise
    /// ties are not victories, so an alternative tied in any contest is not a
    /// Condorcet winner. Vacuously true when `a` is the only alternative.
    pub fn is_condorcet_winner(&self, a: CandidateIndex) -> bool {
        let m = self.num_alternatives();
        let maj = self.majority_threshold();
        let mut above = vec![0usize; m];
        for ballot in &self.ballots {
            let p = ballot.position_of(a);
            for &below in &ballot.ranking[p + 1..] {
                above[below.0] += 1;
            }
        }
        (0..m).all(|b| b == a.0 || above[b] >= maj)
    }

    /// The profile's Condorcet winner, if one exists. There is at most one.
    pub fn condorcet_winner(&self) -> Option<CandidateIndex> {
        self.candidates().find(|&a| self.is_condorcet_winner(a))
    }

    /// 0-based rank of `a` in every ballot, in voter order.
    pub fn position_table(&self, a: CandidateIndex) -> PositionTable {
        PositionTable {
            positions: self
                .ballots
                .iter()
                .map(|b| b.position_of(a) as u32)
                .collect(),
        }
    }

    /// Returns a new profile in which voter `i` has moved `a` up by
    /// `swaps.counts[i]` adjacent exchanges. The relative order of all other
    /// alternatives is untouched.
    pub fn apply_swaps(
        &self,
        a: CandidateIndex,
        swaps: &SwapProfile,
    ) -> Result<Self, SwapBoundError> {
        assert_eq!(
            swaps.counts.len(),
            self.num_voters(),
            "swap profile length must equal the voter count"
        );
        let mut ballots = self.ballots.clone();
        for (voter, (ballot, &s)) in ballots.iter_mut().zip(&swaps.counts).enumerate() {
            if s == 0 {
                continue;
            }
            let p = ballot.position_of(a);
            if (s as usize) > p {
                return Err(SwapBoundError {
                    voter,
                    requested: s,
                    available: p as u32,
                });
            }
            let dest = p - s as usize;
            let c = ballot.ranking[p];
            ballot.ranking.copy_within(dest..p, dest + 1);
            ballot.ranking[dest] = c;
        }
        Ok(PreferenceProfile {
            names: self.names.clone(),
            ballots,
        })
    }

    /// Borda count of `a`: each ballot contributes `m - 1 - rank(a)` points.
    pub fn borda_count(&self, a: CandidateIndex) -> u64 {
        let m = self.num_alternatives() as u64;
        self.ballots
            .iter()
            .map(|b| m - 1 - b.position_of(a) as u64)
            .sum()
    }
}
