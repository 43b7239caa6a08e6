//! Game transcripts and the rules every round must obey.

use crate::graph::{Graph, VertexSet};
use std::fmt::{self, Write as _};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Round {
    pub marked: VertexSet,
    pub colored: VertexSet,
}

/// A finished (or partial) game, in the labels of the starting graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameRecord {
    pub n: usize,
    pub rounds: Vec<Round>,
    pub total_score: u64,
}

/// A move that breaks the rules, with the 1-based round it happened in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("round {round}: marked set is empty")]
    EmptyMark { round: usize },
    #[error("round {round}: marked set {marked} contains vertices already deleted")]
    MarkOutsideRemaining { round: usize, marked: VertexSet },
    #[error("round {round}: colored set {colored} is not inside the marked set {marked}")]
    ColorOutsideMark { round: usize, marked: VertexSet, colored: VertexSet },
    #[error("round {round}: colored set {colored} is not independent")]
    ColorNotIndependent { round: usize, colored: VertexSet },
    #[error("round {round}: colored set is empty, so the game would never end")]
    EmptyColor { round: usize },
    #[error("game ended with vertices {remaining} never colored")]
    Unfinished { remaining: VertexSet },
}

/// Checks one round against the remaining vertex set.
pub fn check_round(
    g: &Graph,
    remaining: VertexSet,
    round: usize,
    marked: VertexSet,
    colored: VertexSet,
) -> Result<(), MoveError> {
    check_mark(remaining, round, marked)?;
    check_color(g, round, marked, colored)
}

pub fn check_mark(remaining: VertexSet, round: usize, marked: VertexSet) -> Result<(), MoveError> {
    if marked.is_empty() {
        return Err(MoveError::EmptyMark { round });
    }
    if !marked.is_subset(remaining) {
        return Err(MoveError::MarkOutsideRemaining { round, marked });
    }
    Ok(())
}

/// Painter's answer must be a nonempty independent subset of the mark. An
/// empty answer is legal in the game but only ever helps Lister, and
/// rejecting it guarantees every game terminates.
pub fn check_color(
    g: &Graph,
    round: usize,
    marked: VertexSet,
    colored: VertexSet,
) -> Result<(), MoveError> {
    if !colored.is_subset(marked) {
        return Err(MoveError::ColorOutsideMark { round, marked, colored });
    }
    if !g.is_independent(colored) {
        return Err(MoveError::ColorNotIndependent { round, colored });
    }
    if colored.is_empty() {
        return Err(MoveError::EmptyColor { round });
    }
    Ok(())
}

impl GameRecord {
    pub fn new(n: usize) -> Self {
        GameRecord { n, rounds: Vec::new(), total_score: 0 }
    }

    pub fn push(&mut self, marked: VertexSet, colored: VertexSet) {
        self.total_score += marked.len() as u64;
        self.rounds.push(Round { marked, colored });
    }

    /// Vertices not yet colored.
    pub fn remaining(&self) -> VertexSet {
        self.rounds.iter().fold(VertexSet::full(self.n), |r, x| r - x.colored)
    }

    /// Checks every rule: marks inside the remaining graph, colored sets
    /// independent and inside their marks, colored sets partitioning `V`,
    /// and the score equal to the total marked.
    pub fn validate(&self, g: &Graph) -> Result<(), MoveError> {
        let mut remaining = g.vertices();
        let mut score = 0;
        for (i, r) in self.rounds.iter().enumerate() {
            check_round(g, remaining, i + 1, r.marked, r.colored)?;
            remaining = remaining - r.colored;
            score += r.marked.len() as u64;
        }
        if !remaining.is_empty() {
            return Err(MoveError::Unfinished { remaining });
        }
        debug_assert_eq!(score, self.total_score);
        Ok(())
    }

    /// One line per round: `<index> <marked hex> <colored hex>`, 1-based.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rounds.iter().enumerate() {
            let _ = writeln!(out, "{} {:x} {:x}", i + 1, r.marked.bits(), r.colored.bits());
        }
        out
    }
}

/// Human-readable transcript.
impl fmt::Display for GameRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut total = 0;
        for (i, r) in self.rounds.iter().enumerate() {
            total += r.marked.len();
            writeln!(
                f,
                "round {:>2}: mark {} (+{}), color {}, total {}",
                i + 1,
                r.marked,
                r.marked.len(),
                r.colored,
                total
            )?;
        }
        write!(f, "score {}", self.total_score)
    }
}
