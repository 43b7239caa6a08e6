//! Executable Lister and Painter strategies, a game runner, and exact
//! worst-case evaluation of a fixed strategy.
//!
//! A strategy sees the starting graph and the set of vertices still
//! uncolored; it never sees the history. That makes every strategy here a
//! function of the position, so the evaluators can memoize on the remaining
//! set alone.

mod lister;
mod painter;

pub use lister::{
    ListerBipartite, ListerDisjoint, ListerJoin, ListerMarkAll, ListerMultipartite,
    ListerOptimal, BlockPlay,
};
pub use painter::{PainterAlpha2, PainterBipartiteThreshold, PainterGreedy, PainterOptimal, PainterTree};

use crate::game::{check_color, check_mark, GameRecord, MoveError};
use crate::graph::{maximal_independent_subsets, Graph, VertexSet};
use crate::solver::{Analyzer, SolveError};
use std::collections::HashMap;
use thiserror::Error;

/// Largest graph the guarantee evaluators accept (they visit every marked
/// set of every position, `3^n` pairs).
pub const GUARANTEE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("{strategy}: {reason}")]
    WrongClass { strategy: String, reason: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("illegal move: {0}")]
    Move(#[from] MoveError),
    #[error("graph has {n} vertices, above the evaluator limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

impl StrategyError {
    pub(crate) fn wrong_class(strategy: &str, reason: impl Into<String>) -> Self {
        StrategyError::WrongClass { strategy: strategy.to_string(), reason: reason.into() }
    }
}

/// Painter policy: given the uncolored set and Lister's mark (a nonempty
/// subset of it), returns the vertices to color.
pub trait PainterStrategy: Sync {
    fn name(&self) -> String;
    fn respond(
        &self,
        g: &Graph,
        remaining: VertexSet,
        marked: VertexSet,
    ) -> Result<VertexSet, StrategyError>;
}

/// Lister policy: given the (nonempty) uncolored set, returns the mark.
pub trait ListerStrategy: Sync {
    fn name(&self) -> String;
    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError>;
}

/// Plays the game to the end, checking every move.
pub fn run_game(
    g: &Graph,
    lister: &dyn ListerStrategy,
    painter: &dyn PainterStrategy,
) -> Result<GameRecord, StrategyError> {
    let mut record = GameRecord::new(g.n());
    let mut remaining = g.vertices();
    while !remaining.is_empty() {
        let round = record.rounds.len() + 1;
        let m = lister.mark(g, remaining)?;
        check_mark(remaining, round, m)?;
        let i = painter.respond(g, remaining, m)?;
        check_color(g, round, m, i)?;
        record.push(m, i);
        remaining = remaining - i;
    }
    Ok(record)
}

fn check_size(g: &Graph) -> Result<(), StrategyError> {
    if g.n() > GUARANTEE_LIMIT {
        return Err(StrategyError::TooLarge { n: g.n(), limit: GUARANTEE_LIMIT });
    }
    Ok(())
}

/// The most Lister can score against a fixed Painter: every nonempty mark
/// is tried in every position.
pub fn painter_guarantee(g: &Graph, painter: &dyn PainterStrategy) -> Result<u64, StrategyError> {
    check_size(g)?;
    fn rec(
        g: &Graph,
        p: &dyn PainterStrategy,
        s: VertexSet,
        memo: &mut HashMap<u64, u64>,
    ) -> Result<u64, StrategyError> {
        if s.is_empty() {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&s.0) {
            return Ok(v);
        }
        let mut best = 0;
        let mut m = s.0;
        while m != 0 {
            let marked = VertexSet(m);
            let i = p.respond(g, s, marked)?;
            check_color(g, 0, marked, i)?;
            best = best.max(marked.len() as u64 + rec(g, p, s - i, memo)?);
            m = (m - 1) & s.0;
        }
        memo.insert(s.0, best);
        Ok(best)
    }
    rec(g, painter, g.vertices(), &mut HashMap::new())
}

/// The least a fixed Lister can be held to when Painter answers with
/// maximal independent subsets of the mark (the answers an optimal Painter
/// needs), every one of them tried in every position.
pub fn lister_guarantee(g: &Graph, lister: &dyn ListerStrategy) -> Result<u64, StrategyError> {
    check_size(g)?;
    fn rec(
        g: &Graph,
        l: &dyn ListerStrategy,
        s: VertexSet,
        memo: &mut HashMap<u64, u64>,
    ) -> Result<u64, StrategyError> {
        if s.is_empty() {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&s.0) {
            return Ok(v);
        }
        let m = l.mark(g, s)?;
        check_mark(s, 0, m)?;
        let mut least = u64::MAX;
        for i in maximal_independent_subsets(g, m) {
            least = least.min(rec(g, l, s - i, memo)?);
        }
        let v = m.len() as u64 + least;
        memo.insert(s.0, v);
        Ok(v)
    }
    rec(g, lister, g.vertices(), &mut HashMap::new())
}

/// Parts of `g[s]` if it is complete multipartite (non-adjacency is an
/// equivalence), ordered by lowest vertex.
pub fn multipartite_parts(g: &Graph, s: VertexSet) -> Option<Vec<VertexSet>> {
    let mut parts = Vec::new();
    let mut left = s;
    while let Some(v) = left.lowest() {
        let part = s - g.neighbors(v);
        if !g.is_independent(part) {
            return None;
        }
        for u in part {
            if (s - g.neighbors(u)) != part {
                return None;
            }
        }
        parts.push(part);
        left = left - part;
    }
    Some(parts)
}

/// Lister's optimal mark in `g[s]`: the smallest-bitmask optimal connected
/// mark of every component, marked together.
pub(crate) fn optimal_mark(a: &mut Analyzer<'_>, s: VertexSet) -> Result<VertexSet, SolveError> {
    let g = a.graph();
    let mut m = VertexSet::EMPTY;
    for c in g.components_within(s) {
        m = m | a.analyze(c)?.1[0];
    }
    Ok(m)
}

/// A largest independent subset of `m`, smallest bitmask among ties.
pub(crate) fn maximum_independent_subset(g: &Graph, m: VertexSet) -> VertexSet {
    maximal_independent_subsets(g, m)
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.0.cmp(&a.0)))
        .unwrap_or_default()
}
