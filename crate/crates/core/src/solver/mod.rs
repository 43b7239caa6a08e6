//! Exact value of the slow-coloring game.
//!
//! `ŝ(G) = max_M ( |M| + min_I ŝ(G - I) )`, `M` a nonempty marked set and `I`
//! an independent subset of `M`. Three restrictions keep this tractable,
//! each cross-checked against the unrestricted recursion in the tests:
//!
//! * **Components add.** Lister can play an optimal strategy in one
//!   component while ignoring the rest, so `ŝ(G₁ ∪ G₂) ≥ ŝ(G₁) + ŝ(G₂)`;
//!   Painter can answer inside each component of `M` separately, so `≤`.
//!   Only connected graphs are memoized, keyed by canonical form.
//! * **Connected marks.** If `G[M]` is disconnected, splitting `M` into its
//!   components over several rounds earns Lister at least as much.
//! * **Maximal answers.** Coloring extra marked vertices at no cost never
//!   hurts Painter, so only maximal independent `I ⊆ M` are tried.
//!
//! The search is a plain depth-first minimax over vertex subsets of the root
//! graph. A per-search table keyed by subset avoids recomputing canonical
//! forms; the shared [`SolverCache`] carries values across searches.

mod cache;

pub use cache::{CacheError, SolverCache, CACHE_HEADER};

use crate::game::GameRecord;
use crate::graph::{
    canonical_key, connected_subsets, maximal_independent_subsets, Graph, VertexSet,
};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_LIMIT: usize = 12;

/// Components at least this large have their first-round moves evaluated
/// in parallel.
const PARALLEL_MIN_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices, above the solver limit of {limit} (raise it with --limit)")]
    TooLarge { n: usize, limit: usize },
    #[error("search cancelled")]
    Cancelled,
    #[error("marked set {0} is empty or not inside the remaining graph")]
    InvalidMark(VertexSet),
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Largest vertex count accepted.
    pub limit: usize,
    /// Worker threads for first-round moves; 0 uses every core, 1 stays on
    /// the calling thread. Never affects results.
    pub threads: usize,
    /// Skip a Lister move when `|M| + |V'| + |E'|` for the graph left after
    /// Painter's first maximal answer cannot reach the best move so far.
    /// Sound (`|V| + |E|` bounds every value) but off by default.
    pub prune_with_bounds: bool,
    /// Polled between node expansions.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { limit: DEFAULT_LIMIT, threads: 1, prune_with_bounds: false, cancel: None }
    }
}

impl SolverConfig {
    pub fn with_limit(limit: usize) -> Self {
        SolverConfig { limit, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u64,
    /// Every optimal connected first mark, sorted by bitmask.
    pub optimal_marks: Vec<VertexSet>,
    /// Positions expanded (not found in any table).
    pub node_count: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Default)]
struct Stats {
    nodes: AtomicU64,
    hits: AtomicU64,
}

#[derive(Clone)]
struct Engine<'a> {
    g: &'a Graph,
    cache: &'a SolverCache,
    cancel: Option<&'a AtomicBool>,
    prune: bool,
    stats: Arc<Stats>,
    memo: HashMap<u64, u32>,
}

impl<'a> Engine<'a> {
    fn fork(&self) -> Self {
        Engine { memo: HashMap::new(), stats: Arc::clone(&self.stats), ..*self }
    }

    fn poll(&self) -> Result<(), SolveError> {
        match self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(SolveError::Cancelled),
            _ => Ok(()),
        }
    }

    fn value_set(&mut self, s: VertexSet) -> Result<u32, SolveError> {
        let mut total = 0;
        for c in self.g.components_within(s) {
            total += self.value_component(c)?;
        }
        Ok(total)
    }

    fn lookup(&mut self, c: VertexSet) -> Result<u32, crate::graph::CanonicalKey> {
        if c.len() == 1 {
            return Ok(1);
        }
        if let Some(&v) = self.memo.get(&c.0) {
            return Ok(v);
        }
        let key = canonical_key(&self.g.induced(c));
        match self.cache.get(&key) {
            Some(v) => {
                self.stats.hits.fetch_add(1, Ordering::Relaxed);
                self.memo.insert(c.0, v);
                Ok(v)
            }
            None => Err(key),
        }
    }

    fn store(&mut self, c: VertexSet, key: crate::graph::CanonicalKey, value: u32) {
        self.memo.insert(c.0, value);
        self.cache.insert(key, value);
    }

    /// Value of the connected graph `g[c]`.
    fn value_component(&mut self, c: VertexSet) -> Result<u32, SolveError> {
        let key = match self.lookup(c) {
            Ok(v) => return Ok(v),
            Err(key) => key,
        };
        self.poll()?;
        self.stats.nodes.fetch_add(1, Ordering::Relaxed);
        let g = self.g;
        let mut best = 0;
        for m in connected_subsets(g, c) {
            if self.prune && self.move_upper_bound(c, m) < best {
                continue;
            }
            best = best.max(self.move_value(c, m)?);
        }
        self.store(c, key, best);
        Ok(best)
    }

    /// `|M|` plus Painter's best answer, inside component `c`.
    fn move_value(&mut self, c: VertexSet, m: VertexSet) -> Result<u32, SolveError> {
        let g = self.g;
        let mut least = u32::MAX;
        for i in maximal_independent_subsets(g, m) {
            least = least.min(self.value_set(c - i)?);
        }
        Ok(m.len() as u32 + least)
    }

    fn move_upper_bound(&self, c: VertexSet, m: VertexSet) -> u32 {
        let i = maximal_independent_subsets(self.g, m).next().unwrap_or_default();
        let rest = c - i;
        (m.len() + rest.len() + self.g.edge_count_within(rest)) as u32
    }
}

/// Repeated exact queries about positions (vertex subsets) of one graph,
/// sharing one search table.
pub struct Analyzer<'a> {
    engine: Engine<'a>,
    threads: usize,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Analyzer<'a> {
    pub fn new(
        g: &'a Graph,
        cache: &'a SolverCache,
        config: &'a SolverConfig,
    ) -> Result<Self, SolveError> {
        if g.n() > config.limit {
            return Err(SolveError::TooLarge { n: g.n(), limit: config.limit });
        }
        Ok(Analyzer {
            engine: Engine {
                g,
                cache,
                cancel: config.cancel.as_deref(),
                prune: config.prune_with_bounds,
                stats: Arc::default(),
                memo: HashMap::new(),
            },
            threads: config.threads,
            pool: None,
        })
    }

    pub fn graph(&self) -> &'a Graph {
        self.engine.g
    }

    /// `ŝ(g[s])`.
    pub fn value(&mut self, s: VertexSet) -> Result<u64, SolveError> {
        self.engine.value_set(s & self.engine.g.vertices()).map(u64::from)
    }

    /// `ŝ(g[s])` and every optimal connected first mark, sorted by bitmask.
    pub fn analyze(&mut self, s: VertexSet) -> Result<(u64, Vec<VertexSet>), SolveError> {
        let s = s & self.engine.g.vertices();
        let mut total = 0u64;
        let mut marks = Vec::new();
        for c in self.engine.g.components_within(s) {
            let (v, mut m) = self.analyze_component(c)?;
            total += u64::from(v);
            marks.append(&mut m);
        }
        marks.sort();
        Ok((total, marks))
    }

    fn analyze_component(&mut self, c: VertexSet) -> Result<(u32, Vec<VertexSet>), SolveError> {
        let g = self.engine.g;
        let moves: Vec<VertexSet> = connected_subsets(g, c).collect();
        let values: Vec<Option<u32>> = if self.threads != 1 && c.len() >= PARALLEL_MIN_VERTICES {
            let template = self.engine.fork();
            let run = || {
                moves
                    .par_iter()
                    .map_init(|| template.fork(), |e, &m| e.move_value(c, m).map(Some))
                    .collect::<Result<Vec<_>, _>>()
            };
            if self.threads == 0 {
                run()?
            } else {
                if self.pool.is_none() {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(self.threads)
                        .build()
                        .expect("thread pool");
                    self.pool = Some(pool);
                }
                self.pool.as_ref().expect("just built").install(run)?
            }
        } else {
            self.engine.poll()?;
            let mut best = 0;
            let mut out = Vec::with_capacity(moves.len());
            for &m in &moves {
                if self.engine.prune && self.engine.move_upper_bound(c, m) < best {
                    out.push(None);
                    continue;
                }
                let v = self.engine.move_value(c, m)?;
                best = best.max(v);
                out.push(Some(v));
            }
            out
        };
        let best = values.iter().flatten().copied().max().unwrap_or(0);
        let marks = moves
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == Some(best))
            .map(|(&m, _)| m)
            .collect();
        if c.len() > 1 {
            let key = canonical_key(&g.induced(c));
            self.engine.store(c, key, best);
        }
        Ok((best, marks))
    }

    /// Painter's optimal answer to mark `m` in position `s`: a maximal
    /// independent `I ⊆ m` minimizing `ŝ(g[s - I])`, ties broken by the
    /// canonical key of `g[s - I]`, then by bitmask.
    pub fn best_response(&mut self, s: VertexSet, m: VertexSet) -> Result<VertexSet, SolveError> {
        if m.is_empty() || !m.is_subset(s & self.engine.g.vertices()) {
            return Err(SolveError::InvalidMark(m));
        }
        let g = self.engine.g;
        let mut best = None;
        for i in maximal_independent_subsets(g, m) {
            let v = self.engine.value_set(s - i)?;
            let rank = (v, canonical_key(&g.induced(s - i)), i);
            if best.as_ref().is_none_or(|b| rank < *b) {
                best = Some(rank);
            }
        }
        Ok(best.expect("a nonempty mark has a maximal independent subset").2)
    }

    /// Expanded positions and shared-cache hits so far.
    pub fn stats(&self) -> (u64, u64) {
        let s = &self.engine.stats;
        (s.nodes.load(Ordering::Relaxed), s.hits.load(Ordering::Relaxed))
    }
}

pub fn solve(g: &Graph, cache: &SolverCache) -> Result<SolveResult, SolveError> {
    solve_with(g, cache, &SolverConfig::default())
}

pub fn solve_with(
    g: &Graph,
    cache: &SolverCache,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    let mut a = Analyzer::new(g, cache, config)?;
    let (value, optimal_marks) = a.analyze(g.vertices())?;
    let (node_count, cache_hits) = a.stats();
    Ok(SolveResult { value, optimal_marks, node_count, cache_hits })
}

/// See [`Analyzer::best_response`].
pub fn optimal_painter_response(
    g: &Graph,
    m: VertexSet,
    cache: &SolverCache,
) -> Result<VertexSet, SolveError> {
    let config = SolverConfig::default();
    Analyzer::new(g, cache, &config)?.best_response(g.vertices(), m)
}

pub fn score_lower_certificate(g: &Graph, cache: &SolverCache) -> Result<GameRecord, SolveError> {
    score_lower_certificate_with(g, cache, &SolverConfig::default())
}

/// Optimal Lister against optimal Painter; the score equals `ŝ(g)`. Each
/// round Lister marks, in every component, its smallest-bitmask optimal
/// connected mark.
pub fn score_lower_certificate_with(
    g: &Graph,
    cache: &SolverCache,
    config: &SolverConfig,
) -> Result<GameRecord, SolveError> {
    let mut a = Analyzer::new(g, cache, config)?;
    let mut record = GameRecord::new(g.n());
    let mut remaining = g.vertices();
    while !remaining.is_empty() {
        // components add, so one optimal mark per component at once is
        // itself optimal
        let mut m = VertexSet::EMPTY;
        for c in g.components_within(remaining) {
            m = m | a.analyze(c)?.1[0];
        }
        let i = a.best_response(remaining, m)?;
        record.push(m, i);
        remaining = remaining - i;
    }
    Ok(record)
}
