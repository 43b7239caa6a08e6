use super::painter::bipartite_sides;
use super::{multipartite_parts, optimal_mark, ListerStrategy, StrategyError};
use crate::family_dp::u;
use crate::graph::{Graph, VertexSet};
use crate::solver::{Analyzer, SolverCache, SolverConfig};

/// Marks every remaining vertex; Painter's answers then form a proper
/// coloring whose color sum is the score, so Lister gets at least `Σ(G)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ListerMarkAll;

impl ListerStrategy for ListerMarkAll {
    fn name(&self) -> String {
        "mark-all".into()
    }

    fn mark(&self, _: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        Ok(remaining)
    }
}

/// For `E_r ∨ K_s` (stars are `s = 1`): every round marks all remaining
/// clique vertices and the `u(r')` lowest remaining independent vertices,
/// `r'` the number left. The clique is read off the position as its
/// universal vertices, so the strategy follows the graph as it shrinks.
#[derive(Debug, Clone, Copy, Default)]
pub struct ListerJoin;

pub(crate) fn join_mark(g: &Graph, s: VertexSet) -> Result<VertexSet, StrategyError> {
    let clique: VertexSet =
        s.iter().filter(|&v| (g.neighbors(v) & s) == s - VertexSet::singleton(v)).collect();
    let rest = s - clique;
    if !g.is_independent(rest) {
        return Err(StrategyError::wrong_class("join", "not an independent set joined to a clique"));
    }
    if rest.is_empty() || clique.is_empty() {
        return Ok(s);
    }
    Ok(clique | rest.lowest_k(u(rest.len() as u64) as usize))
}

impl ListerStrategy for ListerJoin {
    fn name(&self) -> String {
        "join".into()
    }

    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        join_mark(g, remaining)
    }
}

/// How a block of [`ListerDisjoint`] is played.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockPlay {
    /// Solver-backed optimal marks inside the block.
    Optimal,
    /// [`ListerJoin`] inside the block.
    Join,
}

/// Plays vertex-disjoint blocks one after another, each as if it were the
/// whole graph, then the leftover vertices optimally. Marks stay inside one
/// block, so Painter's answers do too, and Lister collects at least the sum
/// of the blocks' values.
pub struct ListerDisjoint<'a> {
    pub blocks: Vec<(VertexSet, BlockPlay)>,
    cache: &'a SolverCache,
    config: SolverConfig,
}

impl<'a> ListerDisjoint<'a> {
    pub fn new(
        g: &Graph,
        blocks: Vec<(VertexSet, BlockPlay)>,
        cache: &'a SolverCache,
        config: SolverConfig,
    ) -> Result<Self, StrategyError> {
        let mut used = VertexSet::EMPTY;
        for &(b, _) in &blocks {
            if !(used & b).is_empty() || !b.is_subset(g.vertices()) || b.is_empty() {
                return Err(StrategyError::wrong_class(
                    "disjoint",
                    format!("block {b} overlaps another block or leaves the graph"),
                ));
            }
            used = used | b;
        }
        Ok(ListerDisjoint { blocks, cache, config })
    }

    pub fn optimal_blocks(
        g: &Graph,
        blocks: Vec<VertexSet>,
        cache: &'a SolverCache,
        config: SolverConfig,
    ) -> Result<Self, StrategyError> {
        let blocks = blocks.into_iter().map(|b| (b, BlockPlay::Optimal)).collect();
        Self::new(g, blocks, cache, config)
    }

    /// Recursive edge splitting for forests, guaranteeing `n + u(n-1)` on an
    /// `n`-vertex tree. A tree is cut, in order of preference:
    /// 1. a star is played with [`ListerJoin`];
    /// 2. up to 4 vertices, optimally;
    /// 3. at the first edge cutting off 2 or 3 vertices;
    /// 4. up to 7 vertices, optimally;
    /// 5. at the first edge leaving at least 4 vertices on each side.
    pub fn tree(g: &Graph, cache: &'a SolverCache, config: SolverConfig) -> Result<Self, StrategyError> {
        if !g.is_forest_within(g.vertices()) {
            return Err(StrategyError::wrong_class("tree", "graph is not a forest"));
        }
        let mut blocks = Vec::new();
        for c in g.components() {
            split_tree(g, c, &mut blocks);
        }
        Self::new(g, blocks, cache, config)
    }
}

fn is_star(g: &Graph, t: VertexSet) -> bool {
    t.len() <= 2 || t.iter().any(|v| g.degree_within(v, t) == t.len() - 1)
}

/// Vertices on `u`'s side of the tree `g[t]` once edge `uv` is cut.
fn side(g: &Graph, t: VertexSet, u: usize, v: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(u);
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        let mut next = (g.neighbors(x) & t) - seen;
        if x == u {
            next.remove(v);
        }
        for y in next {
            seen.insert(y);
            stack.push(y);
        }
    }
    seen
}

fn split_tree(g: &Graph, t: VertexSet, out: &mut Vec<(VertexSet, BlockPlay)>) {
    let n = t.len();
    if is_star(g, t) {
        out.push((t, BlockPlay::Join));
        return;
    }
    if n <= 4 {
        out.push((t, BlockPlay::Optimal));
        return;
    }
    let cuts: Vec<(VertexSet, VertexSet)> = g
        .edges()
        .filter(|&(a, b)| t.contains(a) && t.contains(b))
        .map(|(a, b)| {
            let s = side(g, t, a, b);
            (s, t - s)
        })
        .collect();
    let small = |x: VertexSet| x.len() == 2 || x.len() == 3;
    let chosen = cuts.iter().find(|(a, b)| small(*a) || small(*b)).or_else(|| {
        if n <= 7 {
            None
        } else {
            cuts.iter().find(|(a, b)| a.len() >= 4 && b.len() >= 4)
        }
    });
    match chosen {
        Some(&(a, b)) => {
            split_tree(g, a, out);
            split_tree(g, b, out);
        }
        None => out.push((t, BlockPlay::Optimal)),
    }
}

impl ListerStrategy for ListerDisjoint<'_> {
    fn name(&self) -> String {
        "disjoint".into()
    }

    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        let mut used = VertexSet::EMPTY;
        for &(b, play) in &self.blocks {
            used = used | b;
            let live = b & remaining;
            if live.is_empty() {
                continue;
            }
            return match play {
                BlockPlay::Join => join_mark(g, live),
                BlockPlay::Optimal => {
                    Ok(optimal_mark(&mut Analyzer::new(g, self.cache, &self.config)?, live)?)
                }
            };
        }
        let leftover = remaining - used;
        Ok(optimal_mark(&mut Analyzer::new(g, self.cache, &self.config)?, leftover)?)
    }
}

/// Three-case strategy for `K_{r,s}` holding Painter to at least
/// `r + (5s-3)/2 + u(r-s)`. With `r ≥ s` the current side sizes:
/// * `s = 0`: mark everything; `s = 1`: play the star strategy;
/// * `(r, s) = (3, 2)`: one vertex from each side;
/// * `r ≥ s + 2`: one small-side vertex and `u(r-s)` large-side vertices;
/// * `r = s + 1`: two from each side;
/// * `r = s`: one from each side.
///
/// Equal sides count the first side as the larger; lowest indices first.
#[derive(Debug, Clone, Copy)]
pub struct ListerBipartite {
    pub first: VertexSet,
    pub second: VertexSet,
}

impl ListerBipartite {
    pub fn new(first: VertexSet, second: VertexSet) -> Self {
        ListerBipartite { first, second }
    }

    pub fn detect(g: &Graph) -> Result<Self, StrategyError> {
        let (a, b) = bipartite_sides(g)
            .ok_or_else(|| StrategyError::wrong_class("bipartite", "not complete bipartite"))?;
        Ok(Self::new(a, b))
    }
}

impl ListerStrategy for ListerBipartite {
    fn name(&self) -> String {
        "bipartite".into()
    }

    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        let (a, b) = (self.first & remaining, self.second & remaining);
        let (large, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let (r, s) = (large.len(), small.len());
        let pick = |x: usize, y: usize| large.lowest_k(x) | small.lowest_k(y);
        Ok(match (r, s) {
            (_, 0) => remaining,
            (_, 1) => join_mark(g, remaining)?,
            (3, 2) => pick(1, 1),
            _ if r >= s + 2 => pick(u((r - s) as u64) as usize, 1),
            _ if r == s + 1 => pick(2, 2),
            _ => pick(1, 1),
        })
    }
}

/// For complete multipartite graphs: while at least two parts are
/// untouched (nothing colored yet), mark all but one vertex of each of
/// them; Painter must color one of those groups. With `t` parts of size `r`
/// this leaves `E_r ∨ K_{t-1}` after `t - 1` rounds, which is then played
/// with [`ListerJoin`].
#[derive(Debug, Clone)]
pub struct ListerMultipartite {
    pub parts: Vec<VertexSet>,
}

impl ListerMultipartite {
    pub fn detect(g: &Graph) -> Result<Self, StrategyError> {
        let parts = multipartite_parts(g, g.vertices())
            .ok_or_else(|| StrategyError::wrong_class("multipartite", "not complete multipartite"))?;
        Ok(ListerMultipartite { parts })
    }
}

impl ListerStrategy for ListerMultipartite {
    fn name(&self) -> String {
        "multipartite".into()
    }

    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        let untouched: Vec<VertexSet> =
            self.parts.iter().copied().filter(|p| p.is_subset(remaining)).collect();
        if untouched.len() >= 2 {
            let m = untouched.iter().fold(VertexSet::EMPTY, |m, p| m | p.lowest_k(p.len() - 1));
            if !m.is_empty() {
                return Ok(m);
            }
        }
        join_mark(g, remaining)
    }
}

/// Solver-backed optimal marks: in every component, its smallest-bitmask
/// optimal connected mark.
pub struct ListerOptimal<'a> {
    cache: &'a SolverCache,
    config: SolverConfig,
}

impl<'a> ListerOptimal<'a> {
    pub fn new(cache: &'a SolverCache, config: SolverConfig) -> Self {
        ListerOptimal { cache, config }
    }
}

impl ListerStrategy for ListerOptimal<'_> {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn mark(&self, g: &Graph, remaining: VertexSet) -> Result<VertexSet, StrategyError> {
        Ok(optimal_mark(&mut Analyzer::new(g, self.cache, &self.config)?, remaining)?)
    }
}
