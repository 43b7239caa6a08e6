use super::{maximum_independent_subset, multipartite_parts, PainterStrategy, StrategyError};
use crate::graph::{Graph, VertexSet};
use crate::solver::{Analyzer, SolverCache, SolverConfig};

/// Colors a largest independent subset of the mark (smallest bitmask among
/// ties). Against it Lister scores at most `n·ρ(G)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PainterGreedy;

impl PainterStrategy for PainterGreedy {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn respond(&self, g: &Graph, _: VertexSet, m: VertexSet) -> Result<VertexSet, StrategyError> {
        Ok(maximum_independent_subset(g, m))
    }
}

/// Forest strategy holding Lister to `⌊3n/2⌋`.
///
/// The components of the marked forest are answered one after another, each
/// in the forest left by the previous answers; the union is independent
/// because every forest edge inside the mark lies inside one component. For
/// a component `C`, delete the edges inside `C` and classify each vertex of
/// `C` by the parity of its component in what is left (`A` even, `B` odd). Of the two sides of the bipartition of `C`, color the one
/// maximizing `3|I| + |A ∩ I| + |B ∖ I|`, which is always at least `2|C|`;
/// ties go to the side holding the lowest vertex.
#[derive(Debug, Clone, Copy, Default)]
pub struct PainterTree;

impl PainterTree {
    /// Vertex count of `x`'s component after deleting the edges inside `c`.
    fn split_component_size(g: &Graph, remaining: VertexSet, c: VertexSet, x: usize) -> usize {
        let mut seen = VertexSet::singleton(x);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            let mut next = g.neighbors(y) & remaining;
            if c.contains(y) {
                next = next - c;
            }
            for z in next - seen {
                seen.insert(z);
                stack.push(z);
            }
        }
        seen.len()
    }

    /// Side of the bipartition of the tree `g[c]` holding its lowest vertex.
    fn side_of_lowest(g: &Graph, c: VertexSet) -> VertexSet {
        let Some(root) = c.lowest() else {
            return VertexSet::EMPTY;
        };
        let mut side = VertexSet::singleton(root);
        let mut frontier = VertexSet::singleton(root);
        let mut seen = frontier;
        let mut even = true;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for y in frontier {
                next = next | (g.neighbors(y) & c);
            }
            next = next - seen;
            seen = seen | next;
            even = !even;
            if even {
                side = side | next;
            }
            frontier = next;
        }
        side
    }
}

impl PainterStrategy for PainterTree {
    fn name(&self) -> String {
        "tree".into()
    }

    fn respond(
        &self,
        g: &Graph,
        remaining: VertexSet,
        m: VertexSet,
    ) -> Result<VertexSet, StrategyError> {
        if !g.is_forest_within(remaining) {
            return Err(StrategyError::wrong_class("tree", "graph is not a forest"));
        }
        let mut colored = VertexSet::EMPTY;
        for c in g.components_within(m) {
            let left = remaining - colored;
            let even: VertexSet = c
                .iter()
                .filter(|&x| Self::split_component_size(g, left, c, x) % 2 == 0)
                .collect();
            let odd = c - even;
            let x = Self::side_of_lowest(g, c);
            let y = c - x;
            let score = |i: VertexSet| 3 * i.len() + (even & i).len() + (odd - i).len();
            colored = colored | if score(x) >= score(y) { x } else { y };
        }
        Ok(colored)
    }
}

/// For complete multipartite graphs with parts of size at most 2 (the
/// `α ≤ 2` extremal class). With the parts of the current graph:
/// 1. if the mark holds a whole 2-part, color it;
/// 2. else if it meets a 1-part, color that vertex;
/// 3. else color one marked vertex.
///
/// The lowest-indexed choice is taken in each case.
#[derive(Debug, Clone, Copy, Default)]
pub struct PainterAlpha2;

impl PainterStrategy for PainterAlpha2 {
    fn name(&self) -> String {
        "alpha2".into()
    }

    fn respond(
        &self,
        g: &Graph,
        remaining: VertexSet,
        m: VertexSet,
    ) -> Result<VertexSet, StrategyError> {
        let parts = multipartite_parts(g, remaining)
            .filter(|p| p.iter().all(|x| x.len() <= 2))
            .ok_or_else(|| {
                StrategyError::wrong_class("alpha2", "not complete multipartite with parts of size at most 2")
            })?;
        if let Some(&p) = parts.iter().find(|p| p.len() == 2 && p.is_subset(m)) {
            return Ok(p);
        }
        if let Some(&p) = parts.iter().find(|p| p.len() == 1 && p.is_subset(m)) {
            return Ok(p);
        }
        Ok(m.lowest_k(1))
    }
}

/// For `K_{r,s}`: with `j` marked on the currently larger side (size `r`)
/// and `i` on the smaller (size `s`), color the larger side's marked
/// vertices iff `j ≥ i·√(r/s)`, decided exactly as `j²s ≥ i²r`. Equal sides
/// count the first side as the larger. A one-sided mark is colored whole.
#[derive(Debug, Clone, Copy)]
pub struct PainterBipartiteThreshold {
    pub first: VertexSet,
    pub second: VertexSet,
}

impl PainterBipartiteThreshold {
    pub fn new(first: VertexSet, second: VertexSet) -> Self {
        PainterBipartiteThreshold { first, second }
    }

    /// Sides of a complete bipartite graph (an empty graph is one side).
    pub fn detect(g: &Graph) -> Result<Self, StrategyError> {
        let (a, b) = bipartite_sides(g)
            .ok_or_else(|| StrategyError::wrong_class("bipartite", "not complete bipartite"))?;
        Ok(Self::new(a, b))
    }
}

pub(crate) fn bipartite_sides(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let parts = multipartite_parts(g, g.vertices())?;
    match parts.len() {
        0 => Some((VertexSet::EMPTY, VertexSet::EMPTY)),
        1 => Some((parts[0], VertexSet::EMPTY)),
        2 => Some((parts[0], parts[1])),
        _ => None,
    }
}

impl PainterStrategy for PainterBipartiteThreshold {
    fn name(&self) -> String {
        "bipartite".into()
    }

    fn respond(
        &self,
        _: &Graph,
        remaining: VertexSet,
        m: VertexSet,
    ) -> Result<VertexSet, StrategyError> {
        let (a, b) = (self.first & remaining, self.second & remaining);
        if !m.is_subset(a | b) {
            return Err(StrategyError::wrong_class("bipartite", "mark outside the two sides"));
        }
        let (large, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let (ml, ms) = (m & large, m & small);
        if ms.is_empty() {
            return Ok(ml);
        }
        if ml.is_empty() {
            return Ok(ms);
        }
        let (j, i) = (ml.len() as u64, ms.len() as u64);
        let (r, s) = (large.len() as u64, small.len() as u64);
        Ok(if j * j * s >= i * i * r { ml } else { ms })
    }
}

/// Solver-backed optimal answers (see [`Analyzer::best_response`]).
pub struct PainterOptimal<'a> {
    cache: &'a SolverCache,
    config: SolverConfig,
}

impl<'a> PainterOptimal<'a> {
    pub fn new(cache: &'a SolverCache, config: SolverConfig) -> Self {
        PainterOptimal { cache, config }
    }
}

impl PainterStrategy for PainterOptimal<'_> {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn respond(
        &self,
        g: &Graph,
        remaining: VertexSet,
        m: VertexSet,
    ) -> Result<VertexSet, StrategyError> {
        Ok(Analyzer::new(g, self.cache, &self.config)?.best_response(remaining, m)?)
    }
}
