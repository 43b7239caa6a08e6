//! f-paintability and sum-paintability at desk scale.
//!
//! In the painting game each vertex `v` carries `f(v)` tokens. Each round
//! Lister marks a nonempty set `M`, paying one token of every marked vertex;
//! Painter colors (deletes) an independent `I ⊆ M`. A vertex marked with no
//! token left loses the game for Painter. `G` is f-paintable when Painter can
//! always win, and `χ_SP(G)` is the least `Σ f` that makes it so.
//!
//! The decision procedure is full alternation (every Lister mark, some
//! Painter answer), memoized on the canonical form of the graph colored by
//! token counts. Before searching, a position is reduced:
//!
//! * `f(v) = 0`: lost.
//! * `f(v) = 1`: `G` is f-paintable iff `G - v` is paintable with one token
//!   fewer on each neighbour of `v` (Painter must color `v` the first time
//!   it is marked, so Lister marks it together with all its neighbours).
//! * `f(v) > deg(v)`: delete `v`. Painter plays on `G - v` and adds `v` to
//!   any answer without a neighbour of `v`; each time `v` is passed over a
//!   neighbour disappears for good, so `v` is colored before its tokens run
//!   out.
//! * Components are independent games.
//!
//! Painter only needs maximal independent answers: coloring an extra marked
//! vertex deletes it instead of leaving it with one token fewer, and
//! deleting a vertex never hurts Painter.

use crate::graph::{canonical_key_colored, maximal_independent_subsets, CanonicalKey, Graph, VertexSet};
use crate::solver::{solve_with, SolveError, SolverCache, SolverConfig};
use std::collections::HashMap;
use thiserror::Error;

pub const DECISION_LIMIT: usize = 8;
pub const SUM_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaintError {
    #[error("graph has {n} vertices, above the paintability limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("token assignment has {got} entries for {n} vertices")]
    LengthMismatch { n: usize, got: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Tokens per vertex.
pub type TokenAssignment = Vec<u32>;

/// Paintability decisions sharing one memo table.
#[derive(Debug, Default)]
pub struct PaintChecker {
    memo: HashMap<CanonicalKey, bool>,
    pub decision_limit: usize,
    pub sum_limit: usize,
}

impl PaintChecker {
    pub fn new() -> Self {
        PaintChecker { memo: HashMap::new(), decision_limit: DECISION_LIMIT, sum_limit: SUM_LIMIT }
    }

    pub fn is_f_paintable(&mut self, g: &Graph, f: &[u32]) -> Result<bool, PaintError> {
        if f.len() != g.n() {
            return Err(PaintError::LengthMismatch { n: g.n(), got: f.len() });
        }
        if g.n() > self.decision_limit {
            return Err(PaintError::TooLarge { n: g.n(), limit: self.decision_limit });
        }
        Ok(self.paintable(g.clone(), f.to_vec()))
    }

    fn paintable(&mut self, mut g: Graph, mut f: Vec<u32>) -> bool {
        loop {
            if g.n() == 0 {
                return true;
            }
            if f.contains(&0) {
                return false;
            }
            if let Some(v) = f.iter().position(|&x| x == 1) {
                for u in g.neighbors(v) {
                    f[u] -= 1;
                }
                (g, f) = remove_vertices(&g, &f, VertexSet::singleton(v));
                continue;
            }
            let loose: VertexSet = (0..g.n()).filter(|&v| f[v] as usize > g.degree(v)).collect();
            if !loose.is_empty() {
                (g, f) = remove_vertices(&g, &f, loose);
                continue;
            }
            break;
        }
        let comps = g.components();
        if comps.len() > 1 {
            return comps.into_iter().all(|c| {
                let (h, fh) = remove_vertices(&g, &f, g.vertices() - c);
                self.paintable(h, fh)
            });
        }
        let key = canonical_key_colored(&g, &f);
        if let Some(&ans) = self.memo.get(&key) {
            return ans;
        }
        let all = g.vertices().bits();
        // largest marks first: they tend to refute fastest
        let ans = (1..=all).rev().all(|m| self.painter_answers(&g, &f, VertexSet(m)));
        self.memo.insert(key, ans);
        ans
    }

    /// Some maximal independent answer to `m` keeps Painter winning.
    fn painter_answers(&mut self, g: &Graph, f: &[u32], m: VertexSet) -> bool {
        maximal_independent_subsets(g, m).any(|i| {
            let passed = m - i;
            if passed.iter().any(|v| f[v] <= 1) {
                return false;
            }
            let mut next = f.to_vec();
            for v in passed {
                next[v] -= 1;
            }
            let (h, fh) = remove_vertices(g, &next, i);
            self.paintable(h, fh)
        })
    }

    /// `χ_SP(g)` with a witness assignment.
    pub fn sum_paintability_witness(
        &mut self,
        g: &Graph,
        cache: &SolverCache,
    ) -> Result<(u64, TokenAssignment), PaintError> {
        if g.n() > self.sum_limit {
            return Err(PaintError::TooLarge { n: g.n(), limit: self.sum_limit });
        }
        let mut total = 0;
        let mut witness = vec![0; g.n()];
        for c in g.components() {
            let h = g.induced(c);
            let (v, fh) = self.component_sum(&h, cache)?;
            total += v;
            for (x, &tokens) in c.iter().zip(&fh) {
                witness[x] = tokens;
            }
        }
        Ok((total, witness))
    }

    pub fn sum_paintability(&mut self, g: &Graph, cache: &SolverCache) -> Result<u64, PaintError> {
        self.sum_paintability_witness(g, cache).map(|(v, _)| v)
    }

    /// Least total over `1 ≤ f(v) ≤ deg(v) + 1`, scanning totals upward from
    /// `ŝ(h)` (Painter may always play as if holding a fixed allocation) to
    /// `|V| + |E|` (where `f = deg + 1` always works).
    fn component_sum(
        &mut self,
        h: &Graph,
        cache: &SolverCache,
    ) -> Result<(u64, TokenAssignment), PaintError> {
        let config = SolverConfig::with_limit(h.n());
        let lower = solve_with(h, cache, &config)?.value;
        let caps: Vec<u32> = (0..h.n()).map(|v| h.degree(v) as u32 + 1).collect();
        let upper = (h.n() + h.edge_count()) as u64;
        for total in lower..=upper {
            let mut seen = std::collections::HashSet::new();
            let mut found = None;
            for_each_assignment(&caps, total as u32, &mut |f| {
                if found.is_some() || !seen.insert(canonical_key_colored(h, f)) {
                    return;
                }
                if self.paintable(h.clone(), f.to_vec()) {
                    found = Some(f.to_vec());
                }
            });
            if let Some(f) = found {
                return Ok((total, f));
            }
        }
        unreachable!("f = deg + 1 is always paintable")
    }
}

/// `g - s` together with the matching token vector.
fn remove_vertices(g: &Graph, f: &[u32], s: VertexSet) -> (Graph, Vec<u32>) {
    let keep = g.vertices() - s;
    (g.induced(keep), keep.iter().map(|v| f[v]).collect())
}

/// Calls `visit` on every `f` with `1 ≤ f[v] ≤ caps[v]` and `Σ f = total`.
fn for_each_assignment(caps: &[u32], total: u32, visit: &mut dyn FnMut(&[u32])) {
    fn rec(caps: &[u32], i: usize, left: u32, f: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == caps.len() {
            if left == 0 {
                visit(f);
            }
            return;
        }
        let rest_min = (caps.len() - i - 1) as u32;
        let rest_max: u32 = caps[i + 1..].iter().sum();
        for x in 1..=caps[i] {
            if x + rest_min > left {
                break;
            }
            if x + rest_max < left {
                continue;
            }
            f.push(x);
            rec(caps, i + 1, left - x, f, visit);
            f.pop();
        }
    }
    rec(caps, 0, total, &mut Vec::with_capacity(caps.len()), visit);
}

pub fn is_f_paintable(g: &Graph, f: &[u32]) -> Result<bool, PaintError> {
    PaintChecker::new().is_f_paintable(g, f)
}

pub fn sum_paintability(g: &Graph) -> Result<u64, PaintError> {
    PaintChecker::new().sum_paintability(g, &SolverCache::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, non_isomorphic_graphs, parse_graph, FamilySpec, SplitMix64};
    use crate::solver::solve;

    fn g(s: &str) -> Graph {
        parse_graph(s).unwrap()
    }

    /// The game as defined: every mark, every independent answer, no
    /// reductions, memo on (remaining set, tokens).
    fn naive(g: &Graph, s: u64, f: &mut Vec<u32>, memo: &mut HashMap<(u64, Vec<u32>), bool>) -> bool {
        if s == 0 {
            return true;
        }
        let key = (s, f.clone());
        if let Some(&a) = memo.get(&key) {
            return a;
        }
        let mut ans = true;
        let mut m = s;
        while m != 0 && ans {
            let mut ok = false;
            let mut i = m;
            loop {
                if g.is_independent(VertexSet(i)) {
                    let passed = m & !i;
                    if VertexSet(passed).iter().all(|v| f[v] > 1) {
                        for v in VertexSet(passed) {
                            f[v] -= 1;
                        }
                        ok = naive(g, s & !i, f, memo);
                        for v in VertexSet(passed) {
                            f[v] += 1;
                        }
                    }
                }
                if ok || i == 0 {
                    break;
                }
                i = (i - 1) & m;
            }
            ans = ok;
            m = (m - 1) & s;
        }
        memo.insert(key, ans);
        ans
    }

    fn naive_paintable(g: &Graph, f: &[u32]) -> bool {
        naive(g, g.vertices().0, &mut f.to_vec(), &mut HashMap::new())
    }

    fn random_tokens(rng: &mut SplitMix64, n: usize, max: u64) -> Vec<u32> {
        (0..n).map(|_| 1 + (rng.next_u64() % max) as u32).collect()
    }

    #[test]
    fn decision_examples() {
        assert_eq!(is_f_paintable(&g("K2"), &[1, 2]), Ok(true));
        assert_eq!(is_f_paintable(&g("K2"), &[1, 1]), Ok(false));
        for n in 1..=6 {
            assert_eq!(is_f_paintable(&g(&format!("E{n}")), &vec![1; n]), Ok(true));
        }
        assert_eq!(is_f_paintable(&g("K3"), &[1, 2, 3]), Ok(true));
        assert_eq!(is_f_paintable(&g("K3"), &[2, 2, 2]), Ok(false));
        assert!(matches!(is_f_paintable(&g("P9"), &[2; 9]), Err(PaintError::TooLarge { .. })));
        assert!(matches!(is_f_paintable(&g("P3"), &[2; 2]), Err(PaintError::LengthMismatch { .. })));
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum_paintability(&g("K3")), Ok(6));
        assert_eq!(sum_paintability(&g("E3")), Ok(3));
        assert_eq!(sum_paintability(&g("P3")), Ok(5));
        assert_eq!(sum_paintability(&g("U(K3,K2)")), Ok(9));
        for n in 1..=6 {
            assert_eq!(sum_paintability(&g(&format!("K{n}"))), Ok((n * (n + 1) / 2) as u64));
        }
    }

    #[test]
    fn witness_is_paintable() {
        let mut pc = PaintChecker::new();
        let h = g("U(P4,S3)");
        let (v, f) = pc.sum_paintability_witness(&h, &SolverCache::new()).unwrap();
        assert_eq!(v, 7 + 5);
        assert_eq!(f.iter().map(|&x| x as u64).sum::<u64>(), v);
        assert!(naive_paintable(&h, &f));
        let big = g("U(P4,S4)");
        assert!(matches!(pc.sum_paintability(&big, &SolverCache::new()), Err(PaintError::TooLarge { .. })));
    }

    #[test]
    fn matches_naive_game() {
        let mut rng = SplitMix64::new(11);
        let mut pc = PaintChecker::new();
        for n in 1..=4 {
            for h in non_isomorphic_graphs(n) {
                for _ in 0..12 {
                    let f = random_tokens(&mut rng, n, 3);
                    assert_eq!(pc.is_f_paintable(&h, &f).unwrap(), naive_paintable(&h, &f), "{h:?} {f:?}");
                }
            }
        }
        for seed in 0..40 {
            let h = generate(&FamilySpec::RandomGnp { n: 5, p: 0.5, seed }).unwrap();
            let f = random_tokens(&mut rng, 5, 3);
            assert_eq!(pc.is_f_paintable(&h, &f).unwrap(), naive_paintable(&h, &f), "{h:?} {f:?}");
        }
    }

    #[test]
    fn forced_vertex_reduction() {
        let mut rng = SplitMix64::new(5);
        for seed in 0..60 {
            let n = 3 + (seed % 3) as usize;
            let h = generate(&FamilySpec::RandomGnp { n, p: 0.6, seed }).unwrap();
            let mut f = random_tokens(&mut rng, n, 3);
            let v = (rng.next_u64() % n as u64) as usize;
            f[v] = 1;
            let mut reduced = f.clone();
            for u in h.neighbors(v) {
                reduced[u] -= 1;
            }
            let (hv, fv) = remove_vertices(&h, &reduced, VertexSet::singleton(v));
            let lhs = naive_paintable(&h, &f);
            let rhs = !fv.contains(&0) && naive_paintable(&hv, &fv);
            assert_eq!(lhs, rhs, "{h:?} {f:?} v={v}");
        }
    }

    #[test]
    fn sandwiched_between_game_value_and_size() {
        let cache = SolverCache::new();
        let mut pc = PaintChecker::new();
        for n in 1..=5 {
            for h in non_isomorphic_graphs(n) {
                let sp = pc.sum_paintability(&h, &cache).unwrap();
                let s = solve(&h, &cache).unwrap().value;
                let size = (h.n() + h.edge_count()) as u64;
                assert!(s <= sp && sp <= size, "{h:?}");
                let complete = h.components_complete_within(h.vertices());
                assert_eq!(s == sp, complete, "{h:?}");
                assert_eq!(s == size, complete, "{h:?}");
            }
        }
    }
}
