//! Subset enumeration and small-graph corpora.

use super::{canonical_key, Graph, VertexSet};
use std::collections::HashSet;

/// Maximal independent subsets of `m` (maximal within `m`), each once.
///
/// Bron–Kerbosch with pivoting on the complement of `g[m]`.
pub fn maximal_independent_subsets(g: &Graph, m: VertexSet) -> MaximalIndependentSets<'_> {
    let m = m & g.vertices();
    MaximalIndependentSets {
        adj: g.adjacency(),
        m,
        stack: vec![BkFrame::new(g.adjacency(), m, VertexSet::EMPTY, m, VertexSet::EMPTY)],
        empty_pending: m.is_empty(),
    }
}

struct BkFrame {
    r: VertexSet,
    p: VertexSet,
    x: VertexSet,
    cands: VertexSet,
}

impl BkFrame {
    fn new(adj: &[u64], m: VertexSet, r: VertexSet, p: VertexSet, x: VertexSet) -> Self {
        // pivot: vertex of p | x with most non-neighbours in p
        let px = p | x;
        let pivot = px.iter().max_by_key(|&u| (non_nbrs(adj, m, u) & p).len());
        let cands = match pivot {
            Some(u) => p - non_nbrs(adj, m, u),
            None => VertexSet::EMPTY,
        };
        BkFrame { r, p, x, cands }
    }
}

#[inline]
fn non_nbrs(adj: &[u64], m: VertexSet, v: usize) -> VertexSet {
    VertexSet(m.0 & !adj[v] & !(1 << v))
}

pub struct MaximalIndependentSets<'a> {
    adj: &'a [u64],
    m: VertexSet,
    stack: Vec<BkFrame>,
    empty_pending: bool,
}

impl Iterator for MaximalIndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.empty_pending {
            self.empty_pending = false;
            self.stack.clear();
            return Some(VertexSet::EMPTY);
        }
        while let Some(top) = self.stack.last_mut() {
            let Some(v) = top.cands.lowest() else {
                self.stack.pop();
                continue;
            };
            top.cands.remove(v);
            let nv = non_nbrs(self.adj, self.m, v);
            let r = top.r | VertexSet::singleton(v);
            let p = top.p & nv;
            let x = top.x & nv;
            top.p.remove(v);
            top.x.insert(v);
            if p.is_empty() {
                if x.is_empty() {
                    return Some(r);
                }
                continue;
            }
            let frame = BkFrame::new(self.adj, self.m, r, p, x);
            self.stack.push(frame);
        }
        None
    }
}

/// Every nonempty `M ⊆ within` with `g[M]` connected, each exactly once.
///
/// Sets are grown from their lowest vertex. A node `(S, C, X)` stands for all
/// connected supersets of `S` avoiding `X`; they split by the first frontier
/// vertex of `C` they contain.
pub fn connected_subsets(g: &Graph, within: VertexSet) -> ConnectedSubsets<'_> {
    ConnectedSubsets {
        adj: g.adjacency(),
        roots: within & g.vertices(),
        allowed: VertexSet::EMPTY,
        stack: Vec::new(),
    }
}

struct GrowFrame {
    set: VertexSet,
    cands: VertexSet,
    excluded: VertexSet,
}

pub struct ConnectedSubsets<'a> {
    adj: &'a [u64],
    roots: VertexSet,
    allowed: VertexSet,
    stack: Vec<GrowFrame>,
}

impl Iterator for ConnectedSubsets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(top) = self.stack.last_mut() {
                let Some(w) = top.cands.lowest() else {
                    self.stack.pop();
                    continue;
                };
                top.cands.remove(w);
                let excluded = top.excluded;
                top.excluded.insert(w);
                let set = top.set | VertexSet::singleton(w);
                let cands =
                    (top.cands | (VertexSet(self.adj[w]) & self.allowed)) - set - excluded;
                self.stack.push(GrowFrame { set, cands, excluded });
                return Some(set);
            }
            let v = self.roots.lowest()?;
            self.roots.remove(v);
            self.allowed = self.roots;
            let set = VertexSet::singleton(v);
            self.stack.push(GrowFrame {
                set,
                cands: VertexSet(self.adj[v]) & self.allowed,
                excluded: VertexSet::EMPTY,
            });
            return Some(set);
        }
    }
}

/// All labeled graphs on `n` vertices (`2^(n(n-1)/2)` of them), `n <= 8`.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labeled enumeration is limited to n <= 8");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("valid pairs")
    })
}

/// One representative per isomorphism class on `n` vertices, `n <= 7`,
/// in order of first appearance in [`all_graphs`].
pub fn non_isomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "isomorphism-class enumeration is limited to n <= 7");
    let mut seen = HashSet::new();
    all_graphs(n)
        .filter(|g| seen.insert(canonical_key(g)))
        .map(|g| canonical_key(&g).to_graph())
        .collect()
}

/// Non-isomorphic trees on `n` vertices by canonical extension: attach a
/// leaf everywhere to every tree on `n - 1` vertices and keep one graph per
/// canonical key.
pub fn non_isomorphic_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1).expect("n = 1")];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut g = t.disjoint_union(&Graph::empty(1).expect("n = 1")).expect("<= 64");
                g.add_edge(v, size - 1).expect("in range");
                let key = canonical_key(&g);
                if seen.insert(key.clone()) {
                    next.push(key.to_graph());
                }
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn sets(it: impl Iterator<Item = VertexSet>) -> Vec<Vec<usize>> {
        let mut v: Vec<_> = it.map(|s| s.to_vec()).collect();
        v.sort();
        v
    }

    fn brute_mis(g: &Graph, m: VertexSet) -> Vec<Vec<usize>> {
        let members = m.to_vec();
        let mut out = Vec::new();
        for mask in 0u64..1 << members.len() {
            let s: VertexSet = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if !g.is_independent(s) {
                continue;
            }
            let maximal = (m - s).iter().all(|v| !g.is_independent(s | VertexSet::singleton(v)));
            if maximal {
                out.push(s.to_vec());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn mis_examples() {
        let k2 = generate(&FamilySpec::Complete(2)).unwrap();
        assert_eq!(sets(maximal_independent_subsets(&k2, k2.vertices())), vec![vec![0], vec![1]]);
        let k22 = generate(&FamilySpec::CompleteBipartite(2, 2)).unwrap();
        assert_eq!(
            sets(maximal_independent_subsets(&k22, k22.vertices())),
            vec![vec![0, 1], vec![2, 3]]
        );
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(sets(maximal_independent_subsets(&e3, e3.vertices())), vec![vec![0, 1, 2]]);
        assert_eq!(sets(maximal_independent_subsets(&e3, VertexSet::EMPTY)), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn mis_matches_brute_force() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                for m in 0u64..1 << n {
                    let m = VertexSet(m);
                    assert_eq!(sets(maximal_independent_subsets(&g, m)), brute_mis(&g, m));
                }
            }
        }
    }

    #[test]
    fn connected_subset_examples() {
        let p3 = generate(&FamilySpec::Path(3)).unwrap();
        assert_eq!(
            sets(connected_subsets(&p3, p3.vertices())),
            vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![1], vec![1, 2], vec![2]]
        );
        let e2 = Graph::empty(2).unwrap();
        assert_eq!(sets(connected_subsets(&e2, e2.vertices())), vec![vec![0], vec![1]]);
        let k3 = generate(&FamilySpec::Complete(3)).unwrap();
        assert_eq!(connected_subsets(&k3, k3.vertices()).count(), 7);
    }

    #[test]
    fn connected_subsets_match_brute_force() {
        for n in 0..=6 {
            for g in non_isomorphic_graphs(n) {
                let mut expect: Vec<u64> = (1u64..1 << n)
                    .filter(|&m| g.is_connected_within(VertexSet(m)))
                    .collect();
                let mut got: Vec<u64> = connected_subsets(&g, g.vertices()).map(|s| s.0).collect();
                got.sort();
                expect.sort();
                assert_eq!(got, expect, "{g:?}");
            }
        }
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| non_isomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| non_isomorphic_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
    }
}
