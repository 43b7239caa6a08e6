//! Bitmask graphs on at most 64 vertices.
//!
//! A [`Graph`] stores one neighbor mask per vertex; a [`VertexSet`] is a mask
//! over the vertices of some graph. Everything else in the crate works on
//! these two types, usually by carrying the original graph around together
//! with the set of vertices that are still present instead of materializing
//! induced subgraphs.

mod canon;
mod enumerate;
mod family;
mod parse;
mod set;

pub use canon::{canonical_form, canonical_key, canonical_key_colored, CanonicalKey};
pub use enumerate::{
    all_graphs, connected_subsets, maximal_independent_subsets, non_isomorphic_graphs,
    non_isomorphic_trees, ConnectedSubsets, MaximalIndependentSets,
};
pub use family::{generate, FamilySpec, SplitMix64};
pub use parse::{parse_graph, parse_spec, ParseError};
pub use set::VertexSet;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph with vertices `0..n`.
///
/// Adjacency is symmetric and irreflexive and no mask has bits at or above
/// `n`; every constructor maintains this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}; ", self.n)?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{u}-{v}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks, symmetrizing them.
    pub fn from_adjacency(adj: &[u64]) -> Result<Self, GraphError> {
        let n = adj.len();
        let mut g = Graph::empty(n)?;
        for (u, &mask) in adj.iter().enumerate() {
            for v in VertexSet(mask) {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Degree of `v` counting only neighbors inside `within`.
    #[inline]
    pub fn degree_within(&self, v: usize, within: VertexSet) -> usize {
        (self.adj[v] & within.0).count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of edges with both ends in `s`.
    pub fn edge_count_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.degree_within(v, s)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !(2u64 << u).wrapping_sub(1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// True iff no edge has both ends in `s`.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    /// Induced subgraph on `V \ s`, relabeled so surviving vertices keep
    /// their relative order.
    pub fn delete_vertices(&self, s: VertexSet) -> Graph {
        self.induced(self.vertices() - s)
    }

    /// Induced subgraph on `keep`, relabeled `0..|keep|` in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertices();
        let order: Vec<usize> = keep.iter().collect();
        let mut pos = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                (VertexSet(self.adj[v]) & keep)
                    .iter()
                    .fold(0u64, |m, w| m | 1 << pos[w])
            })
            .collect();
        Graph { n: order.len(), adj }
    }

    /// Relabels with `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in VertexSet(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Vertices reachable from `start` inside `within` (including `start`).
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v];
            }
            frontier = (VertexSet(next) & within) - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Connected components of the induced subgraph on `within`, ordered by
    /// their lowest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within & self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.lowest() {
            let c = self.reach(v, rest);
            rest = rest - c;
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.lowest() {
            None => true,
            Some(v) => self.reach(v, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// True iff the induced subgraph on `within` has no cycle.
    pub fn is_forest_within(&self, within: VertexSet) -> bool {
        let comps = self.components_within(within).len();
        self.edge_count_within(within) + comps == within.len()
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// True iff every component of the induced subgraph on `within` is a clique.
    pub fn components_complete_within(&self, within: VertexSet) -> bool {
        within
            .iter()
            .all(|v| self.adj[v] & within.0 == self.reach(v, within).0 & !(1 << v))
    }

    /// Disjoint union; `other`'s vertices follow this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&a| a << self.n));
        Ok(Graph { n, adj })
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n);
        let right = g.vertices() - left;
        for v in left {
            g.adj[v] |= right.0;
        }
        for v in right {
            g.adj[v] |= left.0;
        }
        Ok(g)
    }

    /// Edge-list text accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("n={}; {}", self.n, edges.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        generate(&FamilySpec::Complete(n)).unwrap()
    }

    #[test]
    fn delete_vertices_examples() {
        let k2 = k(2);
        let g = k2.delete_vertices(VertexSet::singleton(0));
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);

        let star = generate(&FamilySpec::Star(4)).unwrap();
        let g = star.delete_vertices(VertexSet::singleton(0));
        assert_eq!((g.n(), g.edge_count()), (3, 0));

        let k32 = generate(&FamilySpec::CompleteBipartite(3, 2)).unwrap();
        let g = k32.delete_vertices(VertexSet::from_iter([3, 4]));
        assert_eq!((g.n(), g.edge_count()), (3, 0));
    }

    #[test]
    fn delete_keeps_surviving_edges() {
        let g = parse_graph("n=5; 0-1,1-2,2-3,3-4,0-4,1-3").unwrap();
        let h = g.delete_vertices(VertexSet::singleton(2));
        // survivors 0,1,3,4 -> 0,1,2,3
        let mut e: Vec<_> = h.edges().collect();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn components_examples() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert_eq!(p4.components(), vec![VertexSet::full(4)]);
        let two_k2 = parse_graph("U(K2,K2)").unwrap();
        let c = two_k2.components();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|s| s.len() == 2));
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.components().len(), 3);
    }

    #[test]
    fn is_independent_examples() {
        let k22 = generate(&FamilySpec::CompleteBipartite(2, 2)).unwrap();
        assert!(k22.is_independent(VertexSet::from_iter([0, 1])));
        assert!(!k(2).is_independent(VertexSet::full(2)));
        assert!(k(3).is_independent(VertexSet::EMPTY));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn edges_on_full_width_graph() {
        let g = Graph::from_edges(64, [(0, 63), (62, 63)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 63), (62, 63)]);
        assert_eq!(g.complement().edge_count(), 64 * 63 / 2 - 2);
    }

    #[test]
    fn forest_and_completeness() {
        let p4 = generate(&FamilySpec::Path(4)).unwrap();
        assert!(p4.is_tree());
        assert!(!generate(&FamilySpec::Cycle(4)).unwrap().is_forest_within(VertexSet::full(4)));
        let g = parse_graph("U(K3,K2)").unwrap();
        assert!(g.components_complete_within(g.vertices()));
        assert!(!p4.components_complete_within(p4.vertices()));
    }
}
