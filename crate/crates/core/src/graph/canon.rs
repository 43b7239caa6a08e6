//! Canonical labeling.
//!
//! Colour refinement to an equitable ordered partition, then a backtracking
//! search that individualizes vertices of the first non-singleton cell. Every
//! leaf is a relabeling; the key is the smallest adjacency bit string among
//! the leaves. Refinement orders cells by invariant data only, so the set of
//! leaves (up to relabeling) does not depend on the input labels.
//!
//! Two vertices of the same cell with `N(u) - v == N(v) - u` are swapped by
//! an automorphism that fixes everything else, so only one of them is
//! branched on. That keeps cliques, empty graphs and complete multipartite
//! graphs cheap.

use super::{Graph, VertexSet};
use std::fmt;

/// Isomorphism-invariant encoding of a graph: vertex count, optional vertex
/// colours in canonical order, then the upper triangle of the canonical
/// adjacency matrix packed most-significant-bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    /// Parses the hex form of an uncoloured key, checking the length against
    /// the encoded vertex count.
    pub fn from_hex(s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        let n = *bytes.first()? as usize;
        if n > 64 || bytes.len() != 1 + adjacency_bytes(n) {
            return None;
        }
        Some(CanonicalKey(bytes))
    }

    /// Rebuilds the canonical representative (uncoloured keys only).
    pub fn to_graph(&self) -> Graph {
        let n = self.vertex_count();
        let bits = &self.0[1..];
        let mut g = Graph::empty(n).expect("n <= 64");
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k / 8] >> (7 - k % 8) & 1 == 1 {
                    g.add_edge(i, j).expect("in range");
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

fn adjacency_bytes(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(8)
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_form(g, None).0
}

/// Key for a vertex-coloured graph; isomorphisms must preserve colours.
pub fn canonical_key_colored(g: &Graph, colors: &[u32]) -> CanonicalKey {
    canonical_form(g, Some(colors)).0
}

/// Canonical key plus the canonical order: `order[p]` is the input vertex
/// placed at canonical position `p`.
pub fn canonical_form(g: &Graph, colors: Option<&[u32]>) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    if let Some(c) = colors {
        assert_eq!(c.len(), n, "one colour per vertex");
    }
    let mut search = Search {
        adj: g.adjacency(),
        n,
        best: None,
        best_order: Vec::new(),
    };
    let cells = initial_partition(n, colors);
    search.run(cells);
    let order = search.best_order;

    let mut bytes = Vec::with_capacity(1 + adjacency_bytes(n));
    bytes.push(n as u8);
    if let Some(c) = colors {
        for &v in &order {
            bytes.extend_from_slice(&c[v].to_le_bytes());
        }
    }
    let mut cur = 0u8;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                cur |= 1 << (7 - k % 8);
            }
            k += 1;
            if k % 8 == 0 {
                bytes.push(cur);
                cur = 0;
            }
        }
    }
    if k % 8 != 0 {
        bytes.push(cur);
    }
    (CanonicalKey(bytes), order)
}

fn initial_partition(n: usize, colors: Option<&[u32]>) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    match colors {
        None => vec![VertexSet::full(n).0],
        Some(c) => {
            let mut values: Vec<u32> = c.to_vec();
            values.sort_unstable();
            values.dedup();
            values
                .iter()
                .map(|&col| (0..n).filter(|&v| c[v] == col).fold(0u64, |m, v| m | 1 << v))
                .collect()
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    best: Option<Vec<u64>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<u64>) {
        self.refine(&mut cells);
        if cells.len() == self.n {
            self.leaf(&cells);
            return;
        }
        let ci = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = cells[ci];
        let mut tried: Vec<usize> = Vec::new();
        for v in VertexSet(cell) {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ci]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[ci + 1..]);
            self.run(child);
        }
    }

    #[inline]
    fn twins(&self, u: usize, v: usize) -> bool {
        self.adj[u] & !(1 << v) == self.adj[v] & !(1 << u)
    }

    /// Splits cells by neighbour counts into other cells until stable.
    /// Fragments are ordered by count, so the result is label independent.
    fn refine(&self, cells: &mut Vec<u64>) {
        let mut counts = [0u32; 64];
        'restart: loop {
            for wi in 0..cells.len() {
                let w = cells[wi];
                for ci in 0..cells.len() {
                    let c = cells[ci];
                    if c & (c - 1) == 0 {
                        continue;
                    }
                    let mut lo = u32::MAX;
                    let mut hi = 0;
                    for v in VertexSet(c) {
                        let k = (self.adj[v] & w).count_ones();
                        counts[v] = k;
                        lo = lo.min(k);
                        hi = hi.max(k);
                    }
                    if lo == hi {
                        continue;
                    }
                    let mut keys: Vec<u32> = VertexSet(c).iter().map(|v| counts[v]).collect();
                    keys.sort_unstable();
                    keys.dedup();
                    let frags: Vec<u64> = keys
                        .iter()
                        .map(|&k| {
                            VertexSet(c)
                                .iter()
                                .filter(|&v| counts[v] == k)
                                .fold(0u64, |m, v| m | 1 << v)
                        })
                        .collect();
                    cells.splice(ci..=ci, frags);
                    continue 'restart;
                }
            }
            break;
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = certificate(self.adj, &order);
        let better = match &self.best {
            None => true,
            Some(b) => cert < *b,
        };
        if better {
            self.best = Some(cert);
            self.best_order = order;
        }
    }
}

/// Upper triangle of the relabeled adjacency matrix as a bit string packed
/// MSB-first into words, so `Vec<u64>` ordering is bit-string ordering.
fn certificate(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut words = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        let row = adj[order[i]];
        for &vj in &order[i + 1..] {
            if row >> vj & 1 == 1 {
                words[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    words
}
