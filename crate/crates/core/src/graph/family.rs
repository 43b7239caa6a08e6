//! Named graph families with fixed vertex numbering.
//!
//! | family | numbering |
//! |---|---|
//! | `Path(n)` | `0-1-…-(n-1)` |
//! | `Cycle(n)` | path plus `(n-1)-0`; `n < 3` gives the path |
//! | `Star(n)` | centre `0`, leaves `1..n` |
//! | `CompleteBipartite(r, s)` | parts `0..r`, `r..r+s` |
//! | `CompleteMultipartite(parts)` | parts contiguous, in the given order |
//! | `JoinEmptyClique(r, s)` | independent side `0..r`, clique `r..r+s` |
//! | `PathPower(n, k)` | `i ~ j` iff `1 <= |i-j| <= k` |
//! | `Grid2xK(k)` | rows `0..k` and `k..2k` are paths, rungs `i ~ k+i` |
//! | `RandomGnp(n, p, seed)` | pairs `(i, j)`, `i < j`, visited lexicographically; one [`SplitMix64`] draw each |
//! | `Union(a, b)`, `Join(a, b)` | `a`'s vertices first, then `b`'s shifted by `|a|` |

use super::{Graph, GraphError, VertexSet, MAX_VERTICES};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// Independent set of size `r` joined to a clique of size `s`.
    JoinEmptyClique(usize, usize),
    PathPower(usize, usize),
    Grid2xK(usize),
    RandomGnp { n: usize, p: f64, seed: u64 },
    Union(Box<FamilySpec>, Box<FamilySpec>),
    Join(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    /// Vertex count of the generated graph (may exceed the 64 cap).
    pub fn order(&self) -> usize {
        use FamilySpec::*;
        match self {
            Path(n) | Cycle(n) | Star(n) | Complete(n) | Empty(n) | PathPower(n, _) => *n,
            RandomGnp { n, .. } => *n,
            CompleteBipartite(r, s) | JoinEmptyClique(r, s) => r + s,
            CompleteMultipartite(parts) => parts.iter().sum(),
            Grid2xK(k) => 2 * k,
            Union(a, b) | Join(a, b) => a.order() + b.order(),
        }
    }
}

/// DSL form accepted by [`super::parse_spec`].
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Path(n) => write!(f, "P{n}"),
            Cycle(n) => write!(f, "C{n}"),
            Star(n) => write!(f, "S{n}"),
            Complete(n) => write!(f, "K{n}"),
            Empty(n) => write!(f, "E{n}"),
            CompleteBipartite(r, s) => write!(f, "K{r},{s}"),
            CompleteMultipartite(parts) => {
                let p: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "KM[{}]", p.join(","))
            }
            JoinEmptyClique(r, s) => write!(f, "J({r},{s})"),
            PathPower(n, k) => write!(f, "P{n}^{k}"),
            Grid2xK(k) => write!(f, "GRID{k}"),
            RandomGnp { n, p, seed } => write!(f, "GNP({n},{p},{seed})"),
            Union(a, b) => write!(f, "U({a},{b})"),
            Join(a, b) => write!(f, "JOIN({a},{b})"),
        }
    }
}

/// SplitMix64. Small, fully specified, and trivially reimplemented elsewhere,
/// which keeps seeded corpora identical across implementations.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, GraphError> {
    use FamilySpec::*;
    let n = spec.order();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let g = match spec {
        Path(n) => Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))?,
        Cycle(n) => {
            let mut g = generate(&Path(*n))?;
            if *n >= 3 {
                g.add_edge(n - 1, 0)?;
            }
            g
        }
        Star(n) => Graph::from_edges(*n, (1..*n).map(|i| (0, i)))?,
        Complete(n) => Graph::empty(*n)?.complement(),
        Empty(n) => Graph::empty(*n)?,
        CompleteBipartite(r, s) => generate(&CompleteMultipartite(vec![*r, *s]))?,
        CompleteMultipartite(parts) => {
            let mut adj = Vec::with_capacity(n);
            let all = VertexSet::full(n);
            let mut start = 0;
            for &size in parts {
                let part = VertexSet::full(start + size) - VertexSet::full(start);
                adj.extend(std::iter::repeat_n((all - part).0, size));
                start += size;
            }
            Graph::from_adjacency(&adj)?
        }
        JoinEmptyClique(r, s) => Graph::empty(*r)?.join(&generate(&Complete(*s))?)?,
        PathPower(n, k) => Graph::from_edges(
            *n,
            (0..*n).flat_map(|i| (i + 1..(*n).min(i + k + 1)).map(move |j| (i, j))),
        )?,
        Grid2xK(k) => {
            let top = (1..*k).map(|i| (i - 1, i));
            let bottom = (1..*k).map(|i| (k + i - 1, k + i));
            let rungs = (0..*k).map(|i| (i, k + i));
            Graph::from_edges(2 * k, top.chain(bottom).chain(rungs).collect::<Vec<_>>())?
        }
        RandomGnp { n, p, seed } => {
            let mut rng = SplitMix64::new(*seed);
            let mut g = Graph::empty(*n)?;
            for i in 0..*n {
                for j in i + 1..*n {
                    if rng.next_f64() < *p {
                        g.add_edge(i, j)?;
                    }
                }
            }
            g
        }
        Union(a, b) => generate(a)?.disjoint_union(&generate(b)?)?,
        Join(a, b) => generate(a)?.join(&generate(b)?)?,
    };
    Ok(g)
}
