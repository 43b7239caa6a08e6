//! Classical parameters the cost bounds are stated in: independence number,
//! matching number, chromatic sum and Hall ratio.

use crate::graph::{maximal_independent_subsets, Graph, VertexSet};
use num_rational::Ratio;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Exact non-negative rational.
pub type Rational = Ratio<u64>;

/// Largest graph the Hall-ratio subset table is built for.
pub const HALL_RATIO_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("the Hall ratio of the empty graph is undefined")]
    EmptyGraph,
    #[error("graph on {n} vertices exceeds the limit of {limit} for this computation")]
    TooLarge { n: usize, limit: usize },
}

/// Maximum size of an independent set, by branching on a vertex of maximum
/// degree (exclude it, or take it and drop its neighbours).
pub fn independence_number(g: &Graph) -> usize {
    alpha_within(g, g.vertices())
}

/// Independence number of `g[s]`.
pub fn alpha_within(g: &Graph, s: VertexSet) -> usize {
    let Some((v, deg)) = s.iter().map(|v| (v, g.degree_within(v, s))).max_by_key(|&(_, d)| d)
    else {
        return 0;
    };
    if deg == 0 {
        return s.len();
    }
    let without = alpha_within(g, s - VertexSet::singleton(v));
    if without >= s.len() - deg {
        // taking v can give at most 1 + |s| - 1 - deg
        return without;
    }
    let with = 1 + alpha_within(g, s - g.neighbors(v) - VertexSet::singleton(v));
    without.max(with)
}

/// Maximum matching size by branch and bound on the lowest vertex: leave it
/// unmatched or match it to each neighbour.
pub fn max_matching(g: &Graph) -> usize {
    matching_within(g, g.vertices())
}

fn matching_within(g: &Graph, s: VertexSet) -> usize {
    // isolated vertices never matter
    let live: VertexSet = s.iter().filter(|&v| g.degree_within(v, s) > 0).collect();
    let Some(v) = live.lowest() else {
        return 0;
    };
    let ceiling = live.len() / 2;
    let mut best = 0;
    for u in g.neighbors(v) & live {
        let m = 1 + matching_within(g, live - VertexSet::singleton(v) - VertexSet::singleton(u));
        best = best.max(m);
        if best == ceiling {
            return best;
        }
    }
    best.max(matching_within(g, live - VertexSet::singleton(v)))
}

/// Minimum over proper colourings by positive integers of the colour sum.
///
/// `Σ(S) = |S| + min Σ(S - I)` over maximal independent `I ⊆ S`: colour
/// class 1 is `I`, and every later class pays one more per vertex. Only
/// maximal `I` is needed: a vertex that could join class 1 can be recoloured
/// 1 without breaking properness and without raising the sum.
pub fn chromatic_sum(g: &Graph) -> u64 {
    let mut memo = HashMap::new();
    g.components()
        .into_iter()
        .map(|c| chromatic_sum_within(g, c, &mut memo))
        .sum()
}

fn chromatic_sum_within(g: &Graph, s: VertexSet, memo: &mut HashMap<u64, u64>) -> u64 {
    if s.is_empty() {
        return 0;
    }
    if let Some(&v) = memo.get(&s.0) {
        return v;
    }
    let mut best = u64::MAX;
    for i in maximal_independent_subsets(g, s) {
        best = best.min(chromatic_sum_within(g, s - i, memo));
    }
    let value = s.len() as u64 + best;
    memo.insert(s.0, value);
    value
}

/// Independence number of every induced subgraph, indexed by vertex mask.
fn alpha_table(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut table = vec![0u8; 1 << n];
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        let nbrs = g.neighbors(v).0 as usize;
        table[s] = table[rest].max(1 + table[rest & !nbrs]);
    }
    table
}

/// `max |S| / α(g[S])` over nonempty vertex sets. Induced subgraphs suffice:
/// deleting edges never lowers α.
pub fn hall_ratio(g: &Graph) -> Result<Rational, InvariantError> {
    let n = g.n();
    if n == 0 {
        return Err(InvariantError::EmptyGraph);
    }
    if n > HALL_RATIO_MAX_VERTICES {
        return Err(InvariantError::TooLarge { n, limit: HALL_RATIO_MAX_VERTICES });
    }
    let table = alpha_table(g);
    let mut best = Rational::from_integer(1);
    for (s, &alpha) in table.iter().enumerate().skip(1) {
        let r = Rational::new(s.count_ones() as u64, alpha as u64);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// Every classical bound on the sum-colour cost, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub edges: usize,
    pub alpha: usize,
    /// Matching number of the complement.
    pub q: usize,
    pub chromatic_sum: u64,
    pub hall_ratio: Rational,
    /// `2n - α`
    pub lower_2n_minus_alpha: u64,
    /// `n²/(2α) + n/2`
    pub lower_quadratic: Rational,
    /// `n·ρ`
    pub upper_n_rho: Rational,
    /// `|V| + |E|`
    pub upper_v_plus_e: u64,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "n,edges,alpha,q,chromatic_sum,hall_ratio,lower_2n_minus_alpha,lower_quadratic,upper_n_rho,upper_v_plus_e";

    /// Largest of the lower bounds, rounded up to an integer.
    pub fn best_lower(&self) -> u64 {
        let quad = self.lower_quadratic.ceil().to_integer();
        self.chromatic_sum.max(self.lower_2n_minus_alpha).max(quad)
    }

    /// Smallest of the upper bounds, rounded down to an integer.
    pub fn best_upper(&self) -> u64 {
        self.upper_n_rho.floor().to_integer().min(self.upper_v_plus_e)
    }

    /// True iff `value` satisfies every bound in the report.
    pub fn admits(&self, value: u64) -> bool {
        let v = Rational::from_integer(value);
        value >= self.chromatic_sum
            && value >= self.lower_2n_minus_alpha
            && v >= self.lower_quadratic
            && v <= self.upper_n_rho
            && value <= self.upper_v_plus_e
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.edges,
            self.alpha,
            self.q,
            self.chromatic_sum,
            self.hall_ratio,
            self.lower_2n_minus_alpha,
            self.lower_quadratic,
            self.upper_n_rho,
            self.upper_v_plus_e
        )
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, |E| = {}, alpha = {}, q = {}", self.n, self.edges, self.alpha, self.q)?;
        writeln!(f, "chromatic sum     {}", self.chromatic_sum)?;
        writeln!(f, "Hall ratio        {}", self.hall_ratio)?;
        writeln!(f, "2n - alpha        {}", self.lower_2n_minus_alpha)?;
        writeln!(f, "n^2/(2a) + n/2    {}", self.lower_quadratic)?;
        writeln!(f, "n * rho           {}", self.upper_n_rho)?;
        write!(f, "|V| + |E|         {}", self.upper_v_plus_e)
    }
}

pub fn bound_report(g: &Graph) -> Result<BoundReport, InvariantError> {
    let n = g.n();
    let rho = hall_ratio(g)?;
    let alpha = independence_number(g);
    let nn = n as u64;
    Ok(BoundReport {
        n,
        edges: g.edge_count(),
        alpha,
        q: max_matching(&g.complement()),
        chromatic_sum: chromatic_sum(g),
        hall_ratio: rho,
        lower_2n_minus_alpha: 2 * nn - alpha as u64,
        lower_quadratic: Rational::new(nn * nn, 2 * alpha as u64) + Rational::new(nn, 2),
        upper_n_rho: rho * nn,
        upper_v_plus_e: nn + g.edge_count() as u64,
    })
}
