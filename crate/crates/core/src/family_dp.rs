//! Closed forms and polynomial dynamic programs for structured families.
//!
//! | family | value |
//! |---|---|
//! | path `P_n` | `⌊3n/2⌋` |
//! | star on `n` vertices | `n + u(n-1)` |
//! | clique `K_n` | `C(n+1, 2)` |
//! | empty `E_n` | `n` |
//! | `E_r ∨ K_s` | `r + C(s+1, 2) + s·u(r)` |
//! | complete multipartite, parts ≤ 2, `q` parts of size 2 | `C(n-q+1, 2) + C(q+1, 2)` |
//!
//! `u(t)` is the largest `k` with `k(k+1)/2 ≤ t`.

use crate::graph::{generate, FamilySpec};
use crate::invariants::Rational;
use crate::solver::{solve_with, SolveError, SolverCache, SolverConfig};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("table of {cells} cells exceeds the budget of {budget}")]
    Budget { cells: usize, budget: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Largest table (in cells) the DP builders will allocate.
pub const TABLE_BUDGET: usize = 1 << 24;

/// `t_k = C(k+1, 2)`.
pub fn triangular(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// Largest `k` with `t_k ≤ t`, by integer square root.
pub fn u(t: u64) -> u64 {
    ((8 * t + 1).isqrt() - 1) / 2
}

fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Value for the α ≤ 2 class: complete multipartite with `n` vertices of
/// which `q` pairs form 2-parts.
pub fn alpha_two_value(n: u64, q: u64) -> u64 {
    binom2(n - q + 1) + binom2(q + 1)
}

/// `ŝ(E_r ∨ K_s)`.
pub fn join_value(r: u64, s: u64) -> u64 {
    r + triangular(s) + s * u(r)
}

/// Exact value where a formula is known, `None` otherwise.
pub fn closed_form(spec: &FamilySpec) -> Option<u64> {
    use FamilySpec::*;
    let v = match spec {
        Path(n) => 3 * *n as u64 / 2,
        Star(n) => star_value(*n as u64),
        Complete(n) => triangular(*n as u64),
        Empty(n) => *n as u64,
        JoinEmptyClique(r, s) => join_value(*r as u64, *s as u64),
        CompleteBipartite(r, s) => return multipartite_closed_form(&[*r, *s]),
        CompleteMultipartite(parts) => return multipartite_closed_form(parts),
        Cycle(n) => match n {
            0..=2 => return closed_form(&Path(*n)),
            3 => 6,
            4 => 6,
            // complement is C5 again: α = 2, q = 2
            5 => alpha_two_value(5, 2),
            _ => return None,
        },
        PathPower(n, k) => match (n, k) {
            (_, 0) => *n as u64,
            (_, 1) => return closed_form(&Path(*n)),
            _ if k + 1 >= *n => triangular(*n as u64),
            _ => return None,
        },
        Grid2xK(k) => match k {
            0 => 0,
            1 => 3,
            2 => 6,
            _ => return None,
        },
        RandomGnp { .. } => return None,
        Union(a, b) => closed_form(a)? + closed_form(b)?,
        Join(a, b) => match (a.as_ref(), b.as_ref()) {
            (Empty(r), Complete(s)) | (Complete(s), Empty(r)) => join_value(*r as u64, *s as u64),
            (Empty(r), Empty(s)) => return multipartite_closed_form(&[*r, *s]),
            (Complete(r), Complete(s)) => triangular((r + s) as u64),
            _ => return None,
        },
    };
    Some(v)
}

fn star_value(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n + u(n - 1)
    }
}

fn multipartite_closed_form(parts: &[usize]) -> Option<u64> {
    let parts: Vec<u64> = parts.iter().filter(|&&p| p > 0).map(|&p| p as u64).collect();
    let n: u64 = parts.iter().sum();
    if parts.len() <= 1 {
        return Some(n);
    }
    if parts.iter().all(|&p| p <= 2) {
        let q = parts.iter().filter(|&&p| p == 2).count() as u64;
        return Some(alpha_two_value(n, q));
    }
    if parts.len() == 2 && parts.contains(&1) {
        return Some(star_value(n));
    }
    None
}

/// Exact `ŝ(K_{r,s})` for all `r ≤ r_max`, `s ≤ s_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteTable {
    pub r_max: usize,
    pub s_max: usize,
    values: Vec<u64>,
}

impl BipartiteTable {
    pub fn get(&self, r: usize, s: usize) -> u64 {
        assert!(r <= self.r_max && s <= self.s_max, "({r},{s}) outside the table");
        self.values[r * (self.s_max + 1) + s]
    }

    fn set(&mut self, r: usize, s: usize, v: u64) {
        self.values[r * (self.s_max + 1) + s] = v;
    }

    /// `r,s,value`, row-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,s,value\n");
        for r in 0..=self.r_max {
            for s in 0..=self.s_max {
                let _ = writeln!(out, "{r},{s},{}", self.get(r, s));
            }
        }
        out
    }

    fn alloc(r_max: usize, s_max: usize) -> Result<Self, FamilyError> {
        let cells = (r_max + 1).saturating_mul(s_max + 1);
        if cells > TABLE_BUDGET {
            return Err(FamilyError::Budget { cells, budget: TABLE_BUDGET });
        }
        let mut t = BipartiteTable { r_max, s_max, values: vec![0; cells] };
        for r in 0..=r_max {
            t.set(r, 0, r as u64);
        }
        for s in 0..=s_max {
            t.set(0, s, s as u64);
        }
        Ok(t)
    }
}

/// `ŝ(K_{r,s})` by the two-parameter recursion. A move marks `j` vertices of
/// the `r`-side and `i` of the `s`-side; when both are positive Painter
/// colors one side's marked vertices, otherwise the only side marked:
///
/// `T[r][s] = max_{(j,i) ≠ (0,0)} j + i + min(T[r-j][s] if j > 0, T[r][s-i] if i > 0)`
///
/// Every `(j, i)` is tried: `O(r²s²)` overall.
pub fn bipartite_dp(r_max: usize, s_max: usize) -> Result<BipartiteTable, FamilyError> {
    let mut t = BipartiteTable::alloc(r_max, s_max)?;
    for r in 1..=r_max {
        for s in 1..=s_max {
            let mut best = 0;
            for j in 0..=r {
                for i in 0..=s {
                    let v = match (j, i) {
                        (0, 0) => continue,
                        (j, 0) => j as u64 + t.get(r - j, s),
                        (0, i) => i as u64 + t.get(r, s - i),
                        (j, i) => (j + i) as u64 + t.get(r - j, s).min(t.get(r, s - i)),
                    };
                    best = best.max(v);
                }
            }
            t.set(r, s, best);
        }
    }
    Ok(t)
}

/// Same table using the threshold structure of optimal play. For fixed `i`
/// the branch `j + T[r-j][s]` is nonincreasing in `j` (the table is strictly
/// increasing) and `j + T[r][s-i]` is increasing, so the best `j` sits where
/// `T[r-j][s]` drops below `T[r][s-i]`; it is found by binary search. This
/// relies on the monotonicity that [`bipartite_dp`] is tested to satisfy,
/// and is itself checked against it.
pub fn bipartite_dp_threshold(r_max: usize, s_max: usize) -> Result<BipartiteTable, FamilyError> {
    let mut t = BipartiteTable::alloc(r_max, s_max)?;
    for r in 1..=r_max {
        for s in 1..=s_max {
            // one side only: j + T[r-j][s] is nonincreasing, so j = 1 is best
            let mut best = (1 + t.get(r - 1, s)).max(1 + t.get(r, s - 1));
            for i in 1..=s {
                let b = t.get(r, s - i);
                // largest j in 1..=r with T[r-j][s] >= b
                let (mut lo, mut hi) = (0usize, r);
                while lo < hi {
                    let mid = (lo + hi).div_ceil(2);
                    if t.get(r - mid, s) >= b {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                for j in [lo, lo + 1] {
                    if (1..=r).contains(&j) {
                        let v = (j + i) as u64 + t.get(r - j, s).min(b);
                        best = best.max(v);
                    }
                }
            }
            t.set(r, s, best);
        }
    }
    Ok(t)
}

/// `ŝ(E_r ∨ K_s)` with Lister marking all of the clique plus `k ≥ 1`
/// independent vertices each round:
///
/// `T[r][s] = max_{1 ≤ k ≤ r} (k + s) + min(T[r-k][s], T[r][s-1])`,
/// `T[r][0] = r`, `T[0][s] = C(s+1, 2)`.
pub fn join_dp(r_max: usize, s_max: usize) -> Result<BipartiteTable, FamilyError> {
    let mut t = BipartiteTable::alloc(r_max, s_max)?;
    for s in 0..=s_max {
        t.set(0, s, triangular(s as u64));
    }
    for r in 1..=r_max {
        for s in 1..=s_max {
            let best = (1..=r)
                .map(|k| (k + s) as u64 + t.get(r - k, s).min(t.get(r, s - 1)))
                .max()
                .expect("r >= 1");
            t.set(r, s, best);
        }
    }
    Ok(t)
}

/// The two-sided estimate for `ŝ(K_{r,s})`, `r ≥ s ≥ 1`:
/// `r + (5s-3)/2 + u(r-s) ≤ ŝ ≤ r + s + 2√(rs)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteBounds {
    pub r: u64,
    pub s: u64,
    pub lower: Rational,
}

impl BipartiteBounds {
    /// `value ≤ r + s + 2√(rs)`, decided in integers.
    pub fn upper_admits(&self, value: u64) -> bool {
        let base = self.r + self.s;
        value <= base || (value - base).pow(2) <= 4 * self.r * self.s
    }

    pub fn lower_admits(&self, value: u64) -> bool {
        Rational::from_integer(value) >= self.lower
    }

    /// Approximate upper bound, for display only.
    pub fn upper_f64(&self) -> f64 {
        (self.r + self.s) as f64 + 2.0 * ((self.r * self.s) as f64).sqrt()
    }
}

pub fn bipartite_bounds(r: u64, s: u64) -> Result<BipartiteBounds, FamilyError> {
    if s == 0 || r < s {
        return Err(FamilyError::InvalidParameters(format!(
            "bipartite bounds need r >= s >= 1, got ({r},{s})"
        )));
    }
    let lower = Rational::from_integer(r + u(r - s)) + Rational::new(5 * s - 3, 2);
    Ok(BipartiteBounds { r, s, lower })
}

/// Exact value of a complete multipartite graph from its part sizes.
///
/// Vertices of one part are interchangeable, so a position is the multiset
/// of remaining part sizes. A mark takes `m_p` vertices from each part;
/// Painter's maximal answers are exactly "all marked vertices of one part".
pub struct MultipartiteDp {
    memo: HashMap<Vec<u8>, u64>,
}

impl Default for MultipartiteDp {
    fn default() -> Self {
        Self::new()
    }
}

impl MultipartiteDp {
    pub fn new() -> Self {
        MultipartiteDp { memo: HashMap::new() }
    }

    pub fn value(&mut self, parts: &[usize]) -> u64 {
        let mut key: Vec<u8> = parts
            .iter()
            .filter(|&&p| p > 0)
            .map(|&p| u8::try_from(p).expect("parts of size < 256"))
            .collect();
        key.sort_unstable();
        self.value_sorted(key)
    }

    fn value_sorted(&mut self, parts: Vec<u8>) -> u64 {
        match parts.len() {
            0 => return 0,
            1 => return u64::from(parts[0]),
            _ => {}
        }
        if let Some(&v) = self.memo.get(&parts) {
            return v;
        }
        let mut best = 0;
        let mut marks = vec![0u8; parts.len()];
        // odometer over all mark vectors except all-zero
        loop {
            let mut i = 0;
            while i < parts.len() && marks[i] == parts[i] {
                marks[i] = 0;
                i += 1;
            }
            if i == parts.len() {
                break;
            }
            marks[i] += 1;
            let total: u64 = marks.iter().map(|&m| u64::from(m)).sum();
            let mut least = u64::MAX;
            for p in 0..parts.len() {
                if marks[p] == 0 {
                    continue;
                }
                let mut next = parts.clone();
                next[p] -= marks[p];
                if next[p] == 0 {
                    next.remove(p);
                }
                next.sort_unstable();
                least = least.min(self.value_sorted(next));
                if total + least <= best {
                    break;
                }
            }
            best = best.max(total + least);
        }
        self.memo.insert(parts, best);
        best
    }
}

/// Size bound on `Π (part + 1)` for [`MultipartiteDp`] in the equality check.
const MULTIPARTITE_DP_MOVES: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityCheck {
    pub t: u64,
    pub r: u64,
    /// `ŝ` of the complete `t`-partite graph with parts of size `r`, or a
    /// lower bound on it when `lhs_exact` is false.
    pub lhs: u64,
    pub lhs_exact: bool,
    /// `r·C(t+1, 2)`.
    pub rhs: u64,
    /// Whether `lhs == rhs` is established (when `lhs_exact` is false this
    /// can only be `false`, and is conclusive when `lhs > rhs`).
    pub equal: bool,
}

/// Compares `ŝ` of `t` parts of size `r` with the lower bound `r·C(t+1,2)`.
/// Exact routes: the closed forms (`t = 1`, `r ≤ 2`), the graph solver when
/// `t·r` is within its limit, then the part-size DP. Past those, `lhs` is
/// the guarantee of the Lister strategy that marks `r-1` vertices of every
/// untouched part for `t-1` rounds and then plays on `E_r ∨ K_{t-1}`:
/// `(r-1)(C(t+1,2) - 1) + ŝ(E_r ∨ K_{t-1})`.
pub fn multipartite_equality_check(
    t: u64,
    r: u64,
    cache: &SolverCache,
    config: &SolverConfig,
) -> Result<EqualityCheck, FamilyError> {
    if t == 0 || r == 0 {
        return Err(FamilyError::InvalidParameters("t and r must be positive".into()));
    }
    let rhs = r * triangular(t);
    let exact = if t == 1 {
        Some(r)
    } else if r == 1 {
        Some(triangular(t))
    } else if r == 2 {
        Some(alpha_two_value(2 * t, t))
    } else if t * r <= config.limit as u64 {
        let spec = FamilySpec::CompleteMultipartite(vec![r as usize; t as usize]);
        let g = generate(&spec).map_err(|e| FamilyError::InvalidParameters(e.to_string()))?;
        Some(solve_with(&g, cache, config)?.value)
    } else if r < 256 && (r + 1).checked_pow(t as u32).is_some_and(|m| m <= MULTIPARTITE_DP_MOVES) {
        Some(MultipartiteDp::new().value(&vec![r as usize; t as usize]))
    } else {
        None
    };
    Ok(match exact {
        Some(lhs) => EqualityCheck { t, r, lhs, lhs_exact: true, rhs, equal: lhs == rhs },
        None => {
            let lhs = (r - 1) * (triangular(t) - 1) + join_value(r, t - 1);
            EqualityCheck { t, r, lhs, lhs_exact: false, rhs, equal: false }
        }
    })
}
