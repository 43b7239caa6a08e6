use super::{CaseRecord, SuiteKind, SuiteReport};
use crate::family_dp::{bipartite_dp_threshold, join_dp, triangular};
use crate::graph::{canonical_key, generate, FamilySpec, Graph};
use crate::solver::{solve_with, SolverCache, SolverConfig};
use rayon::prelude::*;
use std::collections::HashSet;

/// `ŝ(K_{r,r})` against `4r - √r - log₃ r` for `1 ≤ r ≤ r_max`, asserting
/// a gap of at most 2. Returns the report and the CSV `r,value,fit,diff`.
pub fn experiment_krr_fit(r_max: usize) -> (SuiteReport, String) {
    let mut csv = String::from("r,value,fit,diff\n");
    let report = SuiteReport::timed("krr-fit", SuiteKind::Assertion, || {
        let table = match bipartite_dp_threshold(r_max, r_max) {
            Ok(t) => t,
            Err(e) => return vec![CaseRecord::error("table", "table", e)],
        };
        (1..=r_max)
            .map(|r| {
                let value = table.get(r, r);
                let rf = r as f64;
                let fit = 4.0 * rf - rf.sqrt() - rf.ln() / 3f64.ln();
                let diff = value as f64 - fit;
                csv.push_str(&format!("{r},{value},{fit:.4},{diff:.4}\n"));
                CaseRecord::new(format!("r={r}"), format!("{fit:.4} +- 2"), value, diff.abs() <= 2.0)
            })
            .collect()
    });
    (report, csv)
}

/// `ŝ(P_n^k)` against the conjectured `⌊n/(k+1)⌋·C(k+2,2) + C(m+1,2)` with
/// `m = n mod (k+1)` (the value of disjoint cliques of the same sizes).
/// Reported, never asserted. CSV: `n,k,value,conjectured,holds`.
pub fn experiment_pnk_conjecture(
    n_max: usize,
    k_max: usize,
    cache: &SolverCache,
    config: &SolverConfig,
) -> (SuiteReport, String) {
    let grid: Vec<(usize, usize)> = (1..=k_max).flat_map(|k| (1..=n_max).map(move |n| (n, k))).collect();
    let rows: Vec<(usize, usize, u64, Result<u64, String>)> = grid
        .par_iter()
        .map(|&(n, k)| {
            let conjectured = (n / (k + 1)) as u64 * triangular(k as u64 + 1) + triangular((n % (k + 1)) as u64);
            let value = generate(&FamilySpec::PathPower(n, k))
                .map_err(|e| e.to_string())
                .and_then(|g| solve_with(&g, cache, config).map(|r| r.value).map_err(|e| e.to_string()));
            (n, k, conjectured, value)
        })
        .collect();
    let mut csv = String::from("n,k,value,conjectured,holds\n");
    let report = SuiteReport::timed("pnk", SuiteKind::Experiment, || {
        rows.into_iter()
            .map(|(n, k, conjectured, value)| {
                let id = format!("P{n}^{k}");
                match value {
                    Ok(v) => {
                        csv.push_str(&format!("{n},{k},{v},{conjectured},{}\n", v == conjectured));
                        CaseRecord::new(id, conjectured, v, v == conjectured)
                    }
                    Err(e) => CaseRecord::error(id, conjectured, e),
                }
            })
            .collect()
    });
    (report, csv)
}

/// `ŝ(E_r ∨ K_{t-1})` (exact, from the DP) against the approximation
/// `r + C(t,2) + (t-1)√(2r)`, flagging gaps above `t`. CSV:
/// `r,t,exact,approx,gap,within_t`.
pub fn experiment_join_sqrt_gap(r_max: usize, t_max: usize) -> (SuiteReport, String) {
    let mut csv = String::from("r,t,exact,approx,gap,within_t\n");
    let report = SuiteReport::timed("join-gap", SuiteKind::Experiment, || {
        let table = match join_dp(r_max, t_max.saturating_sub(1)) {
            Ok(t) => t,
            Err(e) => return vec![CaseRecord::error("table", "table", e)],
        };
        let mut cases = Vec::new();
        for t in 1..=t_max {
            for r in 1..=r_max {
                let exact = table.get(r, t - 1);
                let approx = r as f64 + triangular(t as u64 - 1) as f64 + (t - 1) as f64 * (2.0 * r as f64).sqrt();
                let gap = (exact as f64 - approx).abs();
                let within = gap <= t as f64;
                csv.push_str(&format!("{r},{t},{exact},{approx:.4},{gap:.4},{within}\n"));
                cases.push(CaseRecord::new(format!("r={r} t={t}"), format!("{approx:.4} +- {t}"), exact, within));
            }
        }
        cases
    });
    (report, csv)
}

/// Non-isomorphic 2-trees on `n ≥ 2` vertices: start from `K_2` and
/// repeatedly add a vertex adjacent to both ends of an existing edge.
pub fn two_trees(n: usize) -> Vec<Graph> {
    if n < 2 {
        return Vec::new();
    }
    let mut level = vec![generate(&FamilySpec::Complete(2)).expect("K2")];
    for size in 3..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for (a, b) in g.edges() {
                let mut h = g.disjoint_union(&Graph::empty(1).expect("n = 1")).expect("small");
                h.add_edge(a, size - 1).expect("in range");
                h.add_edge(b, size - 1).expect("in range");
                let key = canonical_key(&h);
                if seen.insert(key.clone()) {
                    next.push(key.to_graph());
                }
            }
        }
        level = next;
    }
    level
}

/// For every 2-tree `T` on `n ≤ n_max` vertices, whether
/// `ŝ(K_2 ∨ E_{n-2}) ≤ ŝ(T) ≤ ŝ(P_n^2)`. Reported, never asserted.
pub fn experiment_two_trees(n_max: usize, cache: &SolverCache, config: &SolverConfig) -> SuiteReport {
    let value = |spec: FamilySpec| -> Result<u64, String> {
        let g = generate(&spec).map_err(|e| e.to_string())?;
        solve_with(&g, cache, config).map(|r| r.value).map_err(|e| e.to_string())
    };
    SuiteReport::timed("two-trees", SuiteKind::Experiment, || {
        let mut cases = Vec::new();
        for n in 3..=n_max {
            let (lo, hi) = match (value(FamilySpec::JoinEmptyClique(n - 2, 2)), value(FamilySpec::PathPower(n, 2))) {
                (Ok(lo), Ok(hi)) => (lo, hi),
                (Err(e), _) | (_, Err(e)) => {
                    cases.push(CaseRecord::error(format!("extremes n={n}"), "values", e));
                    continue;
                }
            };
            cases.par_extend(two_trees(n).par_iter().map(|t| {
                let id = t.to_edge_list();
                match solve_with(t, cache, config) {
                    Ok(r) => CaseRecord::new(id, format!("[{lo},{hi}]"), r.value, lo <= r.value && r.value <= hi),
                    Err(e) => CaseRecord::error(id, format!("[{lo},{hi}]"), e),
                }
            }));
        }
        cases
    })
}
