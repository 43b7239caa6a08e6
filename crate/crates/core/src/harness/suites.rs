use super::{CaseRecord, SuiteKind, SuiteReport};
use crate::family_dp::{
    alpha_two_value, bipartite_bounds, bipartite_dp, closed_form, multipartite_equality_check, u,
};
use crate::graph::{
    generate, non_isomorphic_graphs, non_isomorphic_trees, FamilySpec, Graph, SplitMix64,
};
use crate::invariants::{bound_report, chromatic_sum, hall_ratio, Rational};
use crate::paintability::PaintChecker;
use crate::solver::{solve_with, SolverCache, SolverConfig};
use crate::strategies::{
    lister_guarantee, painter_guarantee, ListerBipartite, ListerDisjoint, ListerMarkAll,
    PainterAlpha2, PainterGreedy, PainterTree,
};
use rayon::prelude::*;

/// Number of unlabeled trees on `n` vertices, indexed by `n` (from 0).
pub const TREE_COUNTS: [usize; 13] = [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedFormLimits {
    /// Paths, stars, cliques and empty graphs up to this order.
    pub simple_n: usize,
    /// `E_r ∨ K_s` with `r + s` up to this.
    pub join_order: usize,
    /// Complete multipartite graphs with parts of size at most 2.
    pub alpha_two_n: usize,
    /// `K_{r,s}` with `r + s` up to this.
    pub bipartite_order: usize,
}

impl Default for ClosedFormLimits {
    fn default() -> Self {
        ClosedFormLimits { simple_n: 10, join_order: 8, alpha_two_n: 7, bipartite_order: 8 }
    }
}

fn solve_value(g: &Graph, cache: &SolverCache, config: &SolverConfig) -> Result<u64, String> {
    solve_with(g, cache, config).map(|r| r.value).map_err(|e| e.to_string())
}

fn compare(id: String, expected: u64, actual: Result<u64, String>) -> CaseRecord {
    match actual {
        Ok(v) => CaseRecord::new(id, expected, v, v == expected),
        Err(e) => CaseRecord::error(id, expected, e),
    }
}

/// Exact solver against the closed forms, and against the two-parameter DP
/// on complete bipartite graphs.
pub fn suite_closed_forms(limits: ClosedFormLimits, cache: &SolverCache, config: &SolverConfig) -> SuiteReport {
    use FamilySpec::*;
    SuiteReport::timed("closed-forms", SuiteKind::Assertion, || {
        let mut specs = Vec::new();
        for n in 1..=limits.simple_n {
            specs.extend([Path(n), Star(n), Complete(n), Empty(n)]);
        }
        for order in 1..=limits.join_order {
            specs.extend((0..=order).map(|r| JoinEmptyClique(r, order - r)));
        }
        for n in 1..=limits.alpha_two_n {
            for q in 0..=n / 2 {
                let mut parts = vec![2; q];
                parts.resize(n - q, 1);
                specs.push(CompleteMultipartite(parts));
            }
        }
        let mut cases: Vec<CaseRecord> = specs
            .par_iter()
            .map(|spec| {
                let expected = closed_form(spec).expect("family has a closed form");
                let actual = generate(spec)
                    .map_err(|e| e.to_string())
                    .and_then(|g| solve_value(&g, cache, config));
                compare(spec.to_string(), expected, actual)
            })
            .collect();
        let b = limits.bipartite_order;
        match bipartite_dp(b, b) {
            Ok(table) => {
                let pairs: Vec<(usize, usize)> =
                    (1..b).flat_map(|s| (s..=b - s).map(move |r| (r, s))).collect();
                cases.par_extend(pairs.par_iter().map(|&(r, s)| {
                    let spec = CompleteBipartite(r, s);
                    let actual = generate(&spec)
                        .map_err(|e| e.to_string())
                        .and_then(|g| solve_value(&g, cache, config));
                    compare(spec.to_string(), table.get(r, s), actual)
                }));
            }
            Err(e) => cases.push(CaseRecord::error("bipartite table", "table", e)),
        }
        cases
    })
}

fn is_star(t: &Graph) -> bool {
    t.n() <= 2 || (0..t.n()).any(|v| t.degree(v) == t.n() - 1)
}

fn is_path(t: &Graph) -> bool {
    (0..t.n()).all(|v| t.degree(v) <= 2)
}

/// `n + u(n-1) ≤ ŝ(T) ≤ ⌊3n/2⌋` on every tree, with equality on the left
/// for the star and on the right for the path; tree counts are checked too.
pub fn suite_tree_extremality(n_max: usize, cache: &SolverCache, config: &SolverConfig) -> SuiteReport {
    SuiteReport::timed("tree-extremality", SuiteKind::Assertion, || {
        let mut cases = Vec::new();
        for n in 1..=n_max {
            let trees = non_isomorphic_trees(n);
            if let Some(&known) = TREE_COUNTS.get(n) {
                cases.push(CaseRecord::new(format!("trees on {n} vertices"), known, trees.len(), known == trees.len()));
            }
            let nn = n as u64;
            let (lo, hi) = (nn + u(nn - 1), 3 * nn / 2);
            cases.par_extend(trees.par_iter().map(|t| {
                let id = t.to_edge_list();
                let (expected, check): (String, Box<dyn Fn(u64) -> bool + Sync>) = if is_path(t) {
                    (hi.to_string(), Box::new(move |v| v == hi))
                } else if is_star(t) {
                    (lo.to_string(), Box::new(move |v| v == lo))
                } else {
                    (format!("[{lo},{hi}]"), Box::new(move |v| lo <= v && v <= hi))
                };
                match solve_value(t, cache, config) {
                    Ok(v) => CaseRecord::new(id, expected, v, check(v)),
                    Err(e) => CaseRecord::error(id, expected, e),
                }
            }));
        }
        cases
    })
}

/// All isomorphism classes with `n ≤ n_max`, then `samples` seeded random
/// graphs `G(n, p)` with `2 ≤ n ≤ sample_n_max` and `p ∈ [0.1, 0.9)`.
pub fn default_bounds_corpus(n_max: usize, samples: usize, sample_n_max: usize, seed: u64) -> Vec<Graph> {
    let mut corpus: Vec<Graph> = (1..=n_max).flat_map(non_isomorphic_graphs).collect();
    let mut rng = SplitMix64::new(seed);
    let span = sample_n_max.saturating_sub(1).max(1) as u64;
    for _ in 0..samples {
        let n = 2 + (rng.next_u64() % span) as usize;
        let p = 0.1 + 0.8 * rng.next_f64();
        let spec = FamilySpec::RandomGnp { n, p, seed: rng.next_u64() };
        corpus.push(generate(&spec).expect("small random graph"));
    }
    corpus
}

/// Every classical bound (`Σ ≤ ŝ ≤ nρ`, `2n - α`, `n²/(2α) + n/2`,
/// `|V| + |E|`) on every graph of the corpus.
pub fn suite_bounds(corpus: &[Graph], cache: &SolverCache, config: &SolverConfig) -> SuiteReport {
    SuiteReport::timed("bounds", SuiteKind::Assertion, || {
        corpus
            .par_iter()
            .map(|g| {
                let id = g.to_edge_list();
                let report = match bound_report(g) {
                    Ok(r) => r,
                    Err(e) => return CaseRecord::error(id, "bounds", e),
                };
                let expected = format!("[{},{}]", report.best_lower(), report.best_upper());
                match solve_value(g, cache, config) {
                    Ok(v) => CaseRecord::new(id, expected, v, report.admits(v)),
                    Err(e) => CaseRecord::error(id, expected, e),
                }
            })
            .collect()
    })
}

/// Three characterizations, each checked in both directions:
/// `ŝ = χ_SP` and `ŝ = |V| + |E|` iff every component is complete (all
/// graphs with `n ≤ n_max`), and `ŝ = r·C(t+1,2)` on `t` parts of size `r`
/// iff `t = 1` or `r ≤ 2` (`t ≤ t_max`, `r ≤ r_max`).
pub fn suite_equality_characterizations(
    n_max: usize,
    t_max: u64,
    r_max: u64,
    cache: &SolverCache,
    config: &SolverConfig,
) -> SuiteReport {
    SuiteReport::timed("equality", SuiteKind::Assertion, || {
        let graphs: Vec<Graph> = (1..=n_max).flat_map(non_isomorphic_graphs).collect();
        let verdict = |b: bool| if b { "equal" } else { "strict" };
        let mut cases: Vec<CaseRecord> = graphs
            .par_iter()
            .map_init(PaintChecker::new, |checker, g| {
                let id = g.to_edge_list();
                let complete = g.components_complete_within(g.vertices());
                let expected = verdict(complete);
                let s = match solve_value(g, cache, config) {
                    Ok(s) => s,
                    Err(e) => return vec![CaseRecord::error(id, expected, e)],
                };
                let greedy = (g.n() + g.edge_count()) as u64;
                let by_sum = CaseRecord::new(format!("|V|+|E| {id}"), expected, verdict(s == greedy), (s == greedy) == complete);
                let by_paint = match checker.sum_paintability(g, cache) {
                    Ok(chi) => CaseRecord::new(format!("chi_SP {id}"), expected, verdict(s == chi), (s == chi) == complete),
                    Err(e) => CaseRecord::error(format!("chi_SP {id}"), expected, e),
                };
                vec![by_paint, by_sum]
            })
            .flatten()
            .collect();
        let grid: Vec<(u64, u64)> = (1..=t_max).flat_map(|t| (1..=r_max).map(move |r| (t, r))).collect();
        cases.par_extend(grid.par_iter().map(|&(t, r)| {
            let id = format!("t={t} r={r}");
            let expected = verdict(t == 1 || r <= 2);
            match multipartite_equality_check(t, r, cache, config) {
                Ok(c) if c.lhs_exact => {
                    let actual = format!("{} ({} vs {})", verdict(c.equal), c.lhs, c.rhs);
                    CaseRecord::new(id, expected, actual, c.equal == (t == 1 || r <= 2))
                }
                Ok(c) => CaseRecord::new(id, expected, format!("inexact lower bound {}", c.lhs), false),
                Err(e) => CaseRecord::error(id, expected, e),
            }
        }));
        cases
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyLimits {
    /// Graph corpus (all isomorphism classes) for greedy and mark-all.
    pub graph_n: usize,
    /// Trees for the tree strategies.
    pub tree_n: usize,
    /// Parts-≤2 multipartite graphs for the α ≤ 2 Painter.
    pub alpha_two_n: usize,
    /// Side bound for the complete bipartite Lister.
    pub bipartite_side: usize,
}

impl Default for StrategyLimits {
    fn default() -> Self {
        StrategyLimits { graph_n: 7, tree_n: 9, alpha_two_n: 7, bipartite_side: 5 }
    }
}

/// Exact adversarial evaluation of every strategy against its guarantee.
pub fn suite_strategy_guarantees(limits: StrategyLimits, cache: &SolverCache, config: &SolverConfig) -> SuiteReport {
    SuiteReport::timed("strategies", SuiteKind::Assertion, || {
        let mut cases = Vec::new();
        let graphs: Vec<Graph> = (1..=limits.graph_n).flat_map(non_isomorphic_graphs).collect();
        cases.par_extend(graphs.par_iter().flat_map_iter(|g| {
            let id = g.to_edge_list();
            let n_rho = hall_ratio(g).map(|rho| rho * g.n() as u64);
            let sigma = chromatic_sum(g);
            let greedy = match (n_rho, painter_guarantee(g, &PainterGreedy)) {
                (Ok(bound), Ok(v)) => {
                    CaseRecord::new(format!("greedy {id}"), format!("<= {bound}"), v, Rational::from_integer(v) <= bound)
                }
                (Err(e), _) => CaseRecord::error(format!("greedy {id}"), "n*rho", e),
                (_, Err(e)) => CaseRecord::error(format!("greedy {id}"), "n*rho", e),
            };
            let mark_all = match lister_guarantee(g, &ListerMarkAll) {
                Ok(v) => CaseRecord::new(format!("mark-all {id}"), format!(">= {sigma}"), v, v >= sigma),
                Err(e) => CaseRecord::error(format!("mark-all {id}"), sigma, e),
            };
            [greedy, mark_all]
        }));
        let trees: Vec<Graph> = (1..=limits.tree_n).flat_map(non_isomorphic_trees).collect();
        cases.par_extend(trees.par_iter().flat_map_iter(|t| {
            let id = t.to_edge_list();
            let n = t.n() as u64;
            let (lo, hi) = (n + u(n - 1), 3 * n / 2);
            let painter = match painter_guarantee(t, &PainterTree) {
                Ok(v) => CaseRecord::new(format!("painter-tree {id}"), format!("<= {hi}"), v, v <= hi),
                Err(e) => CaseRecord::error(format!("painter-tree {id}"), hi, e),
            };
            let lister = ListerDisjoint::tree(t, cache, config.clone())
                .and_then(|l| lister_guarantee(t, &l));
            let lister = match lister {
                Ok(v) => CaseRecord::new(format!("lister-tree {id}"), format!(">= {lo}"), v, v >= lo),
                Err(e) => CaseRecord::error(format!("lister-tree {id}"), lo, e),
            };
            [painter, lister]
        }));
        let mut alpha_two = Vec::new();
        for n in 1..=limits.alpha_two_n {
            for q in 0..=n / 2 {
                let mut parts = vec![2; q];
                parts.resize(n - q, 1);
                alpha_two.push((FamilySpec::CompleteMultipartite(parts), n as u64, q as u64));
            }
        }
        cases.par_extend(alpha_two.par_iter().map(|(spec, n, q)| {
            let expected = alpha_two_value(*n, *q);
            let id = format!("painter-alpha2 {spec}");
            let actual = generate(spec)
                .map_err(|e| e.to_string())
                .and_then(|g| painter_guarantee(&g, &PainterAlpha2).map_err(|e| e.to_string()));
            compare(id, expected, actual)
        }));
        let side = limits.bipartite_side;
        let pairs: Vec<(usize, usize)> = (1..=side).flat_map(|s| (s..=side).map(move |r| (r, s))).collect();
        cases.par_extend(pairs.par_iter().map(|&(r, s)| {
            let spec = FamilySpec::CompleteBipartite(r, s);
            let id = format!("lister-bipartite {spec}");
            let bounds = bipartite_bounds(r as u64, s as u64).expect("r >= s >= 1");
            let expected = format!(">= {}", bounds.lower);
            let actual = generate(&spec).map_err(|e| e.to_string()).and_then(|g| {
                let l = ListerBipartite::detect(&g).map_err(|e| e.to_string())?;
                lister_guarantee(&g, &l).map_err(|e| e.to_string())
            });
            match actual {
                Ok(v) => CaseRecord::new(id, expected, v, bounds.lower_admits(v)),
                Err(e) => CaseRecord::error(id, expected, e),
            }
        }));
        cases
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_small() {
        let limits = ClosedFormLimits { simple_n: 6, join_order: 6, alpha_two_n: 5, bipartite_order: 6 };
        let r = suite_closed_forms(limits, &SolverCache::new(), &SolverConfig::default());
        assert!(r.all_passed(), "{r}");
        let p6 = r.cases.iter().find(|c| c.id == "P6").unwrap();
        assert_eq!((p6.expected.as_str(), p6.actual.as_str()), ("9", "9"));
        assert!(r.cases.iter().any(|c| c.id == "K3,3" && c.actual == "10"));
        assert!(r.cases.iter().any(|c| c.id == "J(0,3)"));
    }

    #[test]
    fn tree_extremality_small() {
        let r = suite_tree_extremality(7, &SolverCache::new(), &SolverConfig::default());
        assert!(r.all_passed(), "{r}");
        // 7 count cases plus 1+1+1+2+3+6+11 trees
        assert_eq!(r.cases.len(), 7 + 25);
        let n5: Vec<_> = r.cases.iter().filter(|c| c.id.starts_with("n=5;")).collect();
        assert_eq!(n5.len(), 3);
        assert!(n5.iter().all(|c| c.actual == "7"));
    }

    #[test]
    fn tree_counts_anchor() {
        for (n, &count) in TREE_COUNTS.iter().enumerate().take(10).skip(1) {
            assert_eq!(non_isomorphic_trees(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn bounds_small() {
        let corpus = default_bounds_corpus(4, 10, 7, 42);
        assert_eq!(corpus.len(), 1 + 2 + 4 + 11 + 10);
        assert_eq!(corpus, default_bounds_corpus(4, 10, 7, 42));
        assert!(corpus[18..].iter().all(|g| (2..=7).contains(&g.n())));
        let r = suite_bounds(&corpus, &SolverCache::new(), &SolverConfig::default());
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn equality_small() {
        let r = suite_equality_characterizations(4, 3, 3, &SolverCache::new(), &SolverConfig::default());
        assert!(r.all_passed(), "{r}");
        let c = r.cases.iter().find(|c| c.id == "t=2 r=3").unwrap();
        assert_eq!(c.expected, "strict");
        assert!(c.actual.starts_with("strict (10 vs 9)"));
        let p3 = r.cases.iter().find(|c| c.id == "chi_SP n=3; 0-1,1-2" || c.id == "chi_SP n=3; 0-2,1-2").unwrap();
        assert_eq!(p3.actual, "strict");
    }

    #[test]
    fn strategies_small() {
        let limits = StrategyLimits { graph_n: 4, tree_n: 7, alpha_two_n: 5, bipartite_side: 3 };
        let r = suite_strategy_guarantees(limits, &SolverCache::new(), &SolverConfig::default());
        assert!(r.all_passed(), "{r}");
        assert!(r.cases.iter().any(|c| c.id == "lister-bipartite K3,3"));
    }
}
