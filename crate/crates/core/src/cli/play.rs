use super::CliError;
use crate::game::{check_color, check_mark, GameRecord};
use crate::graph::{Graph, VertexSet};
use crate::solver::{solve_with, SolverCache, SolverConfig};
use crate::strategies::{
    ListerBipartite, ListerDisjoint, ListerJoin, ListerMarkAll, ListerMultipartite, ListerOptimal,
    ListerStrategy, PainterAlpha2, PainterBipartiteThreshold, PainterGreedy, PainterOptimal,
    PainterStrategy, PainterTree,
};
use clap::ValueEnum;
use std::io::{BufRead, Write};

/// The side the human plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Lister,
    Painter,
}

fn lister_by_name<'a>(
    name: &str,
    g: &Graph,
    cache: &'a SolverCache,
    config: &SolverConfig,
) -> Result<Box<dyn ListerStrategy + 'a>, CliError> {
    Ok(match name {
        "optimal" => Box::new(ListerOptimal::new(cache, config.clone())),
        "mark-all" => Box::new(ListerMarkAll),
        "join" => Box::new(ListerJoin),
        "tree" => Box::new(ListerDisjoint::tree(g, cache, config.clone())?),
        "bipartite" => Box::new(ListerBipartite::detect(g)?),
        "multipartite" => Box::new(ListerMultipartite::detect(g)?),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown Lister strategy {name:?}; expected optimal, mark-all, join, tree, bipartite or multipartite"
            )))
        }
    })
}

fn painter_by_name<'a>(
    name: &str,
    g: &Graph,
    cache: &'a SolverCache,
    config: &SolverConfig,
) -> Result<Box<dyn PainterStrategy + 'a>, CliError> {
    Ok(match name {
        "optimal" => Box::new(PainterOptimal::new(cache, config.clone())),
        "greedy" => Box::new(PainterGreedy),
        "tree" => Box::new(PainterTree),
        "alpha2" => Box::new(PainterAlpha2),
        "bipartite" => Box::new(PainterBipartiteThreshold::detect(g)?),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown Painter strategy {name:?}; expected optimal, greedy, tree, alpha2 or bipartite"
            )))
        }
    })
}

/// Reads vertices written as `0 2 3`, `0,2,3` or `{0,2,3}`.
pub fn parse_vertex_set(line: &str, n: usize) -> Result<VertexSet, String> {
    let body = line.trim().trim_start_matches('{').trim_end_matches('}');
    let mut set = VertexSet::EMPTY;
    for token in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = token.parse().map_err(|_| format!("{token:?} is not a vertex number"))?;
        if v >= n {
            return Err(format!("vertex {v} does not exist (the graph has vertices 0..{n})"));
        }
        set.insert(v);
    }
    Ok(set)
}

enum Reply {
    Set(VertexSet),
    Quit,
}

/// Prompts until a line parses as a vertex set; `quit` or end of input
/// abandons the game.
fn ask(
    prompt: &str,
    n: usize,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<Reply, CliError> {
    loop {
        write!(out, "{prompt}> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(Reply::Quit);
        }
        match line.trim() {
            "quit" | "q" => return Ok(Reply::Quit),
            "help" | "?" => {
                writeln!(out, "enter vertices separated by spaces or commas, e.g. `0 2 5`; `quit` gives up")?;
                continue;
            }
            _ => {}
        }
        match parse_vertex_set(&line, n) {
            Ok(set) => return Ok(Reply::Set(set)),
            Err(msg) => writeln!(out, "cannot read that: {msg}")?,
        }
    }
}

/// Interactive game: the human plays `role` against the strategy named
/// `opponent`. Illegal moves are rejected with the rule they break and
/// asked again. Ends with the score and, when the graph is small enough,
/// the optimal value for comparison.
pub fn play(
    g: &Graph,
    role: Role,
    opponent: &str,
    cache: &SolverCache,
    config: &SolverConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<GameRecord, CliError> {
    let mut record = GameRecord::new(g.n());
    let (lister, painter) = match role {
        Role::Lister => (None, Some(painter_by_name(opponent, g, cache, config)?)),
        Role::Painter => (Some(lister_by_name(opponent, g, cache, config)?), None),
    };
    writeln!(out, "graph {} ; you are {:?}", g.to_edge_list(), role)?;
    while !record.remaining().is_empty() {
        let remaining = record.remaining();
        let round = record.rounds.len() + 1;
        writeln!(out, "round {round}: uncolored {remaining}, score {}", record.total_score)?;
        let marked = match &lister {
            Some(l) => {
                let m = l.mark(g, remaining)?;
                check_mark(remaining, round, m).map_err(|e| CliError::Failure(e.to_string()))?;
                writeln!(out, "Lister marks {m}")?;
                m
            }
            None => loop {
                match ask("mark", g.n(), input, out)? {
                    Reply::Quit => return Err(CliError::Interrupted),
                    Reply::Set(m) => match check_mark(remaining, round, m) {
                        Ok(()) => break m,
                        Err(e) => writeln!(out, "illegal: {e}")?,
                    },
                }
            },
        };
        let colored = match &painter {
            Some(p) => {
                let c = p.respond(g, remaining, marked)?;
                check_color(g, round, marked, c).map_err(|e| CliError::Failure(e.to_string()))?;
                writeln!(out, "Painter colors {c}")?;
                c
            }
            None => loop {
                match ask("color", g.n(), input, out)? {
                    Reply::Quit => return Err(CliError::Interrupted),
                    Reply::Set(c) => match check_color(g, round, marked, c) {
                        Ok(()) => break c,
                        Err(e) => writeln!(out, "illegal: {e}")?,
                    },
                }
            },
        };
        record.push(marked, colored);
    }
    writeln!(out, "{record}")?;
    if g.n() <= config.limit {
        let best = solve_with(g, cache, config)?.value;
        writeln!(out, "final score {}, optimal value {best}", record.total_score)?;
    } else {
        writeln!(out, "final score {}", record.total_score)?;
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn session(spec: &str, role: Role, opponent: &str, input: &str) -> (Result<GameRecord, CliError>, String) {
        let g = parse_graph(spec).unwrap();
        let mut out = Vec::new();
        let r = play(
            &g,
            role,
            opponent,
            &SolverCache::new(),
            &SolverConfig::default(),
            &mut input.as_bytes(),
            &mut out,
        );
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn painter_on_k2_against_optimal_lister() {
        let (r, text) = session("K2", Role::Painter, "optimal", "0\n1\n");
        assert_eq!(r.unwrap().total_score, 3);
        assert!(text.contains("final score 3, optimal value 3"), "{text}");
    }

    #[test]
    fn illegal_moves_are_explained_and_asked_again() {
        // optimal Lister marks both ends of K2; {0,1} is not independent
        let (r, text) = session("K2", Role::Painter, "optimal", "0 1\n7\nx\n{0}\n1\n");
        assert_eq!(r.unwrap().total_score, 3);
        assert!(text.contains("illegal: round 1: colored set {0,1} is not independent"), "{text}");
        assert!(text.contains("vertex 7 does not exist"));
        assert!(text.contains("\"x\" is not a vertex number"));
    }

    #[test]
    fn lister_side_and_named_opponents() {
        let (r, _) = session("E3", Role::Lister, "greedy", "0,1,2\n");
        assert_eq!(r.unwrap().total_score, 3);
        let (r, text) = session("E3", Role::Painter, "mark-all", "0 1 2\n");
        assert_eq!(r.unwrap().total_score, 3);
        assert!(text.contains("Lister marks {0,1,2}"));
        let (r, text) = session("P3", Role::Lister, "tree", "\n2\n0 1\n1\n");
        assert!(text.contains("illegal: round 1: marked set is empty"), "{text}");
        assert_eq!(r.unwrap().rounds.len(), 3);
    }

    #[test]
    fn end_of_input_aborts() {
        let (r, _) = session("K3", Role::Painter, "optimal", "0\n");
        assert!(matches!(r, Err(CliError::Interrupted)));
        let (r, _) = session("K3", Role::Lister, "optimal", "quit\n");
        assert!(matches!(r, Err(CliError::Interrupted)));
    }

    #[test]
    fn unknown_or_unsuitable_opponent() {
        assert!(matches!(session("K3", Role::Painter, "nobody", "").0, Err(CliError::Usage(_))));
        // single-vertex marks: four rounds, one point each
        let (r, _) = session("C4", Role::Lister, "bipartite", "0\n1\n2\n3\n");
        assert_eq!(r.unwrap().total_score, 4);
        assert!(matches!(session("C5", Role::Lister, "bipartite", "").0, Err(CliError::Usage(_))));
    }

    #[test]
    fn vertex_set_syntax() {
        assert_eq!(parse_vertex_set(" {0, 2}\n", 3).unwrap(), VertexSet::from_iter([0, 2]));
        assert_eq!(parse_vertex_set("1 2", 3).unwrap(), VertexSet::from_iter([1, 2]));
        assert_eq!(parse_vertex_set("", 3).unwrap(), VertexSet::EMPTY);
        assert!(parse_vertex_set("3", 3).is_err());
    }
}
