//! Text forms of graphs.
//!
//! Edge list: `n=<int>;` followed by `,`-separated `<u>-<v>` pairs, e.g.
//! `n=4; 0-1,1-2,2-3`. Whitespace is ignored.
//!
//! Family DSL: `P<n>`, `C<n>`, `K<n>`, `E<n>`, `S<n>`, `K<r>,<s>`,
//! `KM[<a>,<b>,...]`, `J(<r>,<s>)`, `P<n>^<k>`, `GRID<k>`,
//! `GNP(<n>,<p>,<seed>)`, `U(<spec>,<spec>)`, `JOIN(<spec>,<spec>)`.
//! Inside `U(..)`/`JOIN(..)` a comma followed by a digit continues `K<r>,<s>`;
//! no spec starts with a digit, so this is unambiguous.

use super::{generate, FamilySpec, Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("vertex {vertex} is not below n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

impl From<GraphError> for ParseError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooManyVertices(n) => ParseError::TooManyVertices(n),
            GraphError::VertexOutOfRange { vertex, n } => ParseError::VertexOutOfRange { vertex, n },
            GraphError::SelfLoop(v) => ParseError::SelfLoop(v),
        }
    }
}

/// Parses either an edge list or a family spec.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let compact: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser { chars: compact, at: 0, len: text.len() };
    if p.peek_str("n=") {
        return p.edge_list();
    }
    let spec = p.spec()?;
    p.end()?;
    Ok(generate(&spec)?)
}

/// Parses a family spec only.
pub fn parse_spec(text: &str) -> Result<FamilySpec, ParseError> {
    let compact: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser { chars: compact, at: 0, len: text.len() };
    let spec = p.spec()?;
    p.end()?;
    Ok(spec)
}

struct Parser {
    /// Non-whitespace characters with their byte offsets in the input.
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |&(i, _)| i)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.at + k).map(|&(_, c)| c)
    }

    fn peek_str(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(k, c)| self.peek_at(k) == Some(c))
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.peek_str(s) {
            self.at += s.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        s.parse().or_else(|_| {
            self.at = start;
            self.err("integer too large")
        })
    }

    fn u64(&mut self) -> Result<u64, ParseError> {
        let start = self.at;
        let v = self.int()?;
        u64::try_from(v).or_else(|_| {
            self.at = start;
            self.err("integer too large")
        })
    }

    fn float(&mut self) -> Result<f64, ParseError> {
        let start = self.at;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'))
        {
            self.at += 1;
        }
        let s: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        match s.parse::<f64>() {
            Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
            _ => {
                self.at = start;
                self.err("expected a probability in [0, 1]")
            }
        }
    }

    fn edge_list(&mut self) -> Result<Graph, ParseError> {
        self.eat_str("n=");
        let n = self.int()?;
        if n > MAX_VERTICES {
            return Err(ParseError::TooManyVertices(n));
        }
        self.expect(';')?;
        let mut g = Graph::empty(n)?;
        while self.peek().is_some() {
            let u = self.int()?;
            self.expect('-')?;
            let v = self.int()?;
            g.add_edge(u, v)?;
            if self.peek() == Some(',') {
                self.at += 1;
                if self.peek().is_none() {
                    return self.err("expected an edge after ','");
                }
            } else if self.peek() == Some(';') {
                self.at += 1;
                self.end()?;
            } else {
                self.end()?;
            }
        }
        Ok(g)
    }

    fn spec(&mut self) -> Result<FamilySpec, ParseError> {
        use FamilySpec::*;
        let two = |p: &mut Parser, open: &str| -> Result<(FamilySpec, FamilySpec), ParseError> {
            p.eat_str(open);
            let a = p.spec()?;
            p.expect(',')?;
            let b = p.spec()?;
            p.expect(')')?;
            Ok((a, b))
        };
        if self.peek_str("JOIN(") {
            let (a, b) = two(self, "JOIN(")?;
            return Ok(Join(Box::new(a), Box::new(b)));
        }
        if self.peek_str("U(") {
            let (a, b) = two(self, "U(")?;
            return Ok(Union(Box::new(a), Box::new(b)));
        }
        if self.eat_str("GRID") {
            return Ok(Grid2xK(self.int()?));
        }
        if self.eat_str("GNP(") {
            let n = self.int()?;
            self.expect(',')?;
            let p = self.float()?;
            self.expect(',')?;
            let seed = self.u64()?;
            self.expect(')')?;
            return Ok(RandomGnp { n, p, seed });
        }
        if self.eat_str("KM[") {
            let mut parts = vec![self.int()?];
            while self.peek() == Some(',') {
                self.at += 1;
                parts.push(self.int()?);
            }
            self.expect(']')?;
            return Ok(CompleteMultipartite(parts));
        }
        if self.eat_str("J(") {
            let r = self.int()?;
            self.expect(',')?;
            let s = self.int()?;
            self.expect(')')?;
            return Ok(JoinEmptyClique(r, s));
        }
        match self.peek() {
            Some('K') => {
                self.at += 1;
                let r = self.int()?;
                if self.peek() == Some(',') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                    self.at += 1;
                    let s = self.int()?;
                    return Ok(CompleteBipartite(r, s));
                }
                Ok(Complete(r))
            }
            Some('P') => {
                self.at += 1;
                let n = self.int()?;
                if self.peek() == Some('^') {
                    self.at += 1;
                    return Ok(PathPower(n, self.int()?));
                }
                Ok(Path(n))
            }
            Some('C') => {
                self.at += 1;
                Ok(Cycle(self.int()?))
            }
            Some('E') => {
                self.at += 1;
                Ok(Empty(self.int()?))
            }
            Some('S') => {
                self.at += 1;
                Ok(Star(self.int()?))
            }
            _ => self.err("expected a graph family or 'n=<int>;'"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("n=2; 0-1").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let g = parse_graph("n=1;").unwrap();
        assert_eq!(g.n(), 1);
        let g = parse_graph(" n = 4 ; 0-1 , 2-3 ").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn family_examples() {
        let g = parse_graph("K3,2").unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 6));
        let g = parse_graph("P5^2").unwrap();
        let mut e: Vec<_> = g.edges().collect();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        let g = parse_graph("U(K3,2,P2)").unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 7));
        let g = parse_graph("JOIN(E2,K2)").unwrap();
        assert_eq!(g, parse_graph("J(2,2)").unwrap());
        assert_eq!(parse_graph("KM[1,2,2]").unwrap().edge_count(), 8);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_graph("n=3; 0-3"),
            Err(ParseError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(parse_graph("n=65;"), Err(ParseError::TooManyVertices(65)));
        assert_eq!(parse_graph("K70"), Err(ParseError::TooManyVertices(70)));
        match parse_graph("n=3; 0-1,1x2") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_graph("Q4"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_graph("U(K2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_graph("GNP(3,1.5,1)"), Err(ParseError::Syntax { .. })));
    }

    fn arb_spec() -> impl Strategy<Value = FamilySpec> {
        use FamilySpec::*;
        let leaf = prop_oneof![
            (0usize..6).prop_map(Path),
            (0usize..6).prop_map(Cycle),
            (0usize..6).prop_map(Star),
            (0usize..6).prop_map(Complete),
            (0usize..6).prop_map(Empty),
            (0usize..4, 0usize..4).prop_map(|(r, s)| CompleteBipartite(r, s)),
            prop::collection::vec(0usize..3, 1..4).prop_map(CompleteMultipartite),
            (0usize..4, 0usize..4).prop_map(|(r, s)| JoinEmptyClique(r, s)),
            (0usize..6, 0usize..3).prop_map(|(n, k)| PathPower(n, k)),
            (0usize..4).prop_map(Grid2xK),
            (0usize..6, 0u32..=4, any::<u64>())
                .prop_map(|(n, q, seed)| RandomGnp { n, p: q as f64 / 4.0, seed }),
        ];
        leaf.prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Union(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Join(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        }

        #[test]
        fn edge_list_roundtrip(spec in arb_spec()) {
            let g = generate(&spec).unwrap();
            prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
        }
    }
}
