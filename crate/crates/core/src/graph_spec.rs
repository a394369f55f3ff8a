//! Symbolic graph expressions.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! union  := join ( 'u' join )*
//! join   := minus ( '+' minus )*
//! minus  := copies ( '\' copies )*
//! copies := INT '*' copies | atom
//! atom   := ('K'|'P'|'S'|'B'|'F'|'M'|'E') INT | '(' union ')'
//! ```
//!
//! `S n` is the star K_{1,n}, `B m` the book K_2 + mK_1, `F n` the fan K_1 + nK_2,
//! `M m` the matching mK_2 and `E n` the edgeless graph nK_1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, ParseError};
use crate::graph::{Graph, MAX_ORDER};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphSpec {
    Complete(u32),
    Path(u32),
    Star(u32),
    Book(u32),
    Fan(u32),
    Matching(u32),
    Empty(u32),
    Join(Box<GraphSpec>, Box<GraphSpec>),
    Union(Box<GraphSpec>, Box<GraphSpec>),
    Copies(u32, Box<GraphSpec>),
    /// Host with the edges of the second graph removed, the deleted graph sitting on the
    /// lowest-indexed host vertices.
    Minus(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let spec = p.union()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.syntax("unexpected trailing input"));
        }
        Ok(spec)
    }

    pub fn join(a: GraphSpec, b: GraphSpec) -> Self {
        GraphSpec::Join(Box::new(a), Box::new(b))
    }

    pub fn union(a: GraphSpec, b: GraphSpec) -> Self {
        GraphSpec::Union(Box::new(a), Box::new(b))
    }

    pub fn copies(k: u32, a: GraphSpec) -> Self {
        GraphSpec::Copies(k, Box::new(a))
    }

    pub fn minus(host: GraphSpec, deleted: GraphSpec) -> Self {
        GraphSpec::Minus(Box::new(host), Box::new(deleted))
    }

    /// Vertex count of the realized graph, saturating on absurd inputs.
    pub fn order(&self) -> u64 {
        use GraphSpec::*;
        match self {
            Complete(n) | Path(n) | Empty(n) => *n as u64,
            Star(n) => *n as u64 + 1,
            Book(m) => *m as u64 + 2,
            Fan(n) => 2 * *n as u64 + 1,
            Matching(m) => 2 * *m as u64,
            Join(a, b) | Union(a, b) => a.order().saturating_add(b.order()),
            Copies(k, a) => (*k as u64).saturating_mul(a.order()),
            Minus(h, _) => h.order(),
        }
    }

    /// Builds the vertex-labeled graph. Left operands occupy lower indices.
    pub fn realize(&self) -> Result<Graph, GraphError> {
        let order = self.order();
        if order > MAX_ORDER as u64 {
            return Err(GraphError::OrderOverflow { order });
        }
        self.check_deletions()?;
        let mut g = Graph::empty(order as usize);
        self.place(&mut g, 0);
        Ok(g)
    }

    fn check_deletions(&self) -> Result<(), GraphError> {
        use GraphSpec::*;
        match self {
            Join(a, b) | Union(a, b) => {
                a.check_deletions()?;
                b.check_deletions()
            }
            Copies(_, a) => a.check_deletions(),
            Minus(h, d) => {
                if d.order() > h.order() {
                    return Err(GraphError::DeletionTooLarge { host: h.order(), deleted: d.order() });
                }
                h.check_deletions()?;
                d.check_deletions()
            }
            _ => Ok(()),
        }
    }

    fn place(&self, g: &mut Graph, base: usize) {
        use GraphSpec::*;
        match self {
            Complete(n) => {
                let n = *n as usize;
                for u in 0..n {
                    for v in u + 1..n {
                        g.add_edge(base + u, base + v);
                    }
                }
            }
            Path(n) => {
                for i in 1..*n as usize {
                    g.add_edge(base + i - 1, base + i);
                }
            }
            Star(n) => {
                for i in 1..=*n as usize {
                    g.add_edge(base, base + i);
                }
            }
            Book(m) => GraphSpec::join(Complete(2), Empty(*m)).place(g, base),
            Fan(n) => GraphSpec::join(Empty(1), GraphSpec::copies(*n, Complete(2))).place(g, base),
            Matching(m) => {
                for i in 0..*m as usize {
                    g.add_edge(base + 2 * i, base + 2 * i + 1);
                }
            }
            Empty(_) => {}
            Join(a, b) => {
                let na = a.order() as usize;
                let nb = b.order() as usize;
                a.place(g, base);
                b.place(g, base + na);
                for u in base..base + na {
                    for v in base + na..base + na + nb {
                        g.add_edge(u, v);
                    }
                }
            }
            Union(a, b) => {
                a.place(g, base);
                b.place(g, base + a.order() as usize);
            }
            Copies(k, a) => {
                let na = a.order() as usize;
                for i in 0..*k as usize {
                    a.place(g, base + i * na);
                }
            }
            Minus(h, d) => {
                h.place(g, base);
                let removed = d.realize().expect("deleted graph fits inside host");
                for (u, v) in removed.edges() {
                    g.remove_edge(base + u, base + v);
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            GraphSpec::Union(..) => 1,
            GraphSpec::Join(..) => 2,
            GraphSpec::Minus(..) => 3,
            GraphSpec::Copies(..) => 4,
            _ => 5,
        }
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        GraphSpec::parse(s)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphSpec::*;
        let wrap = |f: &mut fmt::Formatter<'_>, child: &GraphSpec, paren: bool| {
            if paren {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        };
        match self {
            Complete(n) => write!(f, "K{n}"),
            Path(n) => write!(f, "P{n}"),
            Star(n) => write!(f, "S{n}"),
            Book(n) => write!(f, "B{n}"),
            Fan(n) => write!(f, "F{n}"),
            Matching(n) => write!(f, "M{n}"),
            Empty(n) => write!(f, "E{n}"),
            Copies(k, a) => {
                write!(f, "{k}*")?;
                wrap(f, a, a.precedence() < 4)
            }
            Join(a, b) | Union(a, b) | Minus(a, b) => {
                let p = self.precedence();
                let op = match self {
                    Join(..) => " + ",
                    Union(..) => " u ",
                    _ => "\\",
                };
                wrap(f, a, a.precedence() < p)?;
                f.write_str(op)?;
                wrap(f, b, b.precedence() <= p)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<GraphSpec, ParseError> {
        let mut lhs = self.join()?;
        while self.peek() == Some(b'u') {
            self.pos += 1;
            lhs = GraphSpec::union(lhs, self.join()?);
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<GraphSpec, ParseError> {
        let mut lhs = self.minus()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            lhs = GraphSpec::join(lhs, self.minus()?);
        }
        Ok(lhs)
    }

    fn minus(&mut self) -> Result<GraphSpec, ParseError> {
        let mut lhs = self.copies()?;
        while self.peek() == Some(b'\\') {
            self.pos += 1;
            let rhs = self.copies()?;
            if rhs.order() > lhs.order() {
                return Err(ParseError::MinusSize {
                    host: lhs.order(),
                    deleted: rhs.order(),
                });
            }
            lhs = GraphSpec::minus(lhs, rhs);
        }
        Ok(lhs)
    }

    fn copies(&mut self) -> Result<GraphSpec, ParseError> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let k = self.int()?;
            if self.peek() != Some(b'*') {
                return Err(self.syntax("expected '*' after copy count"));
            }
            self.pos += 1;
            return Ok(GraphSpec::copies(k, self.copies()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<GraphSpec, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let inner = self.union()?;
            if self.peek() != Some(b')') {
                return Err(self.syntax("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        let leaf: fn(u32) -> GraphSpec = match c {
            b'K' => GraphSpec::Complete,
            b'P' => GraphSpec::Path,
            b'S' => GraphSpec::Star,
            b'B' => GraphSpec::Book,
            b'F' => GraphSpec::Fan,
            b'M' => GraphSpec::Matching,
            b'E' => GraphSpec::Empty,
            _ => return Err(self.syntax("expected a graph name or '('")),
        };
        self.pos += 1;
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.syntax("expected a parameter directly after the graph name"));
        }
        Ok(leaf(self.int()?))
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: u32 = digits.parse().map_err(|_| ParseError::Syntax {
            position: start,
            message: "integer too large".into(),
        })?;
        if value == 0 {
            return Err(ParseError::ZeroParameter { position: start });
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use GraphSpec::*;

    fn p(s: &str) -> GraphSpec {
        GraphSpec::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("K5\\P5"), GraphSpec::minus(Complete(5), Path(5)));
        assert_eq!(p("F2"), Fan(2));
        assert_eq!(p("K3 u 2*K2"), GraphSpec::union(Complete(3), GraphSpec::copies(2, Complete(2))));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            p("K1 + 2*K2 u E3"),
            GraphSpec::union(GraphSpec::join(Complete(1), GraphSpec::copies(2, Complete(2))), Empty(3))
        );
        assert_eq!(p("K9\\P4 + K2"), GraphSpec::join(GraphSpec::minus(Complete(9), Path(4)), Complete(2)));
        assert_eq!(
            p("K5 u K1 u K2"),
            GraphSpec::union(GraphSpec::union(Complete(5), Complete(1)), Complete(2))
        );
        assert_eq!(p("2*(K1+K2)"), GraphSpec::copies(2, GraphSpec::join(Complete(1), Complete(2))));
        assert_eq!(p("2*3*K2"), GraphSpec::copies(2, GraphSpec::copies(3, Complete(2))));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(GraphSpec::parse("K0"), Err(ParseError::ZeroParameter { position: 1 })));
        assert!(matches!(GraphSpec::parse("0*K2"), Err(ParseError::ZeroParameter { .. })));
        assert!(matches!(GraphSpec::parse("K3\\P4"), Err(ParseError::MinusSize { host: 3, deleted: 4 })));
        assert!(matches!(GraphSpec::parse("K3 +"), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(GraphSpec::parse("X3"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(GraphSpec::parse("(K3"), Err(ParseError::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("K 3"), Err(ParseError::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("K3)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(GraphSpec::parse("K99999999999"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn realize_counts() {
        let fan = Fan(2).realize().unwrap();
        assert_eq!((fan.order(), fan.edge_count(), fan.max_degree()), (5, 6, 4));
        assert_eq!(fan, p("K1 + 2*K2").realize().unwrap());
        let book = Book(2).realize().unwrap();
        assert_eq!((book.order(), book.edge_count()), (4, 5));
        let g = p("K9\\P4").realize().unwrap();
        let s = g.stats();
        assert_eq!((s.order, s.edge_count, s.min_degree, s.max_degree), (9, 33, 6, 8));
        assert!(!g.has_edge(0, 1) && !g.has_edge(1, 2) && !g.has_edge(2, 3) && g.has_edge(3, 4));
    }

    #[test]
    fn realize_leaves() {
        let star = Star(3).realize().unwrap();
        assert_eq!(star.degree(0), 3);
        assert_eq!(Matching(3).realize().unwrap().edges(), vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(Path(1).realize().unwrap().edge_count(), 0);
        assert_eq!(p("K4\\P1").realize().unwrap(), Graph::complete(4));
        assert!(matches!(p("K40 u K40").realize(), Err(GraphError::OrderOverflow { order: 80 })));
    }

    fn arb_spec() -> impl Strategy<Value = GraphSpec> {
        let leaf = prop_oneof![
            (1u32..6).prop_map(Complete),
            (1u32..6).prop_map(Path),
            (1u32..6).prop_map(Star),
            (1u32..6).prop_map(Book),
            (1u32..6).prop_map(Fan),
            (1u32..6).prop_map(Matching),
            (1u32..6).prop_map(Empty),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| GraphSpec::join(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| GraphSpec::union(a, b)),
                (1u32..4, inner.clone()).prop_map(|(k, a)| GraphSpec::copies(k, a)),
                (inner.clone(), inner).prop_map(|(a, b)| {
                    if b.order() <= a.order() {
                        GraphSpec::minus(a, b)
                    } else {
                        GraphSpec::minus(b, a)
                    }
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(GraphSpec::parse(&text).unwrap(), spec);
        }

        #[test]
        fn join_and_union_edge_counts(a in arb_spec(), b in arb_spec()) {
            prop_assume!(a.order() + b.order() <= 64);
            let ga = a.realize().unwrap();
            let gb = b.realize().unwrap();
            let join = GraphSpec::join(a.clone(), b.clone()).realize().unwrap();
            let union = GraphSpec::union(a, b).realize().unwrap();
            prop_assert_eq!(join.edge_count(), ga.edge_count() + gb.edge_count() + ga.order() * gb.order());
            prop_assert_eq!(union.edge_count(), ga.edge_count() + gb.edge_count());
        }

        #[test]
        fn realization_is_deterministic(spec in arb_spec()) {
            prop_assume!(spec.order() <= 64);
            prop_assert_eq!(spec.realize().unwrap(), spec.realize().unwrap());
        }
    }
}
