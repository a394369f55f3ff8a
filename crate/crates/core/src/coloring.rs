//! Red/blue edge colorings of a host graph.
//!
//! Edges are addressed by their index in the host's canonical edge order
//! (lexicographic on `(min, max)`); the search engine and the DIMACS export use the same
//! indices.

use serde::{Deserialize, Serialize};

use crate::error::ColoringError;
use crate::graph::{bit, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    Red,
    Blue,
    Unassigned,
}

/// The two real colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Red => Side::Blue,
            Side::Blue => Side::Red,
        }
    }
}

impl From<Side> for EdgeColor {
    fn from(s: Side) -> Self {
        match s {
            Side::Red => EdgeColor::Red,
            Side::Blue => EdgeColor::Blue,
        }
    }
}

/// One colored edge in the JSON edge-list form `[u, v, "R"|"B"]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTriple(pub usize, pub usize, pub Side);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    host: Graph,
    edges: Vec<(usize, usize)>,
    colors: Vec<EdgeColor>,
}

impl Coloring {
    /// All host edges unassigned.
    pub fn new(host: Graph) -> Self {
        let edges = host.edges();
        let colors = vec![EdgeColor::Unassigned; edges.len()];
        Coloring { host, edges, colors }
    }

    pub fn uniform(host: Graph, side: Side) -> Self {
        let mut c = Coloring::new(host);
        c.colors.fill(side.into());
        c
    }

    /// Builds a complete coloring from one color per canonical edge index.
    pub fn from_sides(host: Graph, sides: &[Side]) -> Self {
        let mut c = Coloring::new(host);
        assert_eq!(sides.len(), c.edges.len(), "one color per host edge");
        for (slot, &s) in c.colors.iter_mut().zip(sides) {
            *slot = s.into();
        }
        c
    }

    /// Colors every host edge Red if `red(u, v)` holds and Blue otherwise.
    pub fn from_fn(host: Graph, mut red: impl FnMut(usize, usize) -> bool) -> Self {
        let mut c = Coloring::new(host);
        for (i, &(u, v)) in c.edges.iter().enumerate() {
            c.colors[i] = if red(u, v) { EdgeColor::Red } else { EdgeColor::Blue };
        }
        c
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        self.edge_index(u, v).map(|i| self.colors[i])
    }

    pub fn set(&mut self, u: usize, v: usize, color: EdgeColor) -> Result<(), ColoringError> {
        let order = self.host.order();
        if u >= order || v >= order {
            return Err(ColoringError::VertexOutOfRange { vertex: u.max(v), order });
        }
        let i = self.edge_index(u, v).ok_or(ColoringError::NotAnEdge(u, v))?;
        self.colors[i] = color;
        Ok(())
    }

    pub fn set_index(&mut self, index: usize, color: EdgeColor) {
        self.colors[index] = color;
    }

    pub fn is_complete(&self) -> bool {
        !self.colors.contains(&EdgeColor::Unassigned)
    }

    /// Graph on the host's vertex set holding exactly the edges of one color.
    pub fn monochromatic_subgraph(&self, side: Side) -> Graph {
        let want = EdgeColor::from(side);
        let mut g = Graph::empty(self.host.order());
        for (&(u, v), &c) in self.edges.iter().zip(&self.colors) {
            if c == want {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn colored_degree(&self, v: usize, color: EdgeColor) -> Result<usize, ColoringError> {
        let order = self.host.order();
        if v >= order {
            return Err(ColoringError::VertexOutOfRange { vertex: v, order });
        }
        Ok(self
            .edges
            .iter()
            .zip(&self.colors)
            .filter(|(&(a, b), &c)| c == color && (a == v || b == v))
            .count())
    }

    /// Neighbors of `v` joined to it by an edge of the given color.
    pub fn colored_neighbors(&self, v: usize, side: Side) -> u64 {
        let want = EdgeColor::from(side);
        self.edges
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == want)
            .fold(0, |acc, (&(a, b), _)| {
                if a == v {
                    acc | bit(b)
                } else if b == v {
                    acc | bit(a)
                } else {
                    acc
                }
            })
    }

    pub fn to_triples(&self) -> Vec<EdgeTriple> {
        self.edges
            .iter()
            .zip(&self.colors)
            .filter_map(|(&(u, v), &c)| match c {
                EdgeColor::Red => Some(EdgeTriple(u, v, Side::Red)),
                EdgeColor::Blue => Some(EdgeTriple(u, v, Side::Blue)),
                EdgeColor::Unassigned => None,
            })
            .collect()
    }

    pub fn from_triples(host: Graph, triples: &[EdgeTriple]) -> Result<Self, ColoringError> {
        let mut c = Coloring::new(host);
        for &EdgeTriple(u, v, s) in triples {
            c.set(u, v, s.into())?;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_triples()).expect("triples serialize")
    }

    pub fn from_json(host: Graph, text: &str) -> Result<Self, ColoringError> {
        let triples: Vec<EdgeTriple> =
            serde_json::from_str(text).map_err(|e| ColoringError::Json(e.to_string()))?;
        Coloring::from_triples(host, &triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_spec::GraphSpec;

    fn host(s: &str) -> Graph {
        GraphSpec::parse(s).unwrap().realize().unwrap()
    }

    #[test]
    fn uniform_sides() {
        let c = Coloring::uniform(Graph::complete(4), Side::Red);
        assert_eq!(c.monochromatic_subgraph(Side::Red), Graph::complete(4));
        assert_eq!(c.monochromatic_subgraph(Side::Blue), Graph::empty(4));
        let c = Coloring::uniform(Graph::complete(5), Side::Blue);
        for v in 0..5 {
            assert_eq!(c.colored_degree(v, EdgeColor::Blue).unwrap(), 4);
        }
    }

    #[test]
    fn two_triangles_split() {
        // Red K3 u K3, blue K_{3,3} on six vertices.
        let c = Coloring::from_fn(Graph::complete(6), |u, v| (u < 3) == (v < 3));
        let red = c.monochromatic_subgraph(Side::Red);
        assert_eq!(red, host("K3 u K3"));
        let blue = c.monochromatic_subgraph(Side::Blue);
        assert_eq!(blue.edge_count(), 9);
        for v in 0..6 {
            assert_eq!(c.colored_degree(v, EdgeColor::Red).unwrap(), 2);
        }
    }

    #[test]
    fn single_red_edge_on_minus_path() {
        let c = Coloring::from_fn(host("K5\\P5"), |u, v| (u, v) == (0, 2));
        assert_eq!(c.monochromatic_subgraph(Side::Red).edge_count(), 1);
        assert_eq!(c.monochromatic_subgraph(Side::Blue).edge_count(), 5);
    }

    #[test]
    fn colored_degrees_sum_to_host_degree() {
        let h = host("K9\\P4");
        let c = Coloring::from_fn(h.clone(), |u, v| (u + v) % 3 == 0);
        for v in 0..9 {
            let r = c.colored_degree(v, EdgeColor::Red).unwrap();
            let b = c.colored_degree(v, EdgeColor::Blue).unwrap();
            assert_eq!(r + b, h.degree(v));
            assert_eq!(c.colored_neighbors(v, Side::Red).count_ones() as usize, r);
        }
        assert_eq!(c.colored_degree(1, EdgeColor::Red).unwrap() + c.colored_degree(1, EdgeColor::Blue).unwrap(), 6);
        assert!(c.colored_degree(9, EdgeColor::Red).is_err());
    }

    #[test]
    fn partial_colorings_and_errors() {
        let mut c = Coloring::new(host("K5\\P5"));
        assert!(!c.is_complete());
        assert_eq!(c.set(0, 1, EdgeColor::Red), Err(ColoringError::NotAnEdge(0, 1)));
        assert!(c.set(0, 7, EdgeColor::Red).is_err());
        c.set(2, 0, EdgeColor::Red).unwrap();
        assert_eq!(c.color(0, 2), Some(EdgeColor::Red));
        assert_eq!(c.monochromatic_subgraph(Side::Red).edge_count(), 1);
        assert_eq!(c.monochromatic_subgraph(Side::Blue).edge_count(), 0);
        assert_eq!(c.colored_degree(0, EdgeColor::Unassigned).unwrap(), 2);
    }

    #[test]
    fn json_edge_list() {
        let mut c = Coloring::new(Graph::complete(3));
        c.set(0, 1, EdgeColor::Red).unwrap();
        c.set(1, 2, EdgeColor::Blue).unwrap();
        let json = c.to_json();
        assert_eq!(json, r#"[[0,1,"R"],[1,2,"B"]]"#);
        assert_eq!(Coloring::from_json(Graph::complete(3), &json).unwrap(), c);
        assert!(matches!(
            Coloring::from_json(Graph::complete(3), r#"[[0,1,"G"]]"#),
            Err(ColoringError::Json(_))
        ));
    }
}
