//! Red/blue edge-colored graphs, wildcard patterns, canonical forms,
//! isomorph-free enumeration and cycle-edge computations.

mod canon;
mod cycles;
mod enumerate;
mod family;
mod pattern;

pub use canon::{canonical_form, canonical_labeling, rooted_canonical_form, CanonicalForm};
pub use cycles::{coloring_is_valid, cycle_edge_set, cycle_witness, for_each_cycle};
pub use enumerate::{enumerate_colored_graphs, graphs_with_keys, preload_level, Level, MAX_ENUMERATION_ORDER};
pub use family::{path_colorings, Family, NamedPattern};
pub use pattern::{contains_pattern, contains_pattern_through, is_family_free, PatternColor, PatternGraph};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest vertex count a [`ColoredGraph`] can hold; adjacency rows are `u64` words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{0} vertices exceeds the capacity of {1}")]
    Capacity(usize, usize),
    #[error("malformed graph encoding `{0}`")]
    BadEncoding(String),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexRange(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    None = 0,
    Red = 1,
    Blue = 2,
}

impl EdgeColor {
    pub const ALL: [EdgeColor; 3] = [EdgeColor::None, EdgeColor::Red, EdgeColor::Blue];

    pub fn digit(self) -> u8 {
        self as u8
    }

    pub fn from_digit(d: u8) -> Option<Self> {
        match d {
            0 => Some(EdgeColor::None),
            1 => Some(EdgeColor::Red),
            2 => Some(EdgeColor::Blue),
            _ => None,
        }
    }
}

/// Graph whose vertex pairs are each NONE, RED or BLUE.
///
/// A plain (uncolored) graph is stored with every edge RED.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    red: Vec<u64>,
    blue: Vec<u64>,
}

/// Position of the pair `{i, j}` (i < j) in row-major upper-triangular order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < n` in row-major upper-triangular order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl ColoredGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n, MAX_VERTICES));
        }
        Ok(ColoredGraph { n, red: vec![0; n], blue: vec![0; n] })
    }

    /// Edgeless graph; panics above [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        Self::new(n).expect("vertex count within capacity")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, EdgeColor)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v, c) in edges {
            if u >= n || v >= n || u == v {
                return Err(GraphError::VertexRange(u.max(v), n));
            }
            g.set_color(u, v, c);
        }
        Ok(g)
    }

    /// Plain graph with all edges red.
    pub fn plain(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, EdgeColor::Red)).collect();
        Self::from_edges(n, &e)
    }

    pub fn complete(n: usize, color: EdgeColor) -> Self {
        let mut g = Self::empty(n);
        for (i, j) in pairs(n) {
            g.set_color(i, j, color);
        }
        g
    }

    /// Cycle `0-1-…-(n-1)-0` in one color.
    pub fn cycle(n: usize, color: EdgeColor) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            g.set_color(i, (i + 1) % n, color);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> EdgeColor {
        if u == v {
            return EdgeColor::None;
        }
        let bit = 1u64 << v;
        if self.red[u] & bit != 0 {
            EdgeColor::Red
        } else if self.blue[u] & bit != 0 {
            EdgeColor::Blue
        } else {
            EdgeColor::None
        }
    }

    pub fn set_color(&mut self, u: usize, v: usize, c: EdgeColor) {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        let (bu, bv) = (1u64 << u, 1u64 << v);
        self.red[u] &= !bv;
        self.red[v] &= !bu;
        self.blue[u] &= !bv;
        self.blue[v] &= !bu;
        match c {
            EdgeColor::None => {}
            EdgeColor::Red => {
                self.red[u] |= bv;
                self.red[v] |= bu;
            }
            EdgeColor::Blue => {
                self.blue[u] |= bv;
                self.blue[v] |= bu;
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u) & (1u64 << v) != 0
    }

    /// Neighbourhood of `u` (either color) as a bitmask.
    pub fn neighbors(&self, u: usize) -> u64 {
        self.red[u] | self.blue[u]
    }

    pub fn red_neighbors(&self, u: usize) -> u64 {
        self.red[u]
    }

    pub fn blue_neighbors(&self, u: usize) -> u64 {
        self.blue[u]
    }

    pub fn edge_count(&self) -> usize {
        self.red.iter().chain(&self.blue).map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn red_edge_count(&self) -> usize {
        self.red.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn blue_edge_count(&self) -> usize {
        self.blue.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v, color)` with `u < v`, in pair order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeColor)> + '_ {
        pairs(self.n).filter_map(move |(i, j)| match self.color(i, j) {
            EdgeColor::None => None,
            c => Some((i, j, c)),
        })
    }

    /// Subgraph induced by `vertices`, relabelled `vertices[k] → k`.
    pub fn induced(&self, vertices: &[usize]) -> ColoredGraph {
        let mut g = ColoredGraph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            let mut red = 0u64;
            let mut blue = 0u64;
            for (b, &v) in vertices.iter().enumerate() {
                if self.red[u] >> v & 1 == 1 {
                    red |= 1 << b;
                } else if self.blue[u] >> v & 1 == 1 {
                    blue |= 1 << b;
                }
            }
            g.red[a] = red;
            g.blue[a] = blue;
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        self.induced(&inv)
    }

    /// Same graph with every edge recolored red.
    pub fn to_plain(&self) -> ColoredGraph {
        let mut g = self.clone();
        for u in 0..self.n {
            g.red[u] |= g.blue[u];
            g.blue[u] = 0;
        }
        g
    }

    /// Copy with one extra vertex whose colors to `0..n` are `row`.
    pub fn extend(&self, row: &[EdgeColor]) -> Result<ColoredGraph, GraphError> {
        assert_eq!(row.len(), self.n);
        let mut g = ColoredGraph::new(self.n + 1)?;
        g.red[..self.n].copy_from_slice(&self.red);
        g.blue[..self.n].copy_from_slice(&self.blue);
        for (u, &c) in row.iter().enumerate() {
            if c != EdgeColor::None {
                g.set_color(u, self.n, c);
            }
        }
        Ok(g)
    }

    /// Pair colors in row-major upper-triangular order.
    pub fn pair_colors(&self) -> Vec<EdgeColor> {
        pairs(self.n).map(|(i, j)| self.color(i, j)).collect()
    }

    /// Text encoding `n:<digits>` (0 = none, 1 = red, 2 = blue).
    pub fn encode(&self) -> String {
        let digits: String = self.pair_colors().iter().map(|c| char::from(b'0' + c.digit())).collect();
        format!("{}:{}", self.n, digits)
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph({})", self.encode())
    }
}

/// Parses `n:<digits>` into a vertex count and per-pair digits.
pub(crate) fn parse_encoding(s: &str, max_digit: u8) -> Result<(usize, Vec<u8>), GraphError> {
    let bad = || GraphError::BadEncoding(s.to_string());
    let (n, digits) = s.split_once(':').ok_or_else(bad)?;
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n: usize = n.parse().map_err(|_| bad())?;
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity(n, MAX_VERTICES));
    }
    let digits: Vec<u8> = digits
        .bytes()
        .map(|b| b.checked_sub(b'0').filter(|&d| d <= max_digit))
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    if digits.len() != n * n.saturating_sub(1) / 2 {
        return Err(bad());
    }
    Ok((n, digits))
}

impl FromStr for ColoredGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, digits) = parse_encoding(s, 2)?;
        let mut g = ColoredGraph::new(n)?;
        for ((i, j), d) in pairs(n).zip(digits) {
            g.set_color(i, j, EdgeColor::from_digit(d).expect("digit range checked"));
        }
        Ok(g)
    }
}
