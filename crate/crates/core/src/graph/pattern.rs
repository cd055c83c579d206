use std::fmt;
use std::str::FromStr;

use super::{pair_index, pairs, parse_encoding, ColoredGraph, EdgeColor, Family, GraphError};

/// Pattern pair state; BLACK matches either edge color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternColor {
    None = 0,
    Red = 1,
    Blue = 2,
    Black = 3,
}

impl PatternColor {
    fn from_digit(d: u8) -> Self {
        match d {
            0 => PatternColor::None,
            1 => PatternColor::Red,
            2 => PatternColor::Blue,
            _ => PatternColor::Black,
        }
    }

    /// Whether a host pair of color `c` realizes this pattern pair.
    pub fn matches(self, c: EdgeColor, induced: bool) -> bool {
        match self {
            PatternColor::None => !induced || c == EdgeColor::None,
            PatternColor::Red => c == EdgeColor::Red,
            PatternColor::Blue => c == EdgeColor::Blue,
            PatternColor::Black => c != EdgeColor::None,
        }
    }
}

impl From<EdgeColor> for PatternColor {
    fn from(c: EdgeColor) -> Self {
        PatternColor::from_digit(c.digit())
    }
}

/// Red/blue/black-colored graph used as a forbidden or counted pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    n: usize,
    colors: Vec<PatternColor>,
}

impl PatternGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> PatternColor {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => self.colors[pair_index(self.n, u, v)],
            std::cmp::Ordering::Greater => self.colors[pair_index(self.n, v, u)],
            std::cmp::Ordering::Equal => PatternColor::None,
        }
    }

    pub fn from_pairs(n: usize, colors: Vec<PatternColor>) -> Self {
        assert_eq!(colors.len(), n * n.saturating_sub(1) / 2);
        PatternGraph { n, colors }
    }

    /// Pattern on `n` vertices whose listed pairs are BLACK.
    pub fn black(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut colors = vec![PatternColor::None; n * n.saturating_sub(1) / 2];
        for &(u, v) in edges {
            let (a, b) = (u.min(v), u.max(v));
            colors[pair_index(n, a, b)] = PatternColor::Black;
        }
        PatternGraph { n, colors }
    }

    pub fn has_black(&self) -> bool {
        self.colors.contains(&PatternColor::Black)
    }

    /// Number of non-NONE pairs.
    pub fn edge_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c != PatternColor::None).count()
    }

    /// Every red/blue graph obtained by recoloring the black pairs.
    pub fn recolorings(&self) -> Vec<ColoredGraph> {
        let black: Vec<usize> =
            (0..self.colors.len()).filter(|&k| self.colors[k] == PatternColor::Black).collect();
        let pair_list: Vec<_> = pairs(self.n).collect();
        (0..1u32 << black.len())
            .map(|mask| {
                let mut g = ColoredGraph::empty(self.n);
                for (k, &(i, j)) in pair_list.iter().enumerate() {
                    let c = match self.colors[k] {
                        PatternColor::None => EdgeColor::None,
                        PatternColor::Red => EdgeColor::Red,
                        PatternColor::Blue => EdgeColor::Blue,
                        PatternColor::Black => {
                            let bit = black.iter().position(|&b| b == k).expect("black pair");
                            if mask >> bit & 1 == 1 {
                                EdgeColor::Blue
                            } else {
                                EdgeColor::Red
                            }
                        }
                    };
                    if c != EdgeColor::None {
                        g.set_color(i, j, c);
                    }
                }
                g
            })
            .collect()
    }

    pub fn encode(&self) -> String {
        let digits: String = self.colors.iter().map(|&c| char::from(b'0' + c as u8)).collect();
        format!("{}:{}", self.n, digits)
    }

    /// Vertex order that keeps each new vertex adjacent to earlier ones
    /// where possible, so partial maps fail early.
    fn search_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        while order.len() < self.n {
            let next = (0..self.n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = order.iter().filter(|&&u| self.color(u, v) != PatternColor::None).count();
                    let deg = (0..self.n).filter(|&u| self.color(u, v) != PatternColor::None).count();
                    (back, deg, std::cmp::Reverse(v))
                })
                .expect("unplaced vertex exists");
            placed[next] = true;
            order.push(next);
        }
        order
    }
}

impl From<&ColoredGraph> for PatternGraph {
    fn from(g: &ColoredGraph) -> Self {
        PatternGraph { n: g.order(), colors: g.pair_colors().into_iter().map(PatternColor::from).collect() }
    }
}

impl FromStr for PatternGraph {
    type Err = GraphError;

    /// Same encoding as colored graphs with the extra digit 3 = BLACK.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, digits) = parse_encoding(s, 3)?;
        Ok(PatternGraph { n, colors: digits.into_iter().map(PatternColor::from_digit).collect() })
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternGraph({})", self.encode())
    }
}

/// Whether some injective map of the pattern's vertices into `g` realizes it.
///
/// In non-induced mode only the pattern's edges constrain the map; in
/// induced mode pattern non-edges must also map to non-edges.
pub fn contains_pattern(g: &ColoredGraph, p: &PatternGraph, induced: bool) -> bool {
    if p.order() > g.order() {
        return false;
    }
    let order = p.search_order();
    let mut image = vec![usize::MAX; p.order()];
    extend_map(g, p, induced, &order, 0, &mut image, 0)
}

/// Like [`contains_pattern`], restricted to maps whose image contains `anchor`.
pub fn contains_pattern_through(g: &ColoredGraph, p: &PatternGraph, induced: bool, anchor: usize) -> bool {
    if p.order() > g.order() {
        return false;
    }
    let order = p.search_order();
    let mut image = vec![usize::MAX; p.order()];
    for depth in 0..order.len() {
        // Put the anchored pattern vertex first so it is fixed before the search.
        let mut ord = order.clone();
        let a = ord.remove(depth);
        ord.insert(0, a);
        image[a] = anchor;
        if consistent(g, p, induced, &ord, 0, &image) && extend_map(g, p, induced, &ord, 1, &mut image, 1u64 << anchor) {
            return true;
        }
        image[a] = usize::MAX;
    }
    false
}

fn consistent(g: &ColoredGraph, p: &PatternGraph, induced: bool, order: &[usize], depth: usize, image: &[usize]) -> bool {
    let v = order[depth];
    order[..depth].iter().all(|&u| p.color(u, v).matches(g.color(image[u], image[v]), induced))
}

fn extend_map(
    g: &ColoredGraph,
    p: &PatternGraph,
    induced: bool,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: u64,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..g.order() {
        if used >> w & 1 == 1 {
            continue;
        }
        image[v] = w;
        if consistent(g, p, induced, order, depth, image)
            && extend_map(g, p, induced, order, depth + 1, image, used | 1u64 << w)
        {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

/// `g` contains none of the family's patterns (non-induced).
pub fn is_family_free(g: &ColoredGraph, family: Family) -> bool {
    family.patterns().iter().all(|np| !contains_pattern(g, &np.pattern, false))
}
