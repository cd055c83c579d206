//! Explicit graphs: the clique-plus-bipartite graph, blow-ups of a path with
//! a looped end, and the four-part structure of the exact result for cycles
//! of length at least seven.

use crate::graph::{cycle_edge_set, ColoredGraph, EdgeColor, GraphError};

use super::{edge_budget, Quadruple};

/// A clique on `⌊(2n+4)/3⌋` vertices and a complete balanced bipartite
/// graph on `⌊(n+1)/3⌋` vertices, glued at one vertex.
///
/// The clique is `0..k`; the bipartite block is vertex `k − 1` together
/// with `k..n`, split into sides of sizes `⌈m/2⌉` (containing the shared
/// vertex) and `⌊m/2⌋`.
pub fn construction_g1(n: usize) -> Result<ColoredGraph, GraphError> {
    assert!(n >= 5, "construction needs at least 5 vertices");
    let k = (2 * n + 4) / 3;
    let m = (n + 1) / 3;
    assert_eq!(k + m - 1, n, "block sizes must cover {n} vertices");
    let mut g = ColoredGraph::new(n)?;
    for i in 0..k {
        for j in i + 1..k {
            g.set_color(i, j, EdgeColor::Red);
        }
    }
    let shared = k - 1;
    let big = m.div_ceil(2);
    // Side X: shared vertex plus k..k+big-1; side Y: the rest.
    let side_x: Vec<usize> = std::iter::once(shared).chain(k..k + big - 1).collect();
    for &x in &side_x {
        for y in k + big - 1..n {
            g.set_color(x, y, EdgeColor::Red);
        }
    }
    Ok(g)
}

/// Blow-up of the path `A – B – C – D` with all edges inside `D`.
/// Parts occupy consecutive vertex ranges in that order.
pub fn construction_g2(n: usize, q: Quadruple) -> Result<ColoredGraph, GraphError> {
    assert_eq!(q.total(), n, "quadruple {q} does not sum to {n}");
    let mut g = ColoredGraph::new(n)?;
    let a = 0..q.a;
    let b = q.a..q.a + q.b;
    let c = b.end..b.end + q.c;
    let d = c.end..n;
    join(&mut g, a, b.clone());
    join(&mut g, b, c.clone());
    join(&mut g, c, d.clone());
    for i in d.clone() {
        for j in i + 1..d.end {
            g.set_color(i, j, EdgeColor::Red);
        }
    }
    Ok(g)
}

fn join(g: &mut ColoredGraph, x: std::ops::Range<usize>, y: std::ops::Range<usize>) {
    for i in x {
        for j in y.clone() {
            g.set_color(i, j, EdgeColor::Red);
        }
    }
}

/// Number of edges of [`construction_g2`] lying on a 5-cycle, by block
/// counting: every edge except those between `A` and `B`.
///
/// Valid when `b ≥ 1`, `c ≥ 2` and `d ≥ 2`; `None` otherwise. An `A–B`
/// edge would need a path of length 3 between two vertices of `B`, and
/// every such path has even length.
pub fn g2_c5_edge_count(q: Quadruple) -> Option<u64> {
    if q.b < 1 || q.c < 2 || q.d < 2 {
        return None;
    }
    Some(q.edge_count() - (q.a * q.b) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourPartSizes {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    /// Edges deleted from the clique on `D` to meet the budget exactly.
    pub removed: usize,
}

impl FourPartSizes {
    /// Edges off every long odd cycle: the complete join of `A ∪ C` to `B`.
    pub fn non_cycle_edges(&self) -> usize {
        (self.a + 1) * self.b
    }
}

/// Part sizes `|A| = ⌊(n−2)/6⌋`, `|B| = ⌊(n+1)/6⌋`, `|C| = 1`,
/// `|D| = ⌊(2n+1)/3⌋`.
pub fn four_part_sizes(n: usize) -> FourPartSizes {
    assert!(n >= 7, "structure defined for n ≥ 7");
    let (a, b, d) = ((n - 2) / 6, (n + 1) / 6, (2 * n + 1) / 3);
    assert_eq!(a + b + 1 + d, n, "part sizes must sum to {n}");
    let full = (a + 1) * b + d + d * (d - 1) / 2;
    let budget = edge_budget(n);
    assert!(full >= budget, "edge budget {budget} unreachable at n = {n}");
    FourPartSizes { a, b, c: 1, d, removed: full - budget }
}

/// The four-part graph: `A`, `B` independent, `A ∪ C` completely joined to
/// `B`, the single vertex of `C` joined to all of `D`, and `D` a clique
/// with just enough edges removed to land on `⌊n²/4⌋ + 1` edges.
///
/// Removed edges are `{d_i, d_{i+1}}`, first for even `i` (a matching),
/// then for odd `i`, so at most a Hamiltonian path of `D` is taken out.
/// Parts are laid out as `A`, `B`, `C`, `D`.
pub fn theorem8_structure(n: usize) -> Result<ColoredGraph, GraphError> {
    let p = four_part_sizes(n);
    assert!(p.removed < p.d, "cannot remove {} edges from a path on {} vertices", p.removed, p.d);
    let mut g = ColoredGraph::new(n)?;
    let c = p.a + p.b;
    join(&mut g, 0..p.a, p.a..c);
    join(&mut g, c..c + 1, p.a..c);
    join(&mut g, c..c + 1, c + 1..n);
    let d0 = c + 1;
    for i in d0..n {
        for j in i + 1..n {
            g.set_color(i, j, EdgeColor::Red);
        }
    }
    let path = (0..p.d - 1).step_by(2).chain((1..p.d - 1).step_by(2));
    for i in path.take(p.removed) {
        g.set_color(d0 + i, d0 + i + 1, EdgeColor::None);
    }
    debug_assert_eq!(g.edge_count(), edge_budget(n));
    Ok(g)
}

/// Deletes edges until exactly `⌊n²/4⌋ + 1` remain, taking edges on
/// `len`-cycles first (lowest pairs first). Deleting an edge never adds
/// an edge to the cycle set, so the result has at most as many cycle
/// edges as `g`.
pub fn truncate_to_budget(g: &ColoredGraph, len: usize) -> ColoredGraph {
    let budget = edge_budget(g.order());
    assert!(g.edge_count() >= budget, "graph is below the edge budget");
    let mut excess = g.edge_count() - budget;
    let mut out = g.clone();
    let on_cycles = cycle_edge_set(g, len);
    let rest: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).filter(|e| !on_cycles.contains(e)).collect();
    for (u, v) in on_cycles.into_iter().chain(rest) {
        if excess == 0 {
            break;
        }
        out.set_color(u, v, EdgeColor::None);
        excess -= 1;
    }
    out
}
