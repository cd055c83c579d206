//! Edges lying on cycles of a fixed length.
//!
//! Every cycle lies inside one biconnected block, so witness searches are
//! confined to the block of the edge, and blocks that cannot host the
//! cycle (too small, or bipartite for odd lengths) are skipped outright.

use std::collections::BTreeSet;

use super::{ColoredGraph, EdgeColor};

struct Block {
    vertices: u64,
    edges: Vec<(usize, usize)>,
    bipartite: bool,
}

/// Edges of `g` (colors ignored) on at least one cycle of length `len`.
///
/// Pairs are returned as `(u, v)` with `u < v`.
pub fn cycle_edge_set(g: &ColoredGraph, len: usize) -> BTreeSet<(usize, usize)> {
    assert!(len >= 3, "cycle length must be at least 3");
    let mut found = BTreeSet::new();
    let dist = distances(g);
    for block in blocks(g) {
        if !block_can_host(&block, len) {
            continue;
        }
        for &(u, v) in &block.edges {
            if found.contains(&(u, v)) {
                continue;
            }
            if let Some(cycle) = witness_in(g, len, u, v, block.vertices, &dist) {
                for i in 0..cycle.len() {
                    let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    found.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    found
}

/// A cycle of length `len` through the edge `{u, v}`, listed from `u`
/// to `v` around the cycle, or `None`.
pub fn cycle_witness(g: &ColoredGraph, len: usize, u: usize, v: usize) -> Option<Vec<usize>> {
    assert!(len >= 3, "cycle length must be at least 3");
    if !g.has_edge(u, v) {
        return None;
    }
    let (a, b) = (u.min(v), u.max(v));
    let block = blocks(g).into_iter().find(|bl| bl.edges.contains(&(a, b)))?;
    if !block_can_host(&block, len) {
        return None;
    }
    let mut c = witness_in(g, len, a, b, block.vertices, &distances(g))?;
    // Search yields [a, b, …]; reorder so the walk starts at u and ends at v.
    if c[0] == u {
        c.reverse();
        c.rotate_right(1);
    } else {
        c.rotate_left(1);
    }
    Some(c)
}

/// No blue edge of `g` lies on a cycle of length `2k + 1`.
pub fn coloring_is_valid(g: &ColoredGraph, k: usize) -> bool {
    assert!(k >= 2, "cycle parameter must be at least 2");
    let len = 2 * k + 1;
    g.edges().filter(|e| e.2 == EdgeColor::Blue).all(|(u, v, _)| cycle_witness(g, len, u, v).is_none())
}

/// Calls `visit` once per simple cycle of length `len`, as a vertex list
/// starting at its smallest vertex, oriented so the second vertex is
/// smaller than the last.
pub fn for_each_cycle(g: &ColoredGraph, len: usize, mut visit: impl FnMut(&[usize])) {
    assert!(len >= 3);
    let n = g.order();
    let mut path = Vec::with_capacity(len);
    for s in 0..n {
        let allowed = !((1u64 << s) | ((1u64 << s) - 1));
        path.clear();
        path.push(s);
        extend_cycle(g, len, allowed & !(1u64 << s), &mut path, &mut visit);
    }
}

fn extend_cycle(g: &ColoredGraph, len: usize, free: u64, path: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let last = *path.last().expect("non-empty path");
    if path.len() == len {
        if g.has_edge(last, path[0]) && path[1] < last {
            visit(path);
        }
        return;
    }
    let mut cand = g.neighbors(last) & free;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        path.push(w);
        extend_cycle(g, len, free & !(1u64 << w), path, visit);
        path.pop();
    }
}

fn block_can_host(block: &Block, len: usize) -> bool {
    block.vertices.count_ones() as usize >= len && !(len % 2 == 1 && block.bipartite)
}

/// Path `v → … → u` of `len − 1` edges inside `within`, closed by `{u, v}`.
fn witness_in(g: &ColoredGraph, len: usize, u: usize, v: usize, within: u64, dist: &[Vec<u8>]) -> Option<Vec<usize>> {
    let mut path = vec![u, v];
    let free = within & !(1u64 << u) & !(1u64 << v);
    if dfs_path(g, len, u, free, &mut path, dist) {
        Some(path)
    } else {
        None
    }
}

fn dfs_path(g: &ColoredGraph, len: usize, target: usize, free: u64, path: &mut Vec<usize>, dist: &[Vec<u8>]) -> bool {
    let last = *path.last().expect("non-empty path");
    // Edges still to place, including the final one back to the target.
    let remaining = len - path.len() + 1;
    if remaining == 1 {
        return g.has_edge(last, target);
    }
    let mut cand = g.neighbors(last) & free;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if dist[w][target] as usize > remaining - 1 {
            continue;
        }
        path.push(w);
        if dfs_path(g, len, target, free & !(1u64 << w), path, dist) {
            return true;
        }
        path.pop();
    }
    false
}

fn distances(g: &ColoredGraph) -> Vec<Vec<u8>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut d = vec![u8::MAX; n];
            d[s] = 0;
            let mut frontier = 1u64 << s;
            let mut seen = frontier;
            let mut level = 0u8;
            while frontier != 0 {
                level += 1;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= g.neighbors(x);
                }
                next &= !seen;
                seen |= next;
                let mut nb = next;
                while nb != 0 {
                    let x = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    d[x] = level;
                }
                frontier = next;
            }
            d
        })
        .collect()
}

/// Biconnected blocks (Hopcroft–Tarjan, edge stack).
fn blocks(g: &ColoredGraph) -> Vec<Block> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, remaining neighbours)
        let mut frames: Vec<(usize, usize, u64)> = vec![(root, usize::MAX, g.neighbors(root))];
        while let Some(frame) = frames.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.2 == 0 {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut edges = Vec::new();
                        while let Some(e) = stack.pop() {
                            edges.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, v) {
                                break;
                            }
                        }
                        out.push(make_block(g, edges));
                    }
                }
                continue;
            }
            let w = frame.2.trailing_zeros() as usize;
            frame.2 &= frame.2 - 1;
            if disc[w] == usize::MAX {
                stack.push((v, w));
                disc[w] = time;
                low[w] = time;
                time += 1;
                frames.push((w, v, g.neighbors(w)));
            } else if w != parent && disc[w] < disc[v] {
                stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        }
    }
    out
}

fn make_block(g: &ColoredGraph, mut edges: Vec<(usize, usize)>) -> Block {
    edges.sort_unstable();
    let vertices = edges.iter().fold(0u64, |m, &(a, b)| m | 1u64 << a | 1u64 << b);
    // Two-color the block by BFS restricted to its vertex set.
    let mut side = [0u64; 2];
    let mut bipartite = true;
    let start = vertices.trailing_zeros() as usize;
    side[0] = 1u64 << start;
    let mut frontier = side[0];
    let mut s = 0;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            let nb = g.neighbors(x) & vertices;
            if nb & side[s] != 0 {
                bipartite = false;
            }
            next |= nb & !side[0] & !side[1];
        }
        s ^= 1;
        side[s] |= next;
        frontier = next;
    }
    Block { vertices, edges, bipartite }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_edges(g: &ColoredGraph) -> BTreeSet<(usize, usize)> {
        g.edges().map(|(u, v, _)| (u, v)).collect()
    }

    fn oracle(g: &ColoredGraph, len: usize) -> BTreeSet<(usize, usize)> {
        let mut s = BTreeSet::new();
        for_each_cycle(g, len, |c| {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                s.insert((a.min(b), a.max(b)));
            }
        });
        s
    }

    #[test]
    fn pentagon_and_k5() {
        let c5 = ColoredGraph::cycle(5, EdgeColor::Red);
        assert_eq!(cycle_edge_set(&c5, 5), all_edges(&c5));
        let k5 = ColoredGraph::complete(5, EdgeColor::Red);
        assert_eq!(cycle_edge_set(&k5, 5).len(), 10);
    }

    #[test]
    fn bipartite_has_no_odd_cycle_edges() {
        let mut g = ColoredGraph::empty(8);
        for a in 0..4 {
            for b in 4..8 {
                g.set_color(a, b, EdgeColor::Red);
            }
        }
        for len in [3, 5, 7] {
            assert!(cycle_edge_set(&g, len).is_empty());
        }
        assert_eq!(cycle_edge_set(&g, 4).len(), 16);
    }

    #[test]
    fn counts_each_cycle_once() {
        let mut count = 0;
        for_each_cycle(&ColoredGraph::complete(5, EdgeColor::Red), 5, |_| count += 1);
        assert_eq!(count, 12);
        count = 0;
        for_each_cycle(&ColoredGraph::complete(6, EdgeColor::Red), 3, |_| count += 1);
        assert_eq!(count, 20);
    }

    #[test]
    fn witnesses_are_cycles() {
        let mut g = ColoredGraph::cycle(7, EdgeColor::Red);
        g.set_color(0, 3, EdgeColor::Red);
        let c = cycle_witness(&g, 5, 3, 0).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!((c[0], c[4]), (3, 0));
        for i in 0..5 {
            assert!(g.has_edge(c[i], c[(i + 1) % 5]));
        }
        assert!(cycle_witness(&g, 6, 0, 1).is_none());
        assert!(cycle_witness(&g, 5, 0, 2).is_none());
    }

    #[test]
    fn matches_enumeration_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(3..=10);
            let p = rng.gen_range(0.15..0.7);
            let mut g = ColoredGraph::empty(n);
            for (i, j) in crate::graph::pairs(n) {
                if rng.gen_bool(p) {
                    g.set_color(i, j, EdgeColor::Red);
                }
            }
            for len in 3..=n.min(9) {
                assert_eq!(cycle_edge_set(&g, len), oracle(&g, len), "{g} L={len}");
            }
        }
    }

    #[test]
    fn coloring_validity() {
        assert!(coloring_is_valid(&ColoredGraph::complete(6, EdgeColor::Red), 2));
        let mut g = ColoredGraph::cycle(5, EdgeColor::Red);
        g.set_color(0, 1, EdgeColor::Blue);
        assert!(!coloring_is_valid(&g, 2));
        assert!(coloring_is_valid(&g, 3));
    }
}
