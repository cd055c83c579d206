//! Canonical labeling by color refinement plus an individualization search.
//!
//! The ordered partition is refined until equitable with respect to the
//! red and blue adjacency counts into every cell. Non-discrete partitions
//! branch on the vertices of the first smallest non-singleton cell; the
//! canonical labeling is the leaf whose relabeled pair string is smallest.
//! Interchangeable vertices (same colors to every other vertex) are only
//! branched on once per node.

use std::fmt;

use super::{pairs, ColoredGraph, EdgeColor};

/// Isomorphism-invariant key: vertex count, root count, then the pair
/// colors of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn root_count(&self) -> usize {
        self.0[1] as usize
    }

    /// The canonical representative; roots (if any) are vertices `0..k`.
    pub fn to_graph(&self) -> ColoredGraph {
        let n = self.order();
        let mut g = ColoredGraph::empty(n);
        for ((i, j), &d) in pairs(n).zip(&self.0[2..]) {
            let c = EdgeColor::from_digit(d).expect("valid key digit");
            if c != EdgeColor::None {
                g.set_color(i, j, c);
            }
        }
        g
    }
}

impl fmt::Display for CanonicalForm {
    /// Colored-graph encoding of the representative, suffixed with `|k`
    /// when rooted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_graph())?;
        if self.root_count() > 0 {
            write!(f, "|{}", self.root_count())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

pub fn canonical_form(g: &ColoredGraph) -> CanonicalForm {
    canonical_labeling(g, &[]).0
}

/// Canonical form of `g` with `roots[i]` pinned to position `i`.
pub fn rooted_canonical_form(g: &ColoredGraph, roots: &[usize]) -> CanonicalForm {
    canonical_labeling(g, roots).0
}

/// Returns the canonical form and the vertex order realizing it:
/// `order[i]` is the original vertex placed at position `i`. Roots
/// occupy the first positions in the order given.
pub fn canonical_labeling(g: &ColoredGraph, roots: &[usize]) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    let mut cells: Vec<u64> = roots.iter().map(|&r| 1u64 << r).collect();
    let root_mask = cells.iter().fold(0u64, |a, &b| a | b);
    debug_assert_eq!(root_mask.count_ones() as usize, roots.len(), "roots must be distinct");
    let rest = full_mask(n) & !root_mask;
    if rest != 0 {
        cells.push(rest);
    }
    let twins = twin_classes(g);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(g, roots.len() as u8, cells, &twins, &mut best);
    let (code, order) = best.expect("search visits at least one leaf");
    (CanonicalForm(code), order)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Class id per vertex; equal ids mean swapping the two vertices is an
/// automorphism.
fn twin_classes(g: &ColoredGraph) -> Vec<usize> {
    let n = g.order();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if class[u] != u {
                continue;
            }
            let others = !(1u64 << u | 1u64 << v);
            if g.red_neighbors(u) & others == g.red_neighbors(v) & others
                && g.blue_neighbors(u) & others == g.blue_neighbors(v) & others
            {
                class[v] = u;
                break;
            }
        }
    }
    class
}

/// Splits cells until every vertex of a cell sees the same number of red
/// and blue neighbours in every cell.
fn refine(g: &ColoredGraph, cells: &mut Vec<u64>) {
    'outer: loop {
        for ci in 0..cells.len() {
            let cell = cells[ci];
            if cell.count_ones() < 2 {
                continue;
            }
            let mut sigs: Vec<(Vec<u8>, usize)> = bits(cell)
                .map(|v| {
                    let sig = cells
                        .iter()
                        .flat_map(|&c| {
                            [(g.red_neighbors(v) & c).count_ones() as u8, (g.blue_neighbors(v) & c).count_ones() as u8]
                        })
                        .collect();
                    (sig, v)
                })
                .collect();
            sigs.sort();
            if sigs.first().map(|s| &s.0) == sigs.last().map(|s| &s.0) {
                continue;
            }
            let mut parts: Vec<u64> = Vec::new();
            let mut prev: Option<&Vec<u8>> = None;
            for (sig, v) in &sigs {
                if prev != Some(sig) {
                    parts.push(0);
                    prev = Some(sig);
                }
                *parts.last_mut().expect("pushed") |= 1u64 << v;
            }
            cells.splice(ci..=ci, parts);
            continue 'outer;
        }
        return;
    }
}

fn leaf_code(g: &ColoredGraph, roots: u8, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(2 + n * n.saturating_sub(1) / 2);
    code.push(n as u8);
    code.push(roots);
    for (i, j) in pairs(n) {
        code.push(g.color(order[i], order[j]).digit());
    }
    code
}

fn search(g: &ColoredGraph, roots: u8, mut cells: Vec<u64>, twins: &[usize], best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    refine(g, &mut cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.count_ones() > 1)
        .min_by_key(|(i, c)| (c.count_ones(), *i))
        .map(|(i, _)| i);
    let Some(ti) = target else {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = leaf_code(g, roots, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = cells[ti];
    let mut tried: u64 = 0;
    for v in bits(cell) {
        let class = twins[v];
        if tried >> class & 1 == 1 {
            continue;
        }
        tried |= 1u64 << class;
        let mut next = cells.clone();
        next.splice(ti..=ti, [1u64 << v, cell & !(1u64 << v)]);
        search(g, roots, next, twins, best);
    }
}
