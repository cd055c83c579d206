//! Exhaustive minimum of `|C_L(G)|` over graphs with exactly `⌊n²/4⌋ + 1`
//! edges, one graph per isomorphism class.
//!
//! Graphs are grown one vertex at a time. Deleting a minimum-degree vertex
//! from a graph on `m` vertices with `e` edges leaves at least
//! `e − ⌊2e/m⌋` edges, so every target graph arises from a chain whose
//! level-`m` member has at least `ℓ_m` edges, where `ℓ_n` is the budget and
//! `ℓ_{m−1} = ℓ_m − ⌊2ℓ_m/m⌋`. Each step only appends a vertex whose degree
//! is minimal in the child.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use rayon::prelude::*;

use crate::graph::{canonical_form, cycle_edge_set, for_each_cycle, pairs, CanonicalForm, ColoredGraph, EdgeColor};

use super::{edge_budget, ExtremalError};

pub const MAX_ORACLE_ORDER: usize = 9;

/// Largest order for which [`raw_minimum`] walks every edge subset.
pub const MAX_RAW_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    /// Isomorphism classes kept at each order `1..=n`.
    pub level_sizes: Vec<usize>,
    /// Children canonicalized over the whole search.
    pub candidates: u64,
}

#[derive(Debug)]
pub struct SearchSpace {
    pub n: usize,
    pub graphs: Vec<(CanonicalForm, ColoredGraph)>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub len: usize,
    pub edge_budget: usize,
    pub min_cycle_edges: usize,
    /// Every minimizer, in canonical labeling, sorted by canonical key.
    pub witnesses: Vec<ColoredGraph>,
    pub stats: SearchStats,
}

impl ExtremalReport {
    /// `n L budget min witness…`, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut fields = vec![self.n.to_string(), self.len.to_string(), self.edge_budget.to_string(), self.min_cycle_edges.to_string()];
        fields.extend(self.witnesses.iter().map(|g| g.to_string()));
        fields.join("\t")
    }
}

impl fmt::Display for ExtremalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

fn check_order(n: usize) -> Result<(), ExtremalError> {
    if n > MAX_ORACLE_ORDER {
        return Err(ExtremalError::Capacity(n, MAX_ORACLE_ORDER));
    }
    if edge_budget(n) > n * n.saturating_sub(1) / 2 {
        return Err(ExtremalError::NoGraphs(n));
    }
    Ok(())
}

/// Minimum edge counts `ℓ_1..=ℓ_n` along a min-degree deletion chain.
fn lower_bounds(n: usize) -> Vec<usize> {
    let mut lb = vec![0; n + 1];
    lb[n] = edge_budget(n);
    for m in (2..=n).rev() {
        lb[m - 1] = lb[m] - 2 * lb[m] / m;
    }
    lb
}

/// All graphs on `n` vertices with exactly `⌊n²/4⌋ + 1` edges up to
/// isomorphism. Memoized.
pub fn search_space(n: usize) -> Result<Arc<SearchSpace>, ExtremalError> {
    check_order(n)?;
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<SearchSpace>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.lock().expect("memo lock").get(&n) {
        return Ok(hit.clone());
    }
    let space = Arc::new(grow(n));
    memo.lock().expect("memo lock").insert(n, space.clone());
    Ok(space)
}

fn grow(n: usize) -> SearchSpace {
    let lb = lower_bounds(n);
    let budget = edge_budget(n);
    let mut level = vec![(canonical_form(&ColoredGraph::empty(1)), ColoredGraph::empty(1))];
    let mut stats = SearchStats { level_sizes: vec![1], candidates: 0 };
    for m in 2..=n {
        let hi = budget.min(m * (m - 1) / 2);
        let children: Vec<Vec<(CanonicalForm, ColoredGraph)>> =
            level.par_iter().map(|(_, parent)| children(parent, lb[m], hi)).collect();
        stats.candidates += children.iter().map(|c| c.len() as u64).sum::<u64>();
        let merged: BTreeMap<CanonicalForm, ColoredGraph> = children.into_iter().flatten().collect();
        level = merged.into_iter().collect();
        stats.level_sizes.push(level.len());
    }
    SearchSpace { n, graphs: level, stats }
}

/// One-vertex extensions with edge count in `lo..=hi` whose new vertex has
/// minimum degree, canonically relabeled.
fn children(parent: &ColoredGraph, lo: usize, hi: usize) -> Vec<(CanonicalForm, ColoredGraph)> {
    let m = parent.order();
    let e = parent.edge_count();
    let degrees: Vec<u32> = (0..m).map(|v| parent.neighbors(v).count_ones()).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << m {
        let k = mask.count_ones();
        let total = e + k as usize;
        if total < lo || total > hi {
            continue;
        }
        if (0..m).any(|v| degrees[v] + ((mask >> v & 1) as u32) < k) {
            continue;
        }
        let row: Vec<EdgeColor> = (0..m).map(|v| if mask >> v & 1 == 1 { EdgeColor::Red } else { EdgeColor::None }).collect();
        let child = parent.extend(&row).expect("order below capacity");
        let key = canonical_form(&child);
        let rep = key.to_graph();
        out.push((key, rep));
    }
    out
}

fn check_length(len: usize) -> Result<(), ExtremalError> {
    if len < 3 || len % 2 == 0 {
        return Err(ExtremalError::CycleLength(len));
    }
    Ok(())
}

/// Exact minimum of `|C_len(G)|` over `n`-vertex graphs with `⌊n²/4⌋ + 1`
/// edges, for `n ≤ 9` and odd `len ≥ 3`.
pub fn brute_force_min(n: usize, len: usize) -> Result<ExtremalReport, ExtremalError> {
    check_length(len)?;
    let space = search_space(n)?;
    let counts: Vec<usize> = space.graphs.par_iter().map(|(_, g)| cycle_edge_set(g, len).len()).collect();
    let min = *counts.iter().min().ok_or(ExtremalError::NoGraphs(n))?;
    let witnesses = space.graphs.iter().zip(&counts).filter(|(_, &c)| c == min).map(|((_, g), _)| g.clone()).collect();
    Ok(ExtremalReport {
        n,
        len,
        edge_budget: edge_budget(n),
        min_cycle_edges: min,
        witnesses,
        stats: space.stats.clone(),
    })
}

/// Edges of `g` on no `len`-cycle, found by listing every cycle.
fn off_cycle_edges(g: &ColoredGraph, len: usize) -> usize {
    let n = g.order();
    let mut on = vec![0u64; n];
    for_each_cycle(g, len, |c| {
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            on[a] |= 1u64 << b;
            on[b] |= 1u64 << a;
        }
    });
    g.edges().filter(|&(u, v, _)| on[u] >> v & 1 == 0).count()
}

/// Second pass over the same space: the largest number of edges on no
/// `L`-cycle must equal `budget − min`, and every witness must re-verify.
pub fn duality_check(report: &ExtremalReport) -> bool {
    let Ok(space) = search_space(report.n) else {
        return false;
    };
    if check_length(report.len).is_err() || report.edge_budget != edge_budget(report.n) {
        return false;
    }
    let Some(expected) = report.edge_budget.checked_sub(report.min_cycle_edges) else {
        return false;
    };
    let best = space.graphs.par_iter().map(|(_, g)| off_cycle_edges(g, report.len)).max();
    let witnesses_ok = !report.witnesses.is_empty()
        && report.witnesses.iter().all(|g| {
            g.order() == report.n
                && g.edge_count() == report.edge_budget
                && report.edge_budget - off_cycle_edges(g, report.len) == report.min_cycle_edges
        });
    best == Some(expected) && witnesses_ok
}

/// Minimum and number of minimizing labeled graphs over every edge subset
/// of the budget size, with no symmetry reduction. `n ≤ 7`.
pub fn raw_minimum(n: usize, len: usize) -> Result<(usize, usize), ExtremalError> {
    check_length(len)?;
    check_order(n)?;
    if n > MAX_RAW_ORDER {
        return Err(ExtremalError::Capacity(n, MAX_RAW_ORDER));
    }
    let all: Vec<(usize, usize)> = pairs(n).collect();
    let mut best = (usize::MAX, 0);
    for subset in all.iter().combinations(edge_budget(n)) {
        let mut g = ColoredGraph::empty(n);
        for &&(u, v) in &subset {
            g.set_color(u, v, EdgeColor::Red);
        }
        let c = cycle_edge_set(&g, len).len();
        if c < best.0 {
            best = (c, 1);
        } else if c == best.0 {
            best.1 += 1;
        }
    }
    Ok(best)
}
