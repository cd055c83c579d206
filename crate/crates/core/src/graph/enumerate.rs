use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{canonical_form, contains_pattern_through, CanonicalForm, ColoredGraph, EdgeColor, Family, GraphError};

/// Largest order [`enumerate_colored_graphs`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// One representative per isomorphism class of `n`-vertex colored graphs
/// avoiding `family`, each in canonical labeling, sorted by canonical key.
///
/// Level `k` is built by appending a vertex with every possible color row
/// to each level-`k − 1` representative; a child is kept when no forbidden
/// pattern passes through the new vertex, and duplicates are merged by
/// canonical key.
pub fn enumerate_colored_graphs(n: usize, family: Family) -> Result<Vec<ColoredGraph>, GraphError> {
    Ok(graphs_with_keys(n, family)?.iter().map(|(_, g)| g.clone()).collect())
}

pub type Level = Arc<Vec<(CanonicalForm, ColoredGraph)>>;

/// Memoized `(key, representative)` pairs in the order of
/// [`enumerate_colored_graphs`]. Shared across callers.
pub fn graphs_with_keys(n: usize, family: Family) -> Result<Level, GraphError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Capacity(n, MAX_ENUMERATION_ORDER));
    }
    let memo = memo();
    if let Some(hit) = memo.lock().expect("memo lock").get(&(n, family)) {
        return Ok(hit.clone());
    }
    let level: Level = if n == 0 {
        let g = ColoredGraph::empty(0);
        Arc::new(vec![(canonical_form(&g), g)])
    } else {
        let parents = graphs_with_keys(n - 1, family)?;
        Arc::new(extend_level(&parents, family))
    };
    memo.lock().expect("memo lock").insert((n, family), level.clone());
    Ok(level)
}

fn memo() -> &'static Mutex<HashMap<(usize, Family), Level>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, Family), Level>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Seeds the memo for `(n, family)` with a previously computed level, for
/// example one read back from disk. Each graph must be in canonical
/// labeling, avoid the family, and the list must be strictly sorted by
/// key. Completeness is the caller's responsibility. Returns `false` if
/// the level was already present.
pub fn preload_level(n: usize, family: Family, graphs: Vec<ColoredGraph>) -> Result<bool, GraphError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Capacity(n, MAX_ENUMERATION_ORDER));
    }
    let mut level = Vec::with_capacity(graphs.len());
    for g in graphs {
        let key = canonical_form(&g);
        let sorted = level.last().is_none_or(|(prev, _): &(CanonicalForm, ColoredGraph)| *prev < key);
        if g.order() != n || key.to_graph() != g || !sorted || !super::is_family_free(&g, family) {
            return Err(GraphError::BadEncoding(g.to_string()));
        }
        level.push((key, g));
    }
    let mut memo = memo().lock().expect("memo lock");
    if memo.contains_key(&(n, family)) {
        return Ok(false);
    }
    memo.insert((n, family), Arc::new(level));
    Ok(true)
}

fn extend_level(parents: &[(CanonicalForm, ColoredGraph)], family: Family) -> Vec<(CanonicalForm, ColoredGraph)> {
    let children: Vec<BTreeMap<CanonicalForm, ColoredGraph>> = parents
        .par_iter()
        .map(|(_, parent)| {
            let m = parent.order();
            let mut out = BTreeMap::new();
            let mut row = vec![EdgeColor::None; m];
            for code in 0..3usize.pow(m as u32) {
                let mut c = code;
                for slot in row.iter_mut() {
                    *slot = EdgeColor::ALL[c % 3];
                    c /= 3;
                }
                let child = parent.extend(&row).expect("order within capacity");
                let blocked = family.patterns().iter().any(|p| contains_pattern_through(&child, &p.pattern, false, m));
                if blocked {
                    continue;
                }
                let key = canonical_form(&child);
                out.entry(key).or_insert(child);
            }
            out
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in children {
        for (k, _) in part {
            merged.entry(k).or_insert(());
        }
    }
    merged.into_keys().map(|k| {
        let g = k.to_graph();
        (k, g)
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_family_free, pairs};

    #[test]
    fn tiny_orders() {
        assert_eq!(enumerate_colored_graphs(0, Family::Unrestricted).unwrap().len(), 1);
        assert_eq!(enumerate_colored_graphs(1, Family::Unrestricted).unwrap().len(), 1);
        assert_eq!(enumerate_colored_graphs(2, Family::Unrestricted).unwrap().len(), 3);
        assert_eq!(enumerate_colored_graphs(8, Family::Fc5), Err(GraphError::Capacity(8, 7)));
    }

    /// Orbit count of S_n acting on all 3^C(n,2) colorings, by brute force.
    fn brute_classes(n: usize, keep: impl Fn(&ColoredGraph) -> bool) -> usize {
        let pl: Vec<_> = pairs(n).collect();
        let mut keys = std::collections::BTreeSet::new();
        for code in 0..3usize.pow(pl.len() as u32) {
            let mut g = ColoredGraph::empty(n);
            let mut c = code;
            for &(i, j) in &pl {
                let col = EdgeColor::ALL[c % 3];
                c /= 3;
                if col != EdgeColor::None {
                    g.set_color(i, j, col);
                }
            }
            if keep(&g) {
                keys.insert(canonical_form(&g));
            }
        }
        keys.len()
    }

    #[test]
    fn complete_up_to_order_four() {
        for n in 0..=4 {
            assert_eq!(enumerate_colored_graphs(n, Family::Unrestricted).unwrap().len(), brute_classes(n, |_| true));
            for fam in [Family::Fc5, Family::Fc7] {
                let want = brute_classes(n, |g| is_family_free(g, fam));
                assert_eq!(enumerate_colored_graphs(n, fam).unwrap().len(), want, "n={n} {fam}");
            }
        }
    }

    #[test]
    fn burnside_order_three() {
        // S_3 on the 27 colorings of a triangle's pairs, orbits counted as
        // the average number of fixed colorings: (27 + 3·9 + 2·3) / 6.
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let pl: Vec<_> = pairs(3).collect();
        let coloring = |code: usize| -> Vec<usize> { (0..3).map(|k| code / 3usize.pow(k as u32) % 3).collect() };
        let act = |p: &[usize; 3], col: &[usize]| -> Vec<usize> {
            pl.iter()
                .map(|&(i, j)| {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    col[pl.iter().position(|&e| e == (a, b)).unwrap()]
                })
                .collect()
        };
        let fixed: usize = perms.iter().map(|p| (0..27).filter(|&c| act(p, &coloring(c)) == coloring(c)).count()).sum();
        assert_eq!(fixed / 6, 10);
        assert_eq!(enumerate_colored_graphs(3, Family::Unrestricted).unwrap().len(), 10);
        // B3 needs all three pairs present with one blue: orbits by blue count 1, 2, 3.
        let with_b3 = (0..27)
            .filter(|&c| {
                let col = coloring(c);
                col.iter().all(|&x| x != 0) && col.contains(&2)
            })
            .map(|c| {
                let col = coloring(c);
                perms.iter().map(|p| act(p, &col)).min().unwrap()
            })
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        assert_eq!(with_b3, 3);
        assert_eq!(enumerate_colored_graphs(3, Family::Fc5).unwrap().len(), 10 - with_b3);
    }

    #[test]
    fn representatives_are_canonical_and_sorted() {
        let gs = graphs_with_keys(4, Family::Fc5).unwrap();
        for w in gs.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        for (k, g) in gs.iter() {
            assert_eq!(&canonical_form(g), k);
            assert_eq!(&k.to_graph(), g);
        }
    }
}
