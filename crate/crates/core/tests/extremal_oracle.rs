use flagcert::extremal::{brute_force_min, duality_check, edge_budget, raw_minimum, MAX_RAW_ORDER};
use flagcert::graph::cycle_edge_set;

const GOLDEN: &str = include_str!("data/oracle_minima.tsv");

fn golden() -> Vec<[usize; 5]> {
    GOLDEN
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<usize> = l.split('\t').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4]]
        })
        .collect()
}

#[test]
fn minima_match_recorded_values() {
    let rows = golden();
    assert_eq!(rows.len(), 7 * 4);
    for [n, len, budget, min, minimizers] in rows {
        let r = brute_force_min(n, len).unwrap();
        assert_eq!(r.edge_budget, budget);
        assert_eq!(edge_budget(n), budget);
        assert_eq!((r.min_cycle_edges, r.witnesses.len()), (min, minimizers), "n = {n}, L = {len}");
        for g in &r.witnesses {
            assert_eq!(g.edge_count(), budget);
            assert_eq!(cycle_edge_set(g, len).len(), min);
        }
        assert!(duality_check(&r), "n = {n}, L = {len}");
    }
}

#[test]
fn recorded_values_match_unreduced_search() {
    for [n, len, _, min, _] in golden() {
        if n <= MAX_RAW_ORDER && len <= 5 {
            assert_eq!(raw_minimum(n, len).unwrap().0, min, "n = {n}, L = {len}");
        }
    }
}

#[test]
fn reruns_are_identical() {
    assert_eq!(brute_force_min(8, 5).unwrap(), brute_force_min(8, 5).unwrap());
}
