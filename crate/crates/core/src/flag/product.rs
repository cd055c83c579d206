use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{check_level, flag_basis, subsets, Flag, FlagError, GraphCombo};
use crate::field::QSqrt2;
use crate::graph::{canonical_form, graphs_with_keys, rooted_canonical_form, CanonicalForm, ColoredGraph, Family};

fn ratio(count: u64, total: u64) -> BigRational {
    BigRational::new(BigInt::from(count), BigInt::from(total))
}

/// `f1 × f2` over their common type: every flag `H` of size
/// `v(f1) + v(f2) − |σ|` avoiding `family`, weighted by the probability that
/// a random split of its free vertices yields `f1` and `f2`.
pub fn flag_product(f1: &Flag, f2: &Flag, family: Family) -> Result<GraphCombo, FlagError> {
    let sigma = f1.sigma();
    if sigma != f2.sigma() {
        return Err(FlagError::TypeMismatch);
    }
    let s = sigma.order();
    let (a, b) = (f1.order() - s, f2.order() - s);
    let level = s + a + b;
    check_level(level)?;
    let (k1, k2) = (f1.key(), f2.key());
    let basis = flag_basis(&sigma, level, family)?;
    let total = binomial((a + b) as u64, a as u64);
    let root_pos: Vec<usize> = (0..s).collect();
    let terms: Vec<(CanonicalForm, u64)> = basis
        .flags()
        .par_iter()
        .zip(basis.keys())
        .filter_map(|(h, key)| {
            let free: Vec<usize> = (0..level).filter(|v| !h.roots().contains(v)).collect();
            let hits = subsets(&free, a)
                .filter(|part| {
                    let rest: Vec<usize> = free.iter().copied().filter(|v| !part.contains(v)).collect();
                    let side = |p: &[usize]| {
                        let vs: Vec<usize> = h.roots().iter().chain(p).copied().collect();
                        rooted_canonical_form(&h.graph().induced(&vs), &root_pos)
                    };
                    side(part) == k1 && side(&rest) == k2
                })
                .count() as u64;
            (hits > 0).then(|| (key.clone(), hits))
        })
        .collect();
    let mut out = GraphCombo::new(level);
    for (key, hits) in terms {
        out.add_term(key, QSqrt2::from_rational(ratio(hits, total)));
    }
    Ok(out)
}

/// Product of two plain graphs.
pub fn graph_product(g1: &ColoredGraph, g2: &ColoredGraph, family: Family) -> Result<GraphCombo, FlagError> {
    combo_product(&GraphCombo::single(g1), &GraphCombo::single(g2), family)
}

/// Bilinear extension of [`graph_product`] to unrooted combinations.
pub fn combo_product(x: &GraphCombo, y: &GraphCombo, family: Family) -> Result<GraphCombo, FlagError> {
    if x.terms().keys().chain(y.terms().keys()).any(|k| k.root_count() > 0) {
        return Err(FlagError::Rooted);
    }
    let level = x.level() + y.level();
    check_level(level)?;
    let table = split_table(level, x.level(), family)?;
    let total = BigRational::from_integer(BigInt::from(binomial(level as u64, x.level() as u64)));
    let coeffs: Vec<(CanonicalForm, QSqrt2)> = table
        .par_iter()
        .filter_map(|(h, splits)| {
            let mut acc = QSqrt2::zero();
            for ((k1, k2), &n) in splits {
                if let (Some(c1), Some(c2)) = (x.terms().get(k1), y.terms().get(k2)) {
                    acc += (c1 * c2).mul_rational(&BigRational::from_integer(BigInt::from(n)));
                }
            }
            (!acc.is_zero()).then(|| (h.clone(), acc.mul_rational(&total.recip())))
        })
        .collect();
    let mut out = GraphCombo::new(level);
    for (key, c) in coeffs {
        out.add_term(key, c);
    }
    Ok(out)
}

type SplitCounts = HashMap<(CanonicalForm, CanonicalForm), u64>;
type SplitTable = Arc<Vec<(CanonicalForm, SplitCounts)>>;

/// For every family-free graph of order `level`: how many `a`-subsets
/// induce `k1` with complement inducing `k2`.
fn split_table(level: usize, a: usize, family: Family) -> Result<SplitTable, FlagError> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize, Family), SplitTable>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.lock().expect("memo lock").get(&(level, a, family)) {
        return Ok(hit.clone());
    }
    let graphs = graphs_with_keys(level, family)?;
    let all: Vec<usize> = (0..level).collect();
    let rows: Vec<(CanonicalForm, SplitCounts)> = graphs
        .par_iter()
        .map(|(key, h)| {
            let mut counts = SplitCounts::new();
            for part in subsets(&all, a) {
                let rest: Vec<usize> = all.iter().copied().filter(|v| !part.contains(v)).collect();
                let pair = (canonical_form(&h.induced(&part)), canonical_form(&h.induced(&rest)));
                *counts.entry(pair).or_insert(0) += 1;
            }
            (key.clone(), counts)
        })
        .collect();
    let table = Arc::new(rows);
    memo.lock().expect("memo lock").insert((level, a, family), table.clone());
    Ok(table)
}

/// Downward averaging: the probability that a uniformly random injective
/// labeling of `v(σ)` vertices of the underlying graph roots it as `f`,
/// together with that unlabeled graph in canonical form.
pub fn average_down(f: &Flag) -> (BigRational, ColoredGraph) {
    let n = f.order();
    let s = f.root_count();
    let key = f.key();
    let mut hits = 0u64;
    let mut maps = 0u64;
    for theta in (0..n).permutations(s) {
        maps += 1;
        if rooted_canonical_form(f.graph(), &theta) == key {
            hits += 1;
        }
    }
    (ratio(hits, maps), canonical_form(f.graph()).to_graph())
}

type ChainTable = Arc<Vec<(CanonicalForm, Vec<(CanonicalForm, u64)>)>>;

/// For every family-free graph of order `level`: its one-vertex-deleted
/// subgraphs with multiplicities.
fn chain_table(level: usize, family: Family) -> Result<ChainTable, FlagError> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, Family), ChainTable>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(hit) = memo.lock().expect("memo lock").get(&(level, family)) {
        return Ok(hit.clone());
    }
    let graphs = graphs_with_keys(level, family)?;
    let rows: Vec<(CanonicalForm, Vec<(CanonicalForm, u64)>)> = graphs
        .par_iter()
        .map(|(key, h)| {
            let mut counts: HashMap<CanonicalForm, u64> = HashMap::new();
            for v in 0..level {
                let rest: Vec<usize> = (0..level).filter(|&u| u != v).collect();
                *counts.entry(canonical_form(&h.induced(&rest))).or_insert(0) += 1;
            }
            let mut counts: Vec<_> = counts.into_iter().collect();
            counts.sort();
            (key.clone(), counts)
        })
        .collect();
    let table = Arc::new(rows);
    memo.lock().expect("memo lock").insert((level, family), table.clone());
    Ok(table)
}

/// Rewrites an unrooted combination at a higher level using
/// `H = Σ_{H'} p(H, H')·H'` over family-free `H'`, one level at a time.
pub fn extend_level(c: &GraphCombo, target: usize, family: Family) -> Result<GraphCombo, FlagError> {
    check_level(target)?;
    if c.level() > target {
        return Err(FlagError::LevelOrder { from: c.level(), to: target });
    }
    if c.terms().keys().any(|k| k.root_count() > 0) {
        return Err(FlagError::Rooted);
    }
    let mut cur = c.clone();
    while cur.level() < target {
        let next = cur.level() + 1;
        let table = chain_table(next, family)?;
        let inv = BigRational::new(BigInt::from(1), BigInt::from(next));
        let coeffs: Vec<(CanonicalForm, QSqrt2)> = table
            .par_iter()
            .filter_map(|(h, subs)| {
                let mut acc = QSqrt2::zero();
                for (k, n) in subs {
                    if let Some(x) = cur.terms().get(k) {
                        acc += x.mul_rational(&BigRational::from_integer(BigInt::from(*n)));
                    }
                }
                (!acc.is_zero()).then(|| (h.clone(), acc.mul_rational(&inv)))
            })
            .collect();
        let mut out = GraphCombo::new(next);
        for (k, x) in coeffs {
            out.add_term(k, x);
        }
        cur = out;
    }
    Ok(cur)
}
