use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::{subsets, Flag, FlagError};
use crate::graph::{canonical_form, contains_pattern, rooted_canonical_form, CanonicalForm, ColoredGraph, PatternGraph};

fn ratio(count: u64, total: u64) -> BigRational {
    BigRational::new(BigInt::from(count), BigInt::from(total))
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
}

/// Probability that a uniform `v(f)`-subset of `g` induces a graph matching
/// `f`, black pattern edges matching either color. Zero when `f` is larger.
pub fn density(f: &PatternGraph, g: &ColoredGraph) -> BigRational {
    let (k, n) = (f.order(), g.order());
    if k > n {
        return ratio(0, 1);
    }
    let all: Vec<usize> = (0..n).collect();
    let hits = subsets(&all, k).filter(|s| contains_pattern(&g.induced(s), f, true)).count();
    ratio(hits as u64, binom(n, k))
}

/// Induced density of a colored graph, by canonical key.
pub fn graph_density(f: &ColoredGraph, g: &ColoredGraph) -> BigRational {
    let (k, n) = (f.order(), g.order());
    if k > n {
        return ratio(0, 1);
    }
    let key = canonical_form(f);
    let hits = subgraph_profile(g, k).get(&key).copied().unwrap_or(0);
    ratio(hits, binom(n, k))
}

/// How many `k`-subsets of `g` induce each isomorphism class.
pub fn subgraph_profile(g: &ColoredGraph, k: usize) -> BTreeMap<CanonicalForm, u64> {
    let all: Vec<usize> = (0..g.order()).collect();
    let mut out = BTreeMap::new();
    for s in subsets(&all, k) {
        *out.entry(canonical_form(&g.induced(&s))).or_insert(0) += 1;
    }
    out
}

/// Probability that a uniform `v(f1)`-subset of `h` induces `f1` while its
/// complement induces `f2`.
///
/// # Panics
/// When `v(f1) + v(f2) != v(h)`.
pub fn pair_density(f1: &ColoredGraph, f2: &ColoredGraph, h: &ColoredGraph) -> BigRational {
    let n = h.order();
    assert_eq!(f1.order() + f2.order(), n, "pair_density needs v(f1) + v(f2) = v(h)");
    let (k1, k2) = (canonical_form(f1), canonical_form(f2));
    let all: Vec<usize> = (0..n).collect();
    let hits = subsets(&all, f1.order())
        .filter(|s| {
            let rest: Vec<usize> = all.iter().copied().filter(|v| !s.contains(v)).collect();
            canonical_form(&h.induced(s)) == k1 && canonical_form(&h.induced(&rest)) == k2
        })
        .count();
    ratio(hits as u64, binom(n, f1.order()))
}

/// Probability that a uniform `(v(f) − |σ|)`-subset of the unrooted vertices
/// of `big`, together with its roots, induces a flag isomorphic to `f`.
pub fn flag_density(f: &Flag, big: &Flag) -> Result<BigRational, FlagError> {
    if f.sigma() != big.sigma() {
        return Err(FlagError::TypeMismatch);
    }
    let s = f.root_count();
    let (k, n) = (f.order() - s, big.order() - s);
    if k > n {
        return Ok(ratio(0, 1));
    }
    let key = f.key();
    let free: Vec<usize> = (0..big.order()).filter(|v| !big.roots().contains(v)).collect();
    let roots: Vec<usize> = (0..s).collect();
    let hits = subsets(&free, k)
        .filter(|sub| {
            let vs: Vec<usize> = big.roots().iter().chain(sub).copied().collect();
            rooted_canonical_form(&big.graph().induced(&vs), &roots) == key
        })
        .count();
    Ok(ratio(hits as u64, binom(n, k)))
}
