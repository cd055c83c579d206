use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use super::density::subgraph_profile;
use super::FlagError;
use crate::field::QSqrt2;
use crate::graph::{canonical_form, CanonicalForm, ColoredGraph};

/// A finite linear combination of graphs (or flags) of one order, with
/// exact coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCombo {
    level: usize,
    terms: BTreeMap<CanonicalForm, QSqrt2>,
}

impl GraphCombo {
    pub fn new(level: usize) -> Self {
        GraphCombo { level, terms: BTreeMap::new() }
    }

    /// `1 · g`.
    pub fn single(g: &ColoredGraph) -> Self {
        let mut c = GraphCombo::new(g.order());
        c.add_term(canonical_form(g), QSqrt2::one());
        c
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalForm, QSqrt2> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &CanonicalForm) -> QSqrt2 {
        self.terms.get(key).cloned().unwrap_or_else(QSqrt2::zero)
    }

    /// Adds `coeff · key`.
    ///
    /// # Panics
    /// When the key's order differs from the combination's level.
    pub fn add_term(&mut self, key: CanonicalForm, coeff: QSqrt2) {
        assert_eq!(key.order(), self.level, "term order must match the level");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_graph(&mut self, g: &ColoredGraph, coeff: QSqrt2) {
        self.add_term(canonical_form(g), coeff);
    }

    pub fn scaled(&self, k: &QSqrt2) -> GraphCombo {
        let mut out = GraphCombo::new(self.level);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * k);
        }
        out
    }

    /// `self + k · other`.
    pub fn add_scaled(&mut self, other: &GraphCombo, k: &QSqrt2) -> Result<(), FlagError> {
        if other.level != self.level {
            return Err(FlagError::Dimension(format!("levels {} and {}", self.level, other.level)));
        }
        for (key, c) in &other.terms {
            self.add_term(key.clone(), c * k);
        }
        Ok(())
    }

    pub fn sub(&self, other: &GraphCombo) -> Result<GraphCombo, FlagError> {
        let mut out = self.clone();
        out.add_scaled(other, &QSqrt2::from_int(-1))?;
        Ok(out)
    }

    pub fn sum_of_coefficients(&self) -> QSqrt2 {
        self.terms.values().cloned().sum()
    }

    /// `Σ c_H · p(H, g)` for unrooted combinations.
    pub fn evaluate(&self, g: &ColoredGraph) -> Result<QSqrt2, FlagError> {
        if self.terms.keys().any(|k| k.root_count() > 0) {
            return Err(FlagError::Rooted);
        }
        if self.level > g.order() {
            return Ok(QSqrt2::zero());
        }
        let profile = subgraph_profile(g, self.level);
        let total = BigInt::from(binomial(g.order() as u64, self.level as u64));
        let mut acc = QSqrt2::zero();
        for (key, &count) in &profile {
            if let Some(c) = self.terms.get(key) {
                acc += c.mul_rational(&BigRational::new(BigInt::from(count), total.clone()));
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for GraphCombo {
    /// One `<key> <coeff>` line per term, in key order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, c) in &self.terms {
            writeln!(f, "{key} {c}")?;
        }
        Ok(())
    }
}
