//! Extremal constructions, exact formulas, the integer program for part
//! sizes, small optimization problems from the stability analysis, and an
//! exhaustive oracle for the minimum number of edges on cycles of a given
//! length among graphs just above the Mantel threshold.

mod construct;
mod formula;
mod oracle;
mod qp;
mod stability;

pub use construct::{
    construction_g1, construction_g2, g2_c5_edge_count, four_part_sizes, theorem8_structure, truncate_to_budget, FourPartSizes,
};
pub use formula::{f_formula, f_product, f_structural, f_table};
pub use oracle::{
    brute_force_min, duality_check, raw_minimum, search_space, ExtremalReport, SearchSpace, SearchStats, MAX_ORACLE_ORDER, MAX_RAW_ORDER,
};
pub use qp::{default_quadruple, solve_nextremal_qp, solve_nextremal_qp_naive, QpPoint, QpSolution};
pub use stability::{
    bipartite_objective, bipartite_optimum, grid_sweep, path_blowup_objective, path_optimum, stability_optimizers, BipartiteOptimum,
    GridSweep, PathOptimum, StabilityOptima,
};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("order {0} exceeds the oracle limit of {1}")]
    Capacity(usize, usize),
    #[error("cycle length {0} is not an odd number of at least 3")]
    CycleLength(usize),
    #[error("no graph on {0} vertices has floor(n^2/4) + 1 edges")]
    NoGraphs(usize),
}

/// `⌊n²/4⌋ + 1`, the fewest edges forcing an odd cycle.
pub fn edge_budget(n: usize) -> usize {
    n * n / 4 + 1
}

/// Part sizes `(a, b, c, d)` of a blown-up path `A – B – C – D` with a
/// loop at `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl Quadruple {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Quadruple { a, b, c, d }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }

    /// Edges of the blow-up: `ab + bc + cd + C(d, 2)`.
    pub fn edge_count(&self) -> u64 {
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        a * b + b * c + c * d + d * d.saturating_sub(1) / 2
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}
