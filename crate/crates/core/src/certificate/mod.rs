//! Sum-of-squares certificates for the red-edge density bounds: the target
//! expressions, a line-oriented file format, exact verification, SDPA
//! export for external solvers and rounding of floating solutions.

mod format;
mod round;
mod sdpa;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::{FieldError, QSqrt2, SymMatrixQ};
use crate::flag::{extend_level, flag_basis, graph_product, FlagBasis, FlagError, GraphCombo, TypeSigma};
use crate::graph::{
    contains_pattern, graphs_with_keys, path_colorings, CanonicalForm, ColoredGraph, EdgeColor, Family, PatternGraph,
};

pub use format::{emit_certificate, parse_certificate};
pub use round::{round_solution, RawSolution, NEGATIVE_TOLERANCE};
pub use sdpa::{export_sdp, slack_multipliers};
pub use verify::{verify, VerificationReport, Violation};

/// Level at which every certificate identity is checked.
pub const LEVEL: usize = 6;
/// Flag size of the three blocks.
pub const FLAG_SIZE: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("basis hash mismatch: file has {found}, bases hash to {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("rounding failure: c_H for {graph} is {value:.3e}; try a larger denominator bound")]
    RoundingFailure { graph: String, value: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which theorem a certificate targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    C5,
    C7,
}

impl Problem {
    pub fn family(self) -> Family {
        match self {
            Problem::C5 => Family::Fc5,
            Problem::C7 => Family::Fc7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::C5 => "C5",
            Problem::C7 => "C7",
        }
    }

    /// Induced shapes whose level-6 supergraphs need a positive `c_H`.
    pub fn side_patterns(self) -> Vec<ColoredGraph> {
        match self {
            Problem::C5 => {
                let mut out = path_colorings(5);
                let c4x = Family::pattern_by_name("C4X").expect("C4X in pattern data");
                out.extend(c4x.pattern.recolorings());
                out
            }
            Problem::C7 => path_colorings(4),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "C5" => Ok(Problem::C5),
            "C7" => Ok(Problem::C7),
            _ => Err(format!("unknown problem `{s}` (expected C5 or C7)")),
        }
    }
}

/// The three pair types in block order.
pub fn block_types() -> [TypeSigma; 3] {
    [TypeSigma::lambda(), TypeSigma::beta(), TypeSigma::rho()]
}

pub fn block_basis(problem: Problem, sigma: &TypeSigma) -> Result<Arc<FlagBasis>, CertError> {
    Ok(flag_basis(sigma, FLAG_SIZE, problem.family())?)
}

/// Hex SHA-256 over the three basis dumps, each preceded by its type name.
pub fn basis_hash(problem: Problem) -> Result<String, CertError> {
    let mut text = String::new();
    for sigma in block_types() {
        text.push_str(&format!("{sigma}\n"));
        text.push_str(&block_basis(problem, &sigma)?.dump());
    }
    Ok(crate::flag::hex_digest(text.as_bytes()))
}

/// `▲ × (a·red − b·vertex)` lifted to level 6 inside the problem's family:
/// `a = 8, b = 2 + √2` for C5 and `a = 9, b = 4` for C7.
pub fn target_expression(problem: Problem) -> Result<GraphCombo, CertError> {
    let fam = problem.family();
    let (a, b) = match problem {
        Problem::C5 => (QSqrt2::from_int(8), QSqrt2::from_int(2) + QSqrt2::sqrt2()),
        Problem::C7 => (QSqrt2::from_int(9), QSqrt2::from_int(4)),
    };
    let tri = ColoredGraph::complete(3, EdgeColor::Red);
    let red = ColoredGraph::complete(2, EdgeColor::Red);
    let vertex = ColoredGraph::empty(1);
    let with_red = extend_level(&graph_product(&tri, &red, fam)?, LEVEL, fam)?;
    let with_vertex = extend_level(&graph_product(&tri, &vertex, fam)?, LEVEL, fam)?;
    let mut out = with_red.scaled(&a);
    out.add_scaled(&with_vertex, &-b)?;
    Ok(out)
}

/// `red + blue − nonedge` at level 2.
pub fn edge_excess() -> GraphCombo {
    let mut e = GraphCombo::new(2);
    e.add_graph(&ColoredGraph::complete(2, EdgeColor::Red), QSqrt2::one());
    e.add_graph(&ColoredGraph::complete(2, EdgeColor::Blue), QSqrt2::one());
    e.add_graph(&ColoredGraph::empty(2), QSqrt2::from_int(-1));
    e
}

/// `(red + blue − nonedge) × g1 × g2` lifted to level 6.
pub fn slack_expansion(g1: &ColoredGraph, g2: &ColoredGraph, family: Family) -> Result<GraphCombo, CertError> {
    let level = 2 + g1.order() + g2.order();
    if level > LEVEL {
        return Err(CertError::Dimension(format!("slack product has {level} vertices, above {LEVEL}")));
    }
    let p = crate::flag::combo_product(&edge_excess(), &GraphCombo::single(g1), family)?;
    let p = crate::flag::combo_product(&p, &GraphCombo::single(g2), family)?;
    Ok(extend_level(&p, LEVEL, family)?)
}

/// Level-6 family-free graphs containing an induced side pattern.
pub fn side_condition_graphs(problem: Problem) -> Result<Arc<Vec<CanonicalForm>>, CertError> {
    static C5: OnceLock<Arc<Vec<CanonicalForm>>> = OnceLock::new();
    static C7: OnceLock<Arc<Vec<CanonicalForm>>> = OnceLock::new();
    let cell = match problem {
        Problem::C5 => &C5,
        Problem::C7 => &C7,
    };
    if let Some(hit) = cell.get() {
        return Ok(hit.clone());
    }
    let patterns: Vec<PatternGraph> = problem.side_patterns().iter().map(PatternGraph::from).collect();
    let graphs = graphs_with_keys(LEVEL, problem.family()).map_err(FlagError::from)?;
    let hits: Vec<CanonicalForm> = graphs
        .iter()
        .filter(|(_, h)| patterns.iter().any(|p| contains_pattern(h, p, true)))
        .map(|(k, _)| k.clone())
        .collect();
    Ok(cell.get_or_init(|| Arc::new(hits)).clone())
}

/// One PSD block of a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub sigma: TypeSigma,
    pub matrix: SymMatrixQ,
}

/// `coeff · (red + blue − nonedge) × g1 × g2`; `g2` may be the empty graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackTerm {
    pub coeff: QSqrt2,
    pub g1: ColoredGraph,
    pub g2: ColoredGraph,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub problem: Problem,
    /// Hash the file was written against; `None` when the file omits it.
    pub basis_hash: Option<String>,
    pub blocks: Vec<Block>,
    pub slacks: Vec<SlackTerm>,
    pub c: BTreeMap<CanonicalForm, QSqrt2>,
    pub target: GraphCombo,
}

impl Certificate {
    /// Zero blocks, no slacks, `c` and target empty.
    pub fn empty(problem: Problem) -> Result<Self, CertError> {
        let mut blocks = Vec::new();
        for sigma in block_types() {
            let dim = block_basis(problem, &sigma)?.len();
            blocks.push(Block { sigma, matrix: SymMatrixQ::zeros(dim) });
        }
        Ok(Certificate {
            problem,
            basis_hash: Some(basis_hash(problem)?),
            blocks,
            slacks: Vec::new(),
            c: BTreeMap::new(),
            target: GraphCombo::new(LEVEL),
        })
    }

    /// Everything except `c` and the target, expanded at level 6.
    pub fn expansion(&self) -> Result<GraphCombo, CertError> {
        let fam = self.problem.family();
        let mut sum = GraphCombo::new(LEVEL);
        for block in &self.blocks {
            let basis = block_basis(self.problem, &block.sigma)?;
            let e = crate::flag::quadratic_form_expand(&block.sigma, &basis, &block.matrix)?;
            sum.add_scaled(&e, &QSqrt2::one())?;
        }
        for s in &self.slacks {
            sum.add_scaled(&slack_expansion(&s.g1, &s.g2, fam)?, &s.coeff)?;
        }
        Ok(sum)
    }

    /// Sets `c_H = target − expansion` for every graph.
    pub fn fill_c_from_target(&mut self) -> Result<(), CertError> {
        let rest = self.target.sub(&self.expansion()?)?;
        self.c = rest.terms().clone();
        Ok(())
    }
}
