//! Flags over 2-colored graphs: types, rooted flags, densities, products,
//! averaging and the expansion of quadratic forms into a fixed level.
//!
//! Every graph-indexed quantity is keyed by [`CanonicalForm`]; rooted keys
//! carry the root count, so a combination may hold flags or plain graphs.

mod basis;
mod combo;
mod density;
mod expand;
mod product;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{rooted_canonical_form, CanonicalForm, ColoredGraph, EdgeColor, GraphError};

pub use basis::{flag_basis, hex_digest, FlagBasis};
pub use combo::GraphCombo;
pub use density::{density, flag_density, graph_density, pair_density, subgraph_profile};
pub use expand::{expansion_rows, quadratic_form_expand, ExpansionRow};
pub use product::{average_down, combo_product, extend_level, flag_product, graph_product};

/// Highest level any combination may live at.
pub const MAX_LEVEL: usize = crate::graph::MAX_ENUMERATION_ORDER;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("level {0} exceeds the supported maximum {MAX_LEVEL}")]
    Level(usize),
    #[error("cannot move a combination from level {from} down to level {to}")]
    LevelOrder { from: usize, to: usize },
    #[error("flags have different types")]
    TypeMismatch,
    #[error("operation needs unrooted graphs")]
    Rooted,
    #[error("invalid root list {0:?}")]
    BadRoots(Vec<usize>),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// A fully labeled graph; roots of a σ-flag must induce it label by label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeSigma {
    graph: ColoredGraph,
}

impl TypeSigma {
    pub fn new(graph: ColoredGraph) -> Self {
        TypeSigma { graph }
    }

    /// The empty type; its flags are plain graphs.
    pub fn empty() -> Self {
        TypeSigma::new(ColoredGraph::empty(0))
    }

    pub fn vertex() -> Self {
        TypeSigma::new(ColoredGraph::empty(1))
    }

    /// Two labeled vertices joined by `c` (λ, β, ρ for none, blue, red).
    pub fn pair(c: EdgeColor) -> Self {
        let mut g = ColoredGraph::empty(2);
        g.set_color(0, 1, c);
        TypeSigma::new(g)
    }

    pub fn lambda() -> Self {
        TypeSigma::pair(EdgeColor::None)
    }

    pub fn beta() -> Self {
        TypeSigma::pair(EdgeColor::Blue)
    }

    pub fn rho() -> Self {
        TypeSigma::pair(EdgeColor::Red)
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    /// `lambda`, `beta`, `rho` for the pair types, the graph encoding otherwise.
    pub fn name(&self) -> String {
        if self.order() == 2 {
            match self.graph.color(0, 1) {
                EdgeColor::None => return "lambda".into(),
                EdgeColor::Blue => return "beta".into(),
                EdgeColor::Red => return "rho".into(),
            }
        }
        self.graph.encode()
    }

    /// σ itself, rooted on all of its vertices.
    pub fn unit_flag(&self) -> Flag {
        Flag { graph: self.graph.clone(), roots: (0..self.order()).collect() }
    }
}

impl fmt::Display for TypeSigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for TypeSigma {
    type Err = FlagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lambda" => Ok(TypeSigma::lambda()),
            "beta" => Ok(TypeSigma::beta()),
            "rho" => Ok(TypeSigma::rho()),
            _ => Ok(TypeSigma::new(s.parse()?)),
        }
    }
}

/// A colored graph with an ordered, injective list of root vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    graph: ColoredGraph,
    roots: Vec<usize>,
}

impl Flag {
    pub fn new(graph: ColoredGraph, roots: Vec<usize>) -> Result<Self, FlagError> {
        let n = graph.order();
        let mut seen = 0u64;
        for &r in &roots {
            if r >= n || seen >> r & 1 == 1 {
                return Err(FlagError::BadRoots(roots));
            }
            seen |= 1 << r;
        }
        Ok(Flag { graph, roots })
    }

    /// A plain graph viewed as a flag over the empty type.
    pub fn unrooted(graph: ColoredGraph) -> Self {
        Flag { graph, roots: Vec::new() }
    }

    /// Representative of a rooted key: roots are vertices `0..k`.
    pub fn from_key(key: &CanonicalForm) -> Self {
        Flag { graph: key.to_graph(), roots: (0..key.root_count()).collect() }
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// The labeled graph induced by the roots.
    pub fn sigma(&self) -> TypeSigma {
        TypeSigma::new(self.graph.induced(&self.roots))
    }

    pub fn has_type(&self, sigma: &TypeSigma) -> bool {
        self.graph.induced(&self.roots) == sigma.graph
    }

    /// Key invariant under root-preserving isomorphism.
    pub fn key(&self) -> CanonicalForm {
        rooted_canonical_form(&self.graph, &self.roots)
    }
}

impl fmt::Display for Flag {
    /// `<graph encoding>|<roots space-separated>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.graph)?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for Flag {
    type Err = FlagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (g, roots) = s.split_once('|').ok_or_else(|| FlagError::Parse(s.to_string()))?;
        let roots = roots
            .split_whitespace()
            .map(|r| r.parse().map_err(|_| FlagError::Parse(s.to_string())))
            .collect::<Result<_, _>>()?;
        Flag::new(g.parse()?, roots)
    }
}

pub(crate) fn check_level(level: usize) -> Result<(), FlagError> {
    if level > MAX_LEVEL {
        Err(FlagError::Level(level))
    } else {
        Ok(())
    }
}

/// `k`-element subsets of `items`, each in increasing order.
pub(crate) fn subsets(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    use itertools::Itertools;
    items.iter().copied().combinations(k)
}
