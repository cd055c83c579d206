//! Export of the certificate search as a feasibility SDP in SDPA sparse
//! format.
//!
//! Unknowns are the three block matrices, one scalar per slack multiplier
//! and one scalar per level-6 graph (its `c_H`), the scalars forming a
//! diagonal block. Constraint `h` equates the expanded coefficient of the
//! `h`-th level-6 graph with its target coefficient. Targets in Q[√2] are
//! written as `f64` approximations; exact checking happens after rounding.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{block_basis, block_types, slack_expansion, target_expression, CertError, Problem, FLAG_SIZE, LEVEL};
use crate::flag::expansion_rows;
use crate::graph::{graphs_with_keys, ColoredGraph};

/// Slack multipliers in scalar order: every family-free graph on four
/// vertices, each paired with the empty graph.
pub fn slack_multipliers(problem: Problem) -> Result<Vec<ColoredGraph>, CertError> {
    let graphs = graphs_with_keys(FLAG_SIZE, problem.family()).map_err(crate::flag::FlagError::from)?;
    Ok(graphs.iter().map(|(_, g)| g.clone()).collect())
}

fn ratio_f64(num: u64, den: &num_bigint::BigInt) -> f64 {
    num as f64 / den.to_f64().expect("finite denominator")
}

pub fn export_sdp(problem: Problem) -> Result<String, CertError> {
    let fam = problem.family();
    let graphs = graphs_with_keys(LEVEL, fam).map_err(crate::flag::FlagError::from)?;
    let m = graphs.len();
    let multipliers = slack_multipliers(problem)?;
    let s = multipliers.len();
    let target = target_expression(problem)?;

    let mut out = String::new();
    writeln!(out, "\"flagcert feasibility SDP, problem {problem}, family {fam}").unwrap();
    writeln!(out, "\"blocks: lambda, beta, rho flag bases of size {FLAG_SIZE}; diagonal block: {s} slack scalars then {m} c_H").unwrap();
    writeln!(out, "\"constraint h: expanded coefficient of the h-th level-{LEVEL} graph = target (f64 approximation)").unwrap();
    writeln!(out, "{m} = mDIM").unwrap();
    writeln!(out, "4 = nBLOCK").unwrap();
    let mut sizes = Vec::new();
    for sigma in block_types() {
        sizes.push(block_basis(problem, &sigma)?.len().to_string());
    }
    writeln!(out, "{} -{}", sizes.join(" "), s + m).unwrap();
    let rhs: Vec<String> = graphs.iter().map(|(k, _)| format!("{}", target.coefficient(k).to_f64())).collect();
    writeln!(out, "{}", rhs.join(" ")).unwrap();

    for (b, sigma) in block_types().iter().enumerate() {
        let basis = block_basis(problem, sigma)?;
        let (rows, denom) = expansion_rows(&basis)?;
        for (h, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.graph, graphs[h].0);
            for &(i, j, c) in &row.counts {
                if i <= j {
                    writeln!(out, "{} {} {} {} {}", h + 1, b + 1, i + 1, j + 1, ratio_f64(c as u64, &denom)).unwrap();
                }
            }
        }
    }
    let empty = ColoredGraph::empty(0);
    let mut slack_cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    let index: std::collections::HashMap<_, _> = graphs.iter().enumerate().map(|(h, (k, _))| (k.clone(), h)).collect();
    for (t, g) in multipliers.iter().enumerate() {
        for (k, v) in slack_expansion(g, &empty, fam)?.terms() {
            slack_cols[index[k]].push((t, v.to_f64()));
        }
    }
    for (h, col) in slack_cols.iter().enumerate() {
        for &(t, v) in col {
            writeln!(out, "{} 4 {} {} {}", h + 1, t + 1, t + 1, v).unwrap();
        }
        writeln!(out, "{} 4 {} {} 1", h + 1, s + h + 1, s + h + 1).unwrap();
    }
    Ok(out)
}
