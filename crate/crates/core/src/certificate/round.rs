//! Rounding floating SDP output to an exact certificate.

use num_bigint::BigInt;

use super::{
    basis_hash, block_basis, block_types, slack_multipliers, target_expression, Block, CertError, Certificate,
    Problem, SlackTerm, LEVEL,
};
use crate::field::{round_to_qsqrt2, SymMatrixQ};
use crate::flag::{GraphCombo, TypeSigma};
use crate::graph::ColoredGraph;

/// Negative `c_H` above this value are treated as rounding noise and set
/// to zero; `verify` then reports the resulting residual.
pub const NEGATIVE_TOLERANCE: f64 = 1e-9;

/// Floating solution: entries are `(p, q)` meaning `p + q√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSolution {
    pub problem: Problem,
    /// Upper triangles, row by row, per block type.
    pub blocks: Vec<(TypeSigma, Vec<(f64, f64)>)>,
    pub slacks: Vec<((f64, f64), ColoredGraph, ColoredGraph)>,
    /// Overrides the problem's own target when set.
    pub target: Option<GraphCombo>,
}

fn parse_entry(t: &str, line: usize) -> Result<(f64, f64), CertError> {
    let bad = || CertError::Parse { line, msg: format!("bad float `{t}`") };
    match t.split_once(',') {
        Some((p, q)) => Ok((p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)),
        None => Ok((t.parse().map_err(|_| bad())?, 0.0)),
    }
}

impl RawSolution {
    /// Text form: `problem C5`, then `block <type> <dim>` followed by the
    /// upper triangle, and `slack <x> <g1> <g2>` lines. An entry is a float
    /// or a `p,q` pair.
    pub fn parse(text: &str) -> Result<Self, CertError> {
        let mut problem = None;
        let mut blocks: Vec<(TypeSigma, Vec<(f64, f64)>)> = Vec::new();
        let mut slacks = Vec::new();
        let mut pending: Option<(TypeSigma, usize, Vec<(f64, f64)>)> = None;
        for (no, line) in text.lines().enumerate() {
            let no = no + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CertError::Parse { line: no, msg };
            if let Some((_, want, vals)) = pending.as_mut() {
                for t in line.split_whitespace() {
                    vals.push(parse_entry(t, no)?);
                }
                if vals.len() > *want {
                    return Err(err(format!("block has more than {want} entries")));
                }
                if vals.len() == *want {
                    let (sigma, _, vals) = pending.take().expect("pending block");
                    blocks.push((sigma, vals));
                }
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            match f[0] {
                "problem" if f.len() == 2 => problem = Some(f[1].parse::<Problem>().map_err(err)?),
                "block" if f.len() == 3 => {
                    let sigma: TypeSigma = f[1].parse().map_err(|e| err(format!("{e}")))?;
                    let dim: usize = f[2].parse().map_err(|_| err(format!("bad dimension `{}`", f[2])))?;
                    let want = dim * (dim + 1) / 2;
                    if want == 0 {
                        blocks.push((sigma, Vec::new()));
                    } else {
                        pending = Some((sigma, want, Vec::new()));
                    }
                }
                "slack" if f.len() == 4 => {
                    let x = parse_entry(f[1], no)?;
                    let g1 = f[2].parse().map_err(|e| err(format!("{e}")))?;
                    let g2 = f[3].parse().map_err(|e| err(format!("{e}")))?;
                    slacks.push((x, g1, g2));
                }
                _ => return Err(err(format!("cannot parse `{line}`"))),
            }
        }
        if let Some((sigma, want, vals)) = pending {
            return Err(CertError::Parse {
                line: text.lines().count(),
                msg: format!("block {sigma} has {} of {want} entries", vals.len()),
            });
        }
        let problem = problem.ok_or(CertError::Parse { line: 1, msg: "missing `problem` line".into() })?;
        Ok(RawSolution { problem, blocks, slacks, target: None })
    }

    /// Reads the primal matrix of a CSDP/SDPA solution file for the SDP
    /// written by `export_sdp`: lines `2 <block> <i> <j> <value>`.
    pub fn from_sdpa_solution(problem: Problem, text: &str) -> Result<Self, CertError> {
        let mut dims = Vec::new();
        for sigma in block_types() {
            dims.push(block_basis(problem, &sigma)?.len());
        }
        let mut dense: Vec<Vec<f64>> = dims.iter().map(|d| vec![0.0; d * d]).collect();
        let multipliers = slack_multipliers(problem)?;
        let mut slack_vals = vec![0.0; multipliers.len()];
        for (no, line) in text.lines().enumerate().skip(1) {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 || f[0] != "2" {
                continue;
            }
            let bad = || CertError::Parse { line: no + 1, msg: format!("cannot parse `{line}`") };
            let blk: usize = f[1].parse().map_err(|_| bad())?;
            let i: usize = f[2].parse().map_err(|_| bad())?;
            let j: usize = f[3].parse().map_err(|_| bad())?;
            let v: f64 = f[4].parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            match blk {
                1..=3 => {
                    let d = dims[blk - 1];
                    if i > d || j > d {
                        return Err(bad());
                    }
                    dense[blk - 1][(i - 1) * d + (j - 1)] = v;
                    dense[blk - 1][(j - 1) * d + (i - 1)] = v;
                }
                4 => {
                    if i == j && i <= slack_vals.len() {
                        slack_vals[i - 1] = v;
                    }
                }
                _ => return Err(bad()),
            }
        }
        let blocks = block_types()
            .into_iter()
            .zip(dims.iter().zip(&dense))
            .map(|(sigma, (&d, m))| {
                let upper = (0..d).flat_map(|i| (i..d).map(move |j| (m[i * d + j], 0.0))).collect();
                (sigma, upper)
            })
            .collect();
        let empty = ColoredGraph::empty(0);
        let slacks =
            multipliers.into_iter().zip(slack_vals).map(|(g, v)| ((v, 0.0), g, empty.clone())).collect();
        Ok(RawSolution { problem, blocks, slacks, target: None })
    }

    /// Float image of an exact certificate, dense blocks only.
    pub fn from_certificate(cert: &Certificate) -> Self {
        let f = |x: &crate::field::QSqrt2| {
            use num_traits::ToPrimitive;
            (x.rational_part().to_f64().unwrap_or(f64::NAN), x.sqrt2_part().to_f64().unwrap_or(f64::NAN))
        };
        let blocks = cert
            .blocks
            .iter()
            .map(|b| {
                let d = b.matrix.dim();
                let upper = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| f(b.matrix.get(i, j))).collect();
                (b.sigma.clone(), upper)
            })
            .collect();
        let slacks = cert.slacks.iter().map(|s| (f(&s.coeff), s.g1.clone(), s.g2.clone())).collect();
        RawSolution { problem: cert.problem, blocks, slacks, target: Some(cert.target.clone()) }
    }
}

/// Rounds every entry to `p + q√2` with denominators at most `bound`,
/// then sets `c_H = target − expansion`. Tiny negative `c_H` are clamped to
/// zero; anything below `-NEGATIVE_TOLERANCE` is a rounding failure.
pub fn round_solution(raw: &RawSolution, bound: &BigInt) -> Result<Certificate, CertError> {
    let problem = raw.problem;
    let mut cert = Certificate::empty(problem)?;
    cert.basis_hash = Some(basis_hash(problem)?);
    for (sigma, upper) in &raw.blocks {
        let slot = block_types()
            .iter()
            .position(|t| t == sigma)
            .ok_or_else(|| CertError::Dimension(format!("no block of type {sigma}")))?;
        let dim = cert.blocks[slot].matrix.dim();
        if upper.len() != dim * (dim + 1) / 2 {
            return Err(CertError::Dimension(format!(
                "block {sigma}: {} entries for dimension {dim}",
                upper.len()
            )));
        }
        let vals = upper.iter().map(|&(p, q)| round_to_qsqrt2(p, q, bound)).collect();
        cert.blocks[slot] = Block { sigma: sigma.clone(), matrix: SymMatrixQ::from_upper(dim, vals)? };
    }
    for ((p, q), g1, g2) in &raw.slacks {
        let coeff = round_to_qsqrt2(*p, *q, bound);
        if coeff.is_negative() {
            if coeff.to_f64() < -NEGATIVE_TOLERANCE {
                return Err(CertError::RoundingFailure { graph: format!("slack {g1} {g2}"), value: coeff.to_f64() });
            }
            continue;
        }
        if !coeff.is_zero() {
            cert.slacks.push(SlackTerm { coeff, g1: g1.clone(), g2: g2.clone() });
        }
    }
    cert.target = match &raw.target {
        Some(t) => t.clone(),
        None => target_expression(problem)?,
    };
    if cert.target.level() != LEVEL {
        return Err(CertError::Dimension(format!("target lives at level {}", cert.target.level())));
    }
    cert.fill_c_from_target()?;
    let mut worst: Option<(String, f64)> = None;
    cert.c.retain(|k, v| {
        if !v.is_negative() {
            return true;
        }
        let x = v.to_f64();
        if x < -NEGATIVE_TOLERANCE && worst.as_ref().is_none_or(|w| x < w.1) {
            worst = Some((k.to_string(), x));
        }
        false
    });
    if let Some((graph, value)) = worst {
        return Err(CertError::RoundingFailure { graph, value });
    }
    Ok(cert)
}
