use rayon::prelude::*;

use super::{side_condition_graphs, target_expression, CertError, Certificate, LEVEL};
use crate::field::{psd_check, PsdVerdict, QSqrt2};
use crate::flag::GraphCombo;
use crate::graph::{is_family_free, CanonicalForm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Graph encoding or block name.
    pub subject: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity_ok: bool,
    pub psd_ok: bool,
    pub side_conditions_ok: bool,
    /// Whether the certificate's target is the problem's own expression.
    pub target_is_problem: bool,
    /// `Σ blocks + Σ slacks + Σ c_H·H − target`.
    pub diff: GraphCombo,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    /// Identity, PSD and side conditions all hold.
    pub fn is_valid(&self) -> bool {
        self.identity_ok && self.psd_ok && self.side_conditions_ok
    }
}

fn block_psd(cert: &Certificate, i: usize) -> Option<Violation> {
    let block = &cert.blocks[i];
    let name = format!("block {}", block.sigma);
    if let Some(f) = block.matrix.factorization() {
        let core = crate::field::SymMatrixQ::from_dense(f.core.clone());
        if let Ok(core) = core {
            if psd_check(&core).is_positive_definite() {
                return None;
            }
        }
    }
    match psd_check(&block.matrix.factored_value()) {
        PsdVerdict::Psd { .. } => None,
        PsdVerdict::NotPsd { witness, value } => {
            let w: Vec<String> = witness.iter().map(ToString::to_string).collect();
            Some(Violation {
                subject: name,
                reason: format!("not PSD: w = ({}) gives wᵀAw = {value}", w.join(", ")),
            })
        }
    }
}

/// Checks PSD blocks, the level-6 identity and the positivity side
/// conditions. Failures are reported, never raised.
pub fn verify(cert: &Certificate) -> Result<VerificationReport, CertError> {
    let mut violations = Vec::new();

    let psd: Vec<Option<Violation>> = (0..cert.blocks.len()).into_par_iter().map(|i| block_psd(cert, i)).collect();
    let psd_ok = psd.iter().all(Option::is_none);
    violations.extend(psd.into_iter().flatten());
    for s in &cert.slacks {
        if s.coeff.is_negative() {
            violations.push(Violation { subject: format!("slack {} {}", s.g1, s.g2), reason: "negative coefficient".into() });
        }
    }
    let slack_ok = cert.slacks.iter().all(|s| !s.coeff.is_negative());

    let fam = cert.problem.family();
    let mut sum = cert.expansion()?;
    let mut c_ok = true;
    for (k, v) in &cert.c {
        if v.is_negative() {
            c_ok = false;
            violations.push(Violation { subject: k.to_string(), reason: format!("negative c_H {v}") });
        }
        if k.order() != LEVEL || !is_family_free(&k.to_graph(), fam) {
            violations.push(Violation { subject: k.to_string(), reason: "c_H on a graph outside the level-6 family".into() });
        }
        sum.add_term(k.clone(), v.clone());
    }
    let diff = sum.sub(&cert.target)?;
    let identity_ok = diff.is_empty();
    for (k, v) in diff.terms() {
        violations.push(Violation { subject: k.to_string(), reason: format!("identity residual {v}") });
    }

    let side = side_condition_graphs(cert.problem)?;
    let missing: Vec<&CanonicalForm> =
        side.iter().filter(|k| !cert.c.get(*k).is_some_and(QSqrt2::is_positive)).collect();
    for k in &missing {
        violations.push(Violation { subject: k.to_string(), reason: "side condition needs c_H > 0".into() });
    }
    let side_conditions_ok = missing.is_empty();

    Ok(VerificationReport {
        identity_ok,
        psd_ok: psd_ok && slack_ok && c_ok,
        side_conditions_ok,
        target_is_problem: cert.target == target_expression(cert.problem)?,
        diff,
        violations,
    })
}
