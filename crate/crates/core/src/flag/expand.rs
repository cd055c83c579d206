use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{check_level, subsets, FlagBasis, FlagError, GraphCombo, TypeSigma};
use crate::field::{QSqrt2, SymMatrixQ};
use crate::graph::{graphs_with_keys, rooted_canonical_form, CanonicalForm};

/// Expansion data for one target graph `H`: `count[i][j]` is the number of
/// (root map θ, ordered split) pairs under which the two halves of `H`
/// rooted at θ are basis flags `i` and `j`.
#[derive(Debug, Clone)]
pub struct ExpansionRow {
    pub graph: CanonicalForm,
    pub counts: Vec<(u32, u32, u32)>,
}

/// Rows for every family-free graph at level `2·size − |σ|` plus the common
/// denominator (number of injective root maps times number of splits).
pub fn expansion_rows(basis: &FlagBasis) -> Result<(Arc<Vec<ExpansionRow>>, BigInt), FlagError> {
    let s = basis.sigma().order();
    let m = basis.size();
    let level = 2 * m - s;
    check_level(level)?;
    let maps: u64 = (0..s as u64).map(|i| level as u64 - i).product();
    let denom = BigInt::from(maps) * BigInt::from(binomial((level - s) as u64, (m - s) as u64));

    type Memo = HashMap<(String, usize, crate::graph::Family), Arc<Vec<ExpansionRow>>>;
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let k = (basis.sigma().graph().encode(), m, basis.family());
    if let Some(hit) = memo.lock().expect("memo lock").get(&k) {
        return Ok((hit.clone(), denom));
    }
    let graphs = graphs_with_keys(level, basis.family())?;
    let root_pos: Vec<usize> = (0..s).collect();
    let rows: Vec<ExpansionRow> = graphs
        .par_iter()
        .map(|(key, h)| {
            let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
            for theta in (0..level).permutations(s) {
                if h.induced(&theta) != *basis.sigma().graph() {
                    continue;
                }
                let free: Vec<usize> = (0..level).filter(|v| !theta.contains(v)).collect();
                for part in subsets(&free, m - s) {
                    let rest: Vec<usize> = free.iter().copied().filter(|v| !part.contains(v)).collect();
                    let side = |p: &[usize]| {
                        let vs: Vec<usize> = theta.iter().chain(p).copied().collect();
                        let key = rooted_canonical_form(&h.induced(&vs), &root_pos);
                        basis.index_of(&key)
                    };
                    // Both halves are family-free whenever H is.
                    let (i, j) = (side(&part).expect("half in basis"), side(&rest).expect("half in basis"));
                    *counts.entry((i as u32, j as u32)).or_insert(0) += 1;
                }
            }
            let mut counts: Vec<(u32, u32, u32)> = counts.into_iter().map(|((i, j), c)| (i, j, c)).collect();
            counts.sort_unstable();
            ExpansionRow { graph: key.clone(), counts }
        })
        .collect();
    let rows = Arc::new(rows);
    memo.lock().expect("memo lock").insert(k, rows.clone());
    Ok((rows, denom))
}

/// `⟦vᵀ Q v⟧_σ` written over the family-free graphs of level
/// `2·size − |σ|`, where `v` is the vector of basis flags.
///
/// The coefficient of `H` is `Σ_{i,j} Q_ij · p(F_i, F_j; H^θ)` averaged over
/// all injective maps θ of the type's vertices into `H`, non-embeddings
/// contributing zero.
pub fn quadratic_form_expand(
    sigma: &TypeSigma,
    basis: &FlagBasis,
    q: &SymMatrixQ,
) -> Result<GraphCombo, FlagError> {
    if basis.sigma() != sigma {
        return Err(FlagError::TypeMismatch);
    }
    if q.dim() != basis.len() {
        return Err(FlagError::Dimension(format!("matrix is {0}x{0}, basis has {1} flags", q.dim(), basis.len())));
    }
    let (rows, denom) = expansion_rows(basis)?;
    let inv = BigRational::new(BigInt::from(1), denom);
    let terms: Vec<(CanonicalForm, QSqrt2)> = rows
        .par_iter()
        .filter_map(|row| {
            let mut acc = QSqrt2::zero();
            for &(i, j, c) in &row.counts {
                let x = q.get(i as usize, j as usize);
                if !x.is_zero() {
                    acc += x.mul_rational(&BigRational::from_integer(BigInt::from(c)));
                }
            }
            (!acc.is_zero()).then(|| (row.graph.clone(), acc.mul_rational(&inv)))
        })
        .collect();
    let mut out = GraphCombo::new(2 * basis.size() - sigma.order());
    for (k, c) in terms {
        out.add_term(k, c);
    }
    Ok(out)
}
