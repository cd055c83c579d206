use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use sha2::{Digest, Sha256};

use super::{check_level, Flag, FlagError, TypeSigma};
use crate::graph::{graphs_with_keys, rooted_canonical_form, CanonicalForm, Family};

/// All σ-flags of a given size avoiding a family, one per root-preserving
/// isomorphism class.
///
/// Flags are ordered by the canonical key of the underlying graph, then by
/// the lexicographically first root tuple realizing the class on the
/// canonical representative; each flag is stored in exactly that form.
#[derive(Debug)]
pub struct FlagBasis {
    sigma: TypeSigma,
    size: usize,
    family: Family,
    flags: Vec<Flag>,
    keys: Vec<CanonicalForm>,
    index: HashMap<CanonicalForm, usize>,
}

impl FlagBasis {
    pub fn sigma(&self) -> &TypeSigma {
        &self.sigma
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn keys(&self) -> &[CanonicalForm] {
        &self.keys
    }

    pub fn index_of(&self, key: &CanonicalForm) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// One flag per line, `<graph>|<roots>`.
    pub fn dump(&self) -> String {
        self.flags.iter().map(|f| format!("{f}\n")).collect()
    }

    /// Hex SHA-256 of [`dump`](Self::dump).
    pub fn hash_hex(&self) -> String {
        hex_digest(self.dump().as_bytes())
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

type BasisKey = (ColoredKey, usize, Family);
type ColoredKey = String;

/// Memoized basis of `size`-vertex σ-flags avoiding `family`.
pub fn flag_basis(sigma: &TypeSigma, size: usize, family: Family) -> Result<Arc<FlagBasis>, FlagError> {
    check_level(size)?;
    if size < sigma.order() {
        return Err(FlagError::Dimension(format!("flag size {size} below type size {}", sigma.order())));
    }
    static MEMO: OnceLock<Mutex<HashMap<BasisKey, Arc<FlagBasis>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let k = (sigma.graph().encode(), size, family);
    if let Some(hit) = memo.lock().expect("memo lock").get(&k) {
        return Ok(hit.clone());
    }
    let basis = Arc::new(build(sigma, size, family)?);
    memo.lock().expect("memo lock").insert(k, basis.clone());
    Ok(basis)
}

fn build(sigma: &TypeSigma, size: usize, family: Family) -> Result<FlagBasis, FlagError> {
    let s = sigma.order();
    let mut flags = Vec::new();
    let mut keys = Vec::new();
    let mut index = HashMap::new();
    for (_, g) in graphs_with_keys(size, family)?.iter() {
        for roots in (0..size).permutations(s) {
            if g.induced(&roots) != *sigma.graph() {
                continue;
            }
            let key = rooted_canonical_form(g, &roots);
            if index.contains_key(&key) {
                continue;
            }
            index.insert(key.clone(), flags.len());
            keys.push(key);
            flags.push(Flag::new(g.clone(), roots).expect("permutation roots are valid"));
        }
    }
    Ok(FlagBasis { sigma: sigma.clone(), size, family, flags, keys, index })
}
