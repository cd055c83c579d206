use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::{FieldError, QSqrt2};

/// Dense row-major matrix over Q[√2].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QSqrt2>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![QSqrt2::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QSqrt2::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self, FieldError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FieldError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QSqrt2) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[QSqrt2] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, FieldError> {
        if self.cols != rhs.rows {
            return Err(FieldError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Congruence factorization `Mᵀ·H·M` of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// `r × dim` outer factor.
    pub outer: Matrix,
    /// `r × r` symmetric core, expected positive definite.
    pub core: Matrix,
}

/// Symmetric matrix over Q[√2], optionally carrying the factorization it
/// was built from. When a factorization is present the dense entries are
/// derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrixQ {
    dense: Matrix,
    factor: Option<Factorization>,
}

impl SymMatrixQ {
    pub fn zeros(dim: usize) -> Self {
        SymMatrixQ { dense: Matrix::zeros(dim, dim), factor: None }
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrixQ { dense: Matrix::identity(dim), factor: None }
    }

    pub fn from_dense(m: Matrix) -> Result<Self, FieldError> {
        if m.rows() != m.cols() {
            return Err(FieldError::Dimension(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                if m.get(i, j) != m.get(j, i) {
                    return Err(FieldError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrixQ { dense: m, factor: None })
    }

    /// Builds a matrix from its upper triangle listed row by row.
    pub fn from_upper(dim: usize, upper: Vec<QSqrt2>) -> Result<Self, FieldError> {
        if upper.len() != dim * (dim + 1) / 2 {
            return Err(FieldError::Dimension(format!(
                "{} upper-triangle entries for dimension {dim}",
                upper.len()
            )));
        }
        let mut m = Matrix::zeros(dim, dim);
        let mut it = upper.into_iter();
        for i in 0..dim {
            for j in i..dim {
                let v = it.next().expect("length checked");
                if i != j {
                    m.set(j, i, v.clone());
                }
                m.set(i, j, v);
            }
        }
        Ok(SymMatrixQ { dense: m, factor: None })
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self, FieldError> {
        Self::from_dense(Matrix::from_rows(rows)?)
    }

    /// `outerᵀ · core · outer`, keeping the factors.
    pub fn factored(outer: Matrix, core: Matrix) -> Result<Self, FieldError> {
        if core.rows() != core.cols() || core.rows() != outer.rows() {
            return Err(FieldError::Dimension(format!(
                "core {}x{} against outer factor {}x{}",
                core.rows(),
                core.cols(),
                outer.rows(),
                outer.cols()
            )));
        }
        SymMatrixQ::from_dense(core.clone())?;
        let dense = outer.transpose().mul(&core)?.mul(&outer)?;
        Ok(SymMatrixQ { dense, factor: Some(Factorization { outer, core }) })
    }

    pub fn dim(&self) -> usize {
        self.dense.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        self.dense.get(i, j)
    }

    /// Sets entries (i, j) and (j, i); drops any stored factorization.
    pub fn set(&mut self, i: usize, j: usize, v: QSqrt2) {
        self.factor = None;
        self.dense.set(j, i, v.clone());
        self.dense.set(i, j, v);
    }

    pub fn factorization(&self) -> Option<&Factorization> {
        self.factor.as_ref()
    }

    /// Dense value `Mᵀ·H·M` (or the stored dense matrix), without factors.
    pub fn factored_value(&self) -> SymMatrixQ {
        SymMatrixQ { dense: self.dense.clone(), factor: None }
    }

    pub fn dense(&self) -> &Matrix {
        &self.dense
    }

    pub fn transpose(&self) -> SymMatrixQ {
        SymMatrixQ { dense: self.dense.transpose(), factor: None }
    }

    pub fn is_zero(&self) -> bool {
        self.dense.entries().iter().all(QSqrt2::is_zero)
    }

    /// `wᵀ·A·w` for a vector over Q[√2].
    pub fn quadratic_form(&self, w: &[QSqrt2]) -> QSqrt2 {
        let n = self.dim();
        assert_eq!(w.len(), n, "vector length must match dimension");
        let mut acc = QSqrt2::zero();
        for i in 0..n {
            if w[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !w[j].is_zero() && !self.get(i, j).is_zero() {
                    acc += &(&w[i] * self.get(i, j)) * &w[j];
                }
            }
        }
        acc
    }

    pub fn quadratic_form_rational(&self, w: &[BigRational]) -> QSqrt2 {
        let w: Vec<QSqrt2> = w.iter().cloned().map(QSqrt2::from_rational).collect();
        self.quadratic_form(&w)
    }

    /// Symmetric permutation `P·A·Pᵀ` with `out[i][j] = a[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrixQ {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        SymMatrixQ { dense: m, factor: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    /// All elimination pivots are non-negative. Pivots are listed in
    /// elimination order, followed by zeros for the null block.
    Psd { pivots: Vec<QSqrt2>, positive_definite: bool },
    /// `witnessᵀ · A · witness = value < 0`.
    NotPsd { witness: Vec<BigRational>, value: QSqrt2 },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd { .. })
    }

    pub fn is_positive_definite(&self) -> bool {
        matches!(self, PsdVerdict::Psd { positive_definite: true, .. })
    }
}

/// Exact PSD test by symmetric elimination with diagonal pivoting.
///
/// The Schur complement is reduced one positive pivot at a time. A negative
/// diagonal entry, or a zero diagonal entry whose row is not entirely zero,
/// ends the search with a witness vector that is lifted back through the
/// eliminated pivots and then rationalized.
pub fn psd_check(m: &SymMatrixQ) -> PsdVerdict {
    let n = m.dim();
    if let Some(w) = pairwise_witness(m) {
        return not_psd(m, w);
    }

    let mut a: Vec<Vec<QSqrt2>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut history: Vec<(usize, QSqrt2, Vec<(usize, QSqrt2)>)> = Vec::new();
    let mut pivots = Vec::with_capacity(n);

    loop {
        if let Some(&i) = active.iter().find(|&&i| a[i][i].is_negative()) {
            let local = BTreeMap::from([(i, QSqrt2::one())]);
            return not_psd(m, lift(local, &history, n));
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            break;
        };
        let p = active.remove(pos);
        let d = a[p][p].clone();
        let row: Vec<(usize, QSqrt2)> = active
            .iter()
            .filter(|&&j| !a[p][j].is_zero())
            .map(|&j| (j, a[p][j].clone()))
            .collect();
        let inv = d.checked_inv().expect("pivot is positive");
        for (ji, (j, apj)) in row.iter().enumerate() {
            let scaled = apj * &inv;
            for (k, apk) in &row[ji..] {
                let delta = &scaled * apk;
                a[*j][*k] -= &delta;
                if j != k {
                    a[*k][*j] = a[*j][*k].clone();
                }
            }
        }
        pivots.push(d.clone());
        history.push((p, d, row));
    }

    // Remaining diagonal is all zero; the block must vanish.
    for (x, &i) in active.iter().enumerate() {
        for &j in &active[x + 1..] {
            if !a[i][j].is_zero() {
                let s = if a[i][j].is_positive() { -1 } else { 1 };
                let local = BTreeMap::from([(i, QSqrt2::one()), (j, QSqrt2::from_int(s))]);
                return not_psd(m, lift(local, &history, n));
            }
        }
    }
    let positive_definite = active.is_empty();
    pivots.extend(active.iter().map(|_| QSqrt2::zero()));
    PsdVerdict::Psd { pivots, positive_definite }
}

/// Looks for a witness among `e_i` and `e_i ± e_j` before eliminating.
fn pairwise_witness(m: &SymMatrixQ) -> Option<Vec<QSqrt2>> {
    let n = m.dim();
    let unit = |i: usize, j: Option<(usize, i64)>| {
        let mut w = vec![QSqrt2::zero(); n];
        w[i] = QSqrt2::one();
        if let Some((j, s)) = j {
            w[j] = QSqrt2::from_int(s);
        }
        w
    };
    if let Some(i) = (0..n).find(|&i| m.get(i, i).is_negative()) {
        return Some(unit(i, None));
    }
    for i in 0..n {
        for j in i + 1..n {
            let off = m.get(i, j);
            if off.is_zero() {
                continue;
            }
            let two_abs = off.abs().mul_rational(&BigRational::from_integer(2.into()));
            if (m.get(i, i) + m.get(j, j) - two_abs).is_negative() {
                let s = if off.is_positive() { -1 } else { 1 };
                return Some(unit(i, Some((j, s))));
            }
        }
    }
    None
}

/// Extends a Schur-complement witness back through the eliminated pivots.
fn lift(
    mut y: BTreeMap<usize, QSqrt2>,
    history: &[(usize, QSqrt2, Vec<(usize, QSqrt2)>)],
    n: usize,
) -> Vec<QSqrt2> {
    for (p, d, row) in history.iter().rev() {
        let dot: QSqrt2 = row.iter().filter_map(|(j, v)| y.get(j).map(|yj| v * yj)).sum();
        let xp = -(dot.checked_div(d).expect("pivot is positive"));
        y.insert(*p, xp);
    }
    (0..n).map(|i| y.remove(&i).unwrap_or_else(QSqrt2::zero)).collect()
}

fn not_psd(m: &SymMatrixQ, w: Vec<QSqrt2>) -> PsdVerdict {
    let exact = m.quadratic_form(&w);
    debug_assert!(exact.is_negative());
    let witness = rationalize(m, &w);
    let value = m.quadratic_form_rational(&witness);
    PsdVerdict::NotPsd { witness, value }
}

/// Replaces √2 in the witness by successive convergents until the form
/// stays negative.
fn rationalize(m: &SymMatrixQ, w: &[QSqrt2]) -> Vec<BigRational> {
    if w.iter().all(QSqrt2::is_rational) {
        return w.iter().map(|x| x.rational_part().clone()).collect();
    }
    // Convergents of √2: h/k with h' = h + 2k, k' = h + k.
    let (mut h, mut k) = (num_bigint::BigInt::one(), num_bigint::BigInt::one());
    loop {
        let r = BigRational::new(h.clone(), k.clone());
        let cand: Vec<BigRational> =
            w.iter().map(|x| x.rational_part() + x.sqrt2_part() * &r).collect();
        if m.quadratic_form_rational(&cand).is_negative() {
            return cand;
        }
        let nh = &h + &k * 2;
        let nk = &h + &k;
        h = nh;
        k = nk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QSqrt2 {
        s.parse().unwrap()
    }

    fn sym(rows: &[&[&str]]) -> SymMatrixQ {
        SymMatrixQ::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_is_positive_definite() {
        for n in 0..6 {
            assert!(psd_check(&SymMatrixQ::identity(n)).is_positive_definite());
        }
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = sym(&[&["1", "2"], &["2", "1"]]);
        match psd_check(&m) {
            PsdVerdict::NotPsd { witness, value } => {
                assert_eq!(witness, vec![BigRational::one(), -BigRational::one()]);
                assert_eq!(value, QSqrt2::from_int(-2));
            }
            v => panic!("expected NOT_PSD, got {v:?}"),
        }
    }

    #[test]
    fn singular_psd_with_sqrt2() {
        let m = sym(&[&["2", "0/1-1/1*r2"], &["0/1-1/1*r2", "1"]]);
        match psd_check(&m) {
            PsdVerdict::Psd { pivots, positive_definite } => {
                assert_eq!(pivots, vec![QSqrt2::from_int(2), QSqrt2::zero()]);
                assert!(!positive_definite);
            }
            v => panic!("expected PSD, got {v:?}"),
        }
    }

    #[test]
    fn zero_pivot_with_nonzero_row_is_indefinite() {
        let m = sym(&[&["0", "0", "1"], &["0", "1", "0"], &["1", "0", "5"]]);
        match psd_check(&m) {
            PsdVerdict::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(m.quadratic_form_rational(&witness), value);
            }
            v => panic!("expected NOT_PSD, got {v:?}"),
        }
    }

    #[test]
    fn irrational_witness_is_rationalized() {
        // Negative only along a direction involving √2.
        let m = sym(&[&["1", "0/1+1/1*r2"], &["0/1+1/1*r2", "2"]]);
        let mut m2 = m.clone();
        m2.set(1, 1, q("199/100"));
        assert!(psd_check(&m).is_psd());
        match psd_check(&m2) {
            PsdVerdict::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(m2.quadratic_form_rational(&witness), value);
            }
            v => panic!("expected NOT_PSD, got {v:?}"),
        }
    }

    #[test]
    fn factored_identity_and_ones() {
        let id = SymMatrixQ::factored(Matrix::identity(3), Matrix::identity(3)).unwrap();
        assert_eq!(id.factored_value(), SymMatrixQ::identity(3));
        let col = Matrix::from_rows(vec![vec![QSqrt2::one(), QSqrt2::one()]]).unwrap();
        let ones = SymMatrixQ::factored(col, Matrix::identity(1)).unwrap();
        assert_eq!(ones.factored_value(), sym(&[&["1", "1"], &["1", "1"]]));
        assert!(SymMatrixQ::factored(Matrix::identity(2), Matrix::identity(3)).is_err());
    }

    #[test]
    fn upper_triangle_layout() {
        let m = SymMatrixQ::from_upper(3, ["1", "2", "3", "4", "5", "6"].map(q).to_vec()).unwrap();
        assert_eq!(m.get(2, 0), &q("3"));
        assert_eq!(m.get(2, 1), &q("5"));
        assert_eq!(m.get(2, 2), &q("6"));
        assert!(SymMatrixQ::from_upper(3, vec![QSqrt2::one()]).is_err());
    }
}
