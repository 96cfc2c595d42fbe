//! Exact sparse linear algebra: reduced row echelon forms, kernels,
//! canonical complements and canonical preimages.
//!
//! Every result is a function of the input subspaces alone (not of the order
//! in which vectors are supplied), which is what makes the splittings chosen
//! by the minimal model construction reproducible.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("right-hand side is not in the column space")]
    NotInImage,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: fmt::Debug> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c)))
            .finish()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, c) in pairs {
            let slot = acc.entry(i).or_insert_with(F::zero);
            *slot += &c;
        }
        SparseVec {
            entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Largest stored index plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scale(&mut self, c: &F) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v = v.clone() * c;
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &F, other: &SparseVec<F>) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, c.clone() * v));
                }
                (Some(_), Some(_)) => {
                    let (i, mut x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    x += &(c.clone() * y);
                    if !x.is_zero() {
                        out.push((i, x));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, c.clone() * v));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, other: &SparseVec<F>) -> F {
        let mut acc = F::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, x) = &self.entries[p];
            let (j, y) = &other.entries[q];
            match i.cmp(j) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(x.clone() * y);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }
}

/// A row-major sparse matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    cols: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { cols, rows: vec![SparseVec::zero(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { cols: n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<F>>) -> Result<Self, LinalgError> {
        for r in &rows {
            if r.support_bound() > cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: r.support_bound() });
            }
        }
        Ok(Matrix { cols, rows })
    }

    /// Builds a matrix from its columns, i.e. the images of the standard basis.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Result<Self, LinalgError> {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            if col.support_bound() > rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, got: col.support_bound() });
            }
            for (i, c) in col.entries() {
                buckets[*i].push((j, c.clone()));
            }
        }
        Ok(Matrix {
            cols: columns.len(),
            rows: buckets.into_iter().map(|e| SparseVec { entries: e }).collect(),
        })
    }

    pub fn from_dense(cols: usize, rows: &[Vec<F>]) -> Self {
        Matrix {
            cols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_int(x)).collect())
            .collect();
        Self::from_dense(cols, &dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.rows[i].get(j).cloned().unwrap_or_else(F::zero)
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.rows.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn mul_vec(&self, x: &SparseVec<F>) -> SparseVec<F> {
        SparseVec {
            entries: self
                .rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let v = r.dot(x);
                    (!v.is_zero()).then_some((i, v))
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }
}

/// An incrementally maintained reduced row echelon basis of a subspace.
///
/// Rows are kept fully reduced: every row has a leading 1 at its pivot and
/// zeros at every other pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    pub fn into_rows(self) -> Vec<SparseVec<F>> {
        self.rows.into_values().collect()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        let mut out = v.clone();
        for (p, c) in hits {
            out.axpy(&(-c), &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let mut r = self.reduce(&v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let inv = F::one() / lead.clone();
        r.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                row.axpy(&(-c), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Rows of `self` whose pivots are not pivots of `sub`.
    ///
    /// When `sub` spans a subspace of `self`, these rows span a canonical
    /// complement of `sub` inside `self`.
    pub fn relative_complement(&self, sub: &Echelon<F>) -> Vec<SparseVec<F>> {
        self.rows
            .iter()
            .filter(|(p, _)| !sub.is_pivot(**p))
            .map(|(_, r)| r.clone())
            .collect()
    }
}

/// Reduced row echelon form with the ordered pivot columns.
///
/// The output has the same shape as the input; zero rows come last.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let e = Echelon::from_vectors(m.rows());
    let pivots = e.pivots();
    let mut rows = e.into_rows();
    rows.resize(m.nrows().max(rows.len()), SparseVec::zero());
    (Matrix { cols: m.ncols(), rows }, pivots)
}

/// Null space basis `{x : m x = 0}`, one vector per free column with that
/// free variable set to 1 and the other free variables 0.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<SparseVec<F>> {
    let e = Echelon::from_vectors(m.rows());
    kernel_from_echelon(&e, m.ncols())
}

pub(crate) fn kernel_from_echelon<F: Field>(e: &Echelon<F>, cols: usize) -> Vec<SparseVec<F>> {
    // column f -> list of (pivot, coefficient of f in that pivot row)
    let mut by_free: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    for (p, row) in e.rows() {
        for (j, c) in row.entries() {
            if *j != p {
                by_free.entry(*j).or_default().push((p, -c.clone()));
            }
        }
    }
    (0..cols)
        .filter(|f| !e.is_pivot(*f))
        .map(|f| {
            let mut pairs = by_free.remove(&f).unwrap_or_default();
            pairs.push((f, F::one()));
            pairs.sort_by_key(|(i, _)| *i);
            SparseVec { entries: pairs }
        })
        .collect()
}

/// Standard basis vectors at the non-pivot positions of the span of
/// `image_gens`: a canonical complement of the span in `F^ambient_dim`.
pub fn cokernel_complement<F: Field>(
    image_gens: &[SparseVec<F>],
    ambient_dim: usize,
) -> Result<Vec<SparseVec<F>>, LinalgError> {
    for v in image_gens {
        if v.support_bound() > ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: ambient_dim, got: v.support_bound() });
        }
    }
    let e = Echelon::from_vectors(image_gens);
    Ok((0..ambient_dim)
        .filter(|i| !e.is_pivot(*i))
        .map(SparseVec::unit)
        .collect())
}

/// The solution of `m x = b` whose free variables are all zero.
pub fn preimage<F: Field>(m: &Matrix<F>, b: &SparseVec<F>) -> Result<SparseVec<F>, LinalgError> {
    if b.support_bound() > m.nrows() {
        return Err(LinalgError::DimensionMismatch { expected: m.nrows(), got: b.support_bound() });
    }
    let aug = m.ncols();
    let mut e = Echelon::new();
    for (i, r) in m.rows().iter().enumerate() {
        let mut row = r.clone();
        if let Some(c) = b.get(i) {
            row.axpy(c, &SparseVec::unit(aug));
        }
        e.insert(row);
    }
    if e.is_pivot(aug) {
        return Err(LinalgError::NotInImage);
    }
    Ok(SparseVec::from_pairs(
        e.rows().filter_map(|(p, r)| r.get(aug).map(|c| (p, c.clone()))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational as Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn v(xs: &[i64]) -> SparseVec<Q> {
        SparseVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::<Q>::identity(2);
        let (r, p) = rref(&m);
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rref(&Matrix::<Q>::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, Matrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_swap() {
        let (r, p) = rref(&Matrix::<Q>::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_fractions() {
        let (r, p) = rref(&Matrix::<Q>::from_ints(&[&[2, 1, 0], &[4, 0, 3]]));
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.get(0, 2), Q::ratio(3, 4));
        assert_eq!(r.get(1, 2), Q::ratio(-3, 2));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::<Q>::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Matrix::<Q>::from_ints(&[&[1, 1]])), vec![v(&[-1, 1])]);
        let k = kernel_basis(&Matrix::<Q>::zeros(1, 3));
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn cokernel_examples() {
        let full = cokernel_complement(&[v(&[1, 0]), v(&[1, 1])], 2).unwrap();
        assert!(full.is_empty());
        assert_eq!(cokernel_complement::<Q>(&[], 2).unwrap(), vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(
            cokernel_complement(&[v(&[1, 1, 0])], 3).unwrap(),
            vec![v(&[0, 1, 0]), v(&[0, 0, 1])]
        );
        assert!(cokernel_complement(&[v(&[0, 0, 0, 1])], 3).is_err());
    }

    #[test]
    fn preimage_examples() {
        let b = v(&[3, -7]);
        assert_eq!(preimage(&Matrix::identity(2), &b).unwrap(), b);
        assert_eq!(
            preimage(&Matrix::<Q>::from_ints(&[&[2]]), &v(&[1])).unwrap(),
            SparseVec::from_dense(&[Q::ratio(1, 2)])
        );
        assert_eq!(preimage(&Matrix::<Q>::from_ints(&[&[1, 1]]), &v(&[3])).unwrap(), v(&[3, 0]));
        assert_eq!(
            preimage(&Matrix::<Q>::from_ints(&[&[1, 2], &[2, 4]]), &v(&[1, 0])),
            Err(LinalgError::NotInImage)
        );
    }

    #[test]
    fn relative_complement_is_canonical() {
        let big = Echelon::from_vectors(&[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let small = Echelon::from_vectors(&[v(&[1, 2, 1])]);
        let c = big.relative_complement(&small);
        assert_eq!(c, vec![v(&[0, 1, 1])]);
    }

    #[test]
    fn axpy_cancels() {
        let mut a = v(&[1, 2, 3]);
        a.axpy(&q(-1), &v(&[1, 2, 3]));
        assert!(a.is_zero());
    }
}
