//! Sparse vectors and row-major sparse matrices without stored zeros.

use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// A sparse vector: strictly increasing column indices paired with nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<E: Clone + PartialEq> SparseVec<E> {
    /// The zero vector.
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// A single entry `c` at `col`, or zero when `c` is zero.
    pub fn unit<F: Field<Elem = E>>(field: &F, col: usize, c: E) -> Self {
        if field.is_zero(&c) {
            Self::zero()
        } else {
            SparseVec { entries: vec![(col, c)] }
        }
    }

    /// Builds a vector from arbitrary `(col, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<F: Field<Elem = E>>(field: &F, mut pairs: Vec<(usize, E)>) -> Self {
        pairs.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = field.add(lv, &v),
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !field.is_zero(v));
        SparseVec { entries }
    }

    /// Wraps entries already sorted by column and free of zeros.
    pub fn from_sorted_unchecked(entries: Vec<(usize, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    /// Builds a vector from a dense slice.
    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[E]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|(i, v)| (i, v.clone()))
            .collect();
        SparseVec { entries }
    }

    /// The stored entries in increasing column order.
    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    /// Consumes the vector, returning its entries.
    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Column and value of the first nonzero entry.
    pub fn lead(&self) -> Option<&(usize, E)> {
        self.entries.first()
    }

    /// Largest stored column index.
    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    /// Entry at `col`, if nonzero.
    pub fn get(&self, col: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Dense copy of length `len`.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut out = vec![field.zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    /// `c * self`.
    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.mul(c, v))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled<F: Field<Elem = E>>(&self, field: &F, c: &E, other: &Self) -> Self {
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, field.mul(c, &b[j].1)));
                j += 1;
            } else {
                let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `self + other`.
    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.one(), other)
    }

    /// `self - other`.
    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add_scaled(field, &field.neg(&field.one()), other)
    }

    /// Dot product with another sparse vector.
    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ci, cj) = (self.entries[i].0, other.entries[j].0);
            if ci < cj {
                i += 1;
            } else if cj < ci {
                j += 1;
            } else {
                acc = field.add(&acc, &field.mul(&self.entries[i].1, &other.entries[j].1));
                i += 1;
                j += 1;
            }
        }
        acc
    }

    /// Applies `f` to every column index. `f` must be strictly increasing.
    pub fn map_cols(&self, f: impl Fn(usize) -> usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (f(*c), v.clone())).collect(),
        }
    }
}

/// Accumulates a linear combination of sparse vectors and emits it sorted.
///
/// Used where many small vectors are summed into one result of unknown support.
#[derive(Debug, Clone)]
pub struct Accumulator<E> {
    map: std::collections::HashMap<usize, E>,
}

impl<E: Clone + PartialEq> Default for Accumulator<E> {
    fn default() -> Self {
        Accumulator { map: std::collections::HashMap::new() }
    }
}

impl<E: Clone + PartialEq> Accumulator<E> {
    /// An empty accumulator.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c` at `col`.
    pub fn add_entry<F: Field<Elem = E>>(&mut self, field: &F, col: usize, c: &E) {
        match self.map.get_mut(&col) {
            Some(v) => *v = field.add(v, c),
            None => {
                self.map.insert(col, c.clone());
            }
        }
    }

    /// Adds `c * v`.
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, c: &E, v: &SparseVec<E>) {
        for (col, x) in v.entries() {
            self.add_entry(field, *col, &field.mul(c, x));
        }
    }

    /// The accumulated vector.
    pub fn finish<F: Field<Elem = E>>(self, field: &F) -> SparseVec<E> {
        let mut entries: Vec<(usize, E)> =
            self.map.into_iter().filter(|(_, v)| !field.is_zero(v)).collect();
        entries.sort_by_key(|(c, _)| *c);
        SparseVec::from_sorted_unchecked(entries)
    }
}

/// A row-major sparse matrix of fixed shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    /// Builds a matrix from rows, checking that every column index is in range.
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec<E>>) -> Result<Self> {
        for r in &rows {
            if let Some(c) = r.max_col() {
                if c >= ncols {
                    return Err(Error::DimensionMismatch { left: c + 1, right: ncols });
                }
            }
        }
        Ok(SparseMatrix { nrows: rows.len(), ncols, rows })
    }

    /// The `nrows x ncols` zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![SparseVec::zero(); nrows] }
    }

    /// The `n x n` identity matrix.
    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let rows = (0..n).map(|i| SparseVec::unit(field, i, field.one())).collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense<F: Field<Elem = E>>(field: &F, ncols: usize, rows: &[Vec<E>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                if r.len() != ncols {
                    Err(Error::DimensionMismatch { left: r.len(), right: ncols })
                } else {
                    Ok(SparseVec::from_dense(field, r))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix { nrows: rows.len(), ncols, rows })
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The rows.
    pub fn rows(&self) -> &[SparseVec<E>] {
        &self.rows
    }

    /// Entry at `(r, c)` or `None` when zero.
    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        self.rows.get(r).and_then(|row| row.get(c))
    }

    /// Total number of stored entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    /// Multiplies the matrix by a column vector.
    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let pairs = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.dot(field, v)))
            .collect();
        SparseVec::from_pairs(field, pairs)
    }

    /// The product `self * other`, computed row by row.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch { left: self.ncols, right: other.nrows });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new();
                for (k, c) in r.entries() {
                    acc.add_scaled(field, c, &other.rows[*k]);
                }
                acc.finish(field)
            })
            .collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows })
    }

    /// Whether all entries vanish.
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }
}
