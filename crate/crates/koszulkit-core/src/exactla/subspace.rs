//! Subspaces in canonical reduced row echelon form and the lattice operations on them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::field::Field;
use crate::exactla::sparse::{SparseMatrix, SparseVec};

/// Incremental row echelon form.
///
/// Rows are kept with a unit pivot at their leading column. A new row is reduced against
/// the existing pivots in increasing column order, so every entry it keeps at a pivot
/// column has already been eliminated.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    /// An empty echelon form in an ambient space of dimension `ambient`.
    pub fn new(field: &F, ambient: usize) -> Self {
        Echelon { field: field.clone(), ambient, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Starts from the rows of a canonical subspace.
    pub fn from_subspace(field: &F, s: &Subspace<F>) -> Self {
        let mut e = Echelon::new(field, s.ambient);
        for (k, (r, p)) in s.rows.iter().zip(&s.pivots).enumerate() {
            e.rows.push(r.clone());
            e.pivot_row.insert(*p, k);
        }
        e
    }

    /// Number of independent rows inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_from(v, 0)
    }

    fn reduce_from(&self, mut v: SparseVec<F::Elem>, start: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pos = start;
        while pos < v.nnz() {
            let (col, coef) = v.entries()[pos].clone();
            match self.pivot_row.get(&col) {
                Some(&r) => {
                    v = v.add_scaled(f, &f.neg(&coef), &self.rows[r]);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Reduces `v` and, if it is independent, adds it. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.reduce(v);
        match v.lead() {
            None => false,
            Some((col, c)) => {
                let col = *col;
                let inv = self.field.inv(c);
                let v = v.scale(&self.field, &inv);
                self.pivot_row.insert(col, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    /// Canonical reduced row echelon form of the rows inserted so far.
    pub fn into_subspace(self) -> Subspace<F> {
        let Echelon { field, ambient, mut rows, .. } = self;
        rows.sort_by_key(|r| r.lead().map(|(c, _)| *c).unwrap_or(usize::MAX));
        let pivots: Vec<usize> = rows.iter().map(|r| r.lead().expect("nonzero row").0).collect();
        let mut done: Echelon<F> = Echelon::new(&field, ambient);
        for k in (0..rows.len()).rev() {
            let row = std::mem::take(&mut rows[k]);
            let row = done.reduce_from(row, 1);
            done.pivot_row.insert(pivots[k], done.rows.len());
            done.rows.push(row.clone());
            rows[k] = row;
        }
        Subspace { ambient, rows, pivots }
    }
}

/// A subspace of `F^ambient` stored as its unique reduced row echelon basis.
///
/// Rows are sorted by pivot column, every pivot entry is one and every pivot column is
/// zero in all other rows. Two values are equal exactly when the subspaces coincide.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Subspace<F> {
    /// The zero subspace.
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole space.
    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| SparseVec::unit(field, i, field.one())).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of arbitrary vectors.
    pub fn span(field: &F, ambient: usize, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Result<Self> {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            check_vec(&v, ambient)?;
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    /// Wraps rows that are already in canonical form. Checked in debug builds only.
    pub fn from_canonical_rows(field: &F, ambient: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        let pivots: Vec<usize> = rows.iter().map(|r| r.lead().expect("nonzero row").0).collect();
        let s = Subspace { ambient, rows, pivots };
        debug_assert!(s.is_canonical(field), "rows are not in reduced row echelon form");
        s
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Whether this is the zero subspace.
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Whether this is the whole space.
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical basis rows in pivot order.
    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as a matrix whose rows span the subspace.
    pub fn basis_matrix(&self) -> SparseMatrix<F::Elem> {
        SparseMatrix::from_rows(self.ambient, self.rows.clone()).expect("rows in range")
    }

    /// Verifies the reduced row echelon invariants.
    pub fn is_canonical(&self, field: &F) -> bool {
        let increasing = self.pivots.windows(2).all(|w| w[0] < w[1]);
        increasing
            && self.rows.iter().zip(&self.pivots).all(|(r, p)| {
                r.lead().map(|(c, v)| c == p && *v == field.one()).unwrap_or(false)
                    && r.max_col().map(|m| m < self.ambient).unwrap_or(false)
                    && self.pivots.iter().filter(|q| *q != p).all(|q| r.get(*q).is_none())
            })
    }

    fn row_at_pivot(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }

    /// Residue of `v` modulo the subspace: the unique representative supported off the pivots.
    pub fn residue(&self, field: &F, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = v.clone();
        for (c, x) in v.entries() {
            if let Some(r) = self.row_at_pivot(*c) {
                acc = acc.add_scaled(field, &field.neg(x), &self.rows[r]);
            }
        }
        acc
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, field: &F, v: &SparseVec<F::Elem>) -> Result<bool> {
        check_vec(v, self.ambient)?;
        Ok(self.residue(field, v).is_zero())
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not in the subspace.
    pub fn coordinates(&self, field: &F, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        if !self.residue(field, v).is_zero() {
            return None;
        }
        let pairs: Vec<(usize, F::Elem)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.row_at_pivot(*c).map(|r| (r, x.clone())))
            .collect();
        Some(SparseVec::from_sorted_unchecked(pairs))
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subspace_of(&self, field: &F, other: &Self) -> Result<bool> {
        same_ambient(self, other)?;
        Ok(self.rows.iter().all(|r| other.residue(field, r).is_zero()))
    }

    /// First canonical basis vector of `self` lying outside `other`.
    pub fn first_outside(&self, field: &F, other: &Self) -> Option<SparseVec<F::Elem>> {
        self.rows.iter().find(|r| !other.residue(field, r).is_zero()).cloned()
    }

    /// Equality of subspaces with an ambient check.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        same_ambient(self, other)?;
        Ok(self == other)
    }

    /// Lattice join `U + W`.
    pub fn sum(&self, field: &F, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        if small.is_zero() || big.is_full() {
            return Ok(big.clone());
        }
        let mut e = Echelon::from_subspace(field, big);
        for r in &small.rows {
            e.insert(r.clone());
        }
        Ok(e.into_subspace())
    }

    /// Sum of many subspaces of a common ambient space.
    pub fn sum_all<'a>(field: &F, ambient: usize, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        F: 'a,
    {
        let mut parts: Vec<&Self> = parts.into_iter().collect();
        for p in &parts {
            if p.ambient != ambient {
                return Err(Error::DimensionMismatch { left: p.ambient, right: ambient });
            }
        }
        parts.sort_by_key(|p| std::cmp::Reverse(p.dim()));
        let Some(first) = parts.first() else {
            return Ok(Self::zero(ambient));
        };
        if parts.len() == 1 || first.is_full() {
            return Ok((*first).clone());
        }
        let mut e = Echelon::from_subspace(field, first);
        for p in &parts[1..] {
            for r in &p.rows {
                if e.rank() == ambient {
                    break;
                }
                e.insert(r.clone());
            }
        }
        Ok(e.into_subspace())
    }

    /// Lattice meet `U ∩ W`.
    ///
    /// Zassenhaus-style: each basis vector of the smaller space is reduced modulo the other
    /// space while its combination is tracked; combinations whose residues cancel span the
    /// intersection.
    pub fn intersect(&self, field: &F, other: &Self) -> Result<Self> {
        same_ambient(self, other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let (u, w) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let mut residues: Vec<(SparseVec<F::Elem>, SparseVec<F::Elem>)> = Vec::new();
        let mut pivot_of: HashMap<usize, usize> = HashMap::new();
        let mut found = Echelon::new(field, self.ambient);
        for (k, row) in u.rows.iter().enumerate() {
            let mut r = w.residue(field, row);
            let mut t = SparseVec::unit(field, k, field.one());
            let mut pos = 0;
            while pos < r.nnz() {
                let (col, c) = r.entries()[pos].clone();
                match pivot_of.get(&col) {
                    Some(&j) => {
                        let m = field.neg(&c);
                        r = r.add_scaled(field, &m, &residues[j].0);
                        t = t.add_scaled(field, &m, &residues[j].1);
                    }
                    None => pos += 1,
                }
            }
            match r.lead() {
                None => {
                    let mut acc = crate::exactla::sparse::Accumulator::new();
                    for (idx, c) in t.entries() {
                        acc.add_scaled(field, c, &u.rows[*idx]);
                    }
                    found.insert(acc.finish(field));
                }
                Some((col, c)) => {
                    let inv = field.inv(c);
                    pivot_of.insert(*col, residues.len());
                    residues.push((r.scale(field, &inv), t.scale(field, &inv)));
                }
            }
        }
        Ok(found.into_subspace())
    }

    /// Orthogonal complement with respect to the standard pairing of coordinates.
    pub fn perp(&self, field: &F) -> Self {
        let mut vectors = Vec::with_capacity(self.ambient - self.dim());
        let mut is_pivot = vec![false; self.ambient];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        // Column f of the free part: e_f minus the pivot combination cancelling every row.
        let mut by_col: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.entries() {
                if !is_pivot[*c] {
                    by_col.entry(*c).or_default().push((self.pivots[r], field.neg(x)));
                }
            }
        }
        for f in (0..self.ambient).filter(|c| !is_pivot[*c]) {
            let mut pairs = by_col.remove(&f).unwrap_or_default();
            pairs.push((f, field.one()));
            vectors.push(SparseVec::from_pairs(field, pairs));
        }
        Subspace::span(field, self.ambient, vectors).expect("columns in range")
    }
}

fn same_ambient<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch { left: a.ambient, right: b.ambient });
    }
    Ok(())
}

fn check_vec<E: Clone + PartialEq>(v: &SparseVec<E>, ambient: usize) -> Result<()> {
    match v.max_col() {
        Some(c) if c >= ambient => Err(Error::DimensionMismatch { left: c + 1, right: ambient }),
        _ => Ok(()),
    }
}

/// Row space of a matrix in canonical form.
pub fn rref<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F> {
    Subspace::span(field, m.ncols(), m.rows().iter().cloned()).expect("matrix rows in range")
}

/// Rank of a matrix.
pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    rank_of_rows(field, m.ncols(), m.rows().iter().cloned())
}

/// Rank of a family of vectors.
pub fn rank_of_rows<F: Field>(field: &F, ncols: usize, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Left null space `{c : Σ_r c_r · row_r = 0}` as a subspace of `F^nrows`.
///
/// Rows are eliminated while tracking their combinations; every combination that reduces
/// to zero is a kernel vector, and these span the left null space.
pub fn left_kernel<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F> {
    let mut reduced: Vec<(SparseVec<F::Elem>, SparseVec<F::Elem>)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut found = Vec::new();
    for (k, row) in m.rows().iter().enumerate() {
        let mut r = row.clone();
        let mut t = SparseVec::unit(field, k, field.one());
        let mut pos = 0;
        while pos < r.nnz() {
            let (col, c) = r.entries()[pos].clone();
            match pivot_of.get(&col) {
                Some(&j) => {
                    let neg = field.neg(&c);
                    r = r.add_scaled(field, &neg, &reduced[j].0);
                    t = t.add_scaled(field, &neg, &reduced[j].1);
                }
                None => pos += 1,
            }
        }
        match r.lead() {
            None => found.push(t),
            Some((col, c)) => {
                let inv = field.inv(c);
                pivot_of.insert(*col, reduced.len());
                reduced.push((r.scale(field, &inv), t.scale(field, &inv)));
            }
        }
    }
    Subspace::span(field, m.nrows(), found).expect("combinations in range")
}

/// Null space `{v : m v = 0}` as a subspace of `F^ncols`.
pub fn kernel<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F> {
    rref(field, m).perp(field)
}

/// Whether `E ∩ (F_1 + ... + F_t) = (E ∩ F_1) + ... + (E ∩ F_t)`.
pub fn is_distributive<F: Field>(field: &F, e: &Subspace<F>, fs: &[&Subspace<F>]) -> Result<bool> {
    let total = Subspace::sum_all(field, e.ambient(), fs.iter().copied())?;
    let lhs = e.intersect(field, &total)?;
    let parts = fs.iter().map(|f| e.intersect(field, f)).collect::<Result<Vec<_>>>()?;
    let rhs = Subspace::sum_all(field, e.ambient(), parts.iter())?;
    Ok(lhs == rhs)
}
