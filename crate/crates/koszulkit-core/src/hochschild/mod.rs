//! Hochschild homology from the reduced bimodule Koszul complex `(K_L, d̄)`.
//!
//! The terms are `K_0 = A`, `K_1 = A ⊗ V` and `K_i = A ⊗ J^a_{n_a(i)} ⊕ A ⊗ J^b_{n_b(i)}`.
//! The differential is
//!
//! - `d̄_1(ᾱ ⊗ v) = ᾱv - vᾱ`;
//! - for odd `i >= 3`, `ᾱ ⊗ v w v' ↦ ᾱv ⊗ w v' - v'ᾱ ⊗ v w`;
//! - for even `i` and branch `s`, `ᾱ ⊗ v_1…v_m ↦ Σ_{k=0}^{s-1} (v_{m-k+1}…v_m) ᾱ (v_1…v_{s-1-k}) ⊗ v_{s-k}…v_{m-k}`,
//!   a cyclic sum with `s` terms.
//!
//! `HH_i(A)_n = dim K_{i,n} - rank d̄_{i,n} - rank d̄_{i+1,n}`, with `d̄_0 = 0` so that
//! `HH_0` is the cokernel of `d̄_1` including the unit in degree 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::exactla::{Field, FieldTag};
use crate::koszulchecker::complex::{build_layer, differential_rank, homology_rectangle, DifferentialKind, Slot};
use crate::tensorgraded::{GradedAlgebra, Word};

pub use crate::koszulchecker::complex::ComplexLayer;

/// One domain basis element `u ⊗ r` of a layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    /// Basis word of `A`.
    pub a_word: Word,
    /// Row of the canonical basis of `J`.
    pub j_index: usize,
    /// Summand.
    pub slot: Slot,
}

/// Domain basis of a layer in matrix row order.
pub fn domain_basis<F: Field>(alg: &GradedAlgebra<F>, layer: &ComplexLayer<'_, F>) -> Result<Vec<BasisElement>> {
    let mut out = Vec::with_capacity(layer.domain.dim);
    for b in &layer.domain.blocks {
        let words = alg.basis(b.adeg)?;
        for w in words {
            for r in 0..b.jdim() {
                out.push(BasisElement { a_word: w.clone(), j_index: r, slot: b.slot });
            }
        }
    }
    Ok(out)
}

/// The matrix of `d̄_i` in internal degree `n`, for `i >= 1`.
pub fn reduced_differential<F: Field>(alg: &GradedAlgebra<F>, i: usize, n: usize) -> Result<ComplexLayer<'_, F>> {
    build_layer(alg, DifferentialKind::Hochschild, i, n)
}

/// `dim HH_i(A)_n`.
pub fn hh_dimension<F: Field>(alg: &GradedAlgebra<F>, i: usize, n: usize) -> Result<usize> {
    let (dim, out) = differential_rank(alg, DifferentialKind::Hochschild, i, n)?;
    let (_, inc) = differential_rank(alg, DifferentialKind::Hochschild, i + 1, n)?;
    Ok(dim - out - inc)
}

/// Whether `d̄_i ∘ d̄_{i+1} = 0` in degree `n`, as a product of matrices.
pub fn chain_property_holds<F: Field>(alg: &GradedAlgebra<F>, i: usize, n: usize) -> Result<bool> {
    let hi = reduced_differential(alg, i + 1, n)?;
    let lo = reduced_differential(alg, i, n)?;
    Ok(hi.matrix.mul(alg.field(), &lo.matrix)?.is_zero())
}

/// One entry of a homology table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// `dim HH_i(A)_n`.
    pub dim: usize,
}

/// `dim HH_i(A)_n` over the rectangle `0 <= i <= imax`, `0 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    /// Ground field.
    pub field: FieldTag,
    /// Largest homological index.
    pub max_i: usize,
    /// Largest internal degree.
    pub max_degree: usize,
    /// Fingerprint of the presentation.
    pub fingerprint: String,
    /// Entries ordered by `(i, n)`.
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    /// `dim HH_i(A)_n`, if inside the rectangle.
    pub fn get(&self, i: usize, n: usize) -> Option<usize> {
        if i > self.max_i || n > self.max_degree {
            return None;
        }
        Some(self.entries[i * (self.max_degree + 1) + n].dim)
    }

    /// The dimensions of `HH_i` for `n = 0..=N`.
    pub fn row(&self, i: usize) -> Vec<usize> {
        (0..=self.max_degree).filter_map(|n| self.get(i, n)).collect()
    }

    /// CSV with one row per internal degree and one column per homological index.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n");
        for i in 0..=self.max_i {
            s.push_str(&format!(",HH_{i}"));
        }
        s.push('\n');
        for n in 0..=self.max_degree {
            s.push_str(&n.to_string());
            for i in 0..=self.max_i {
                s.push_str(&format!(",{}", self.get(i, n).unwrap_or(0)));
            }
            s.push('\n');
        }
        s
    }
}

/// The table of `dim HH_i(A)_n` for `i <= imax`, `n <= N`. Layers are built in parallel.
pub fn hh_table<F: Field>(alg: &GradedAlgebra<F>, imax: usize, n_max: usize) -> Result<HomologyTable> {
    let cells = homology_rectangle(alg, DifferentialKind::Hochschild, imax, 0..=n_max)?;
    let by_key: BTreeMap<(usize, usize), usize> = cells.iter().map(|c| ((c.i, c.n), c.homology)).collect();
    let entries = by_key.into_iter().map(|((i, n), dim)| HomologyEntry { i, n, dim }).collect();
    Ok(HomologyTable {
        field: alg.field().tag(),
        max_i: imax,
        max_degree: n_max,
        fingerprint: alg.presentation().fingerprint(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::presentation_file::fixture;
    use crate::tensorgraded::Limits;

    #[test]
    fn degree_one_commutators_vanish() {
        let p = fixture("downup-quotient", Rationals).unwrap();
        let alg = GradedAlgebra::new(p, 6, Limits::default()).unwrap();
        let l = reduced_differential(&alg, 1, 1).unwrap();
        assert!(l.matrix.is_zero());
        assert_eq!(hh_dimension(&alg, 0, 1).unwrap(), 2);
        assert_eq!(hh_dimension(&alg, 0, 0).unwrap(), 1);
        assert!(chain_property_holds(&alg, 2, 5).unwrap());
    }

    #[test]
    fn layer_basis_matches_dimension_formula() {
        let p = fixture("atilde-4-5", Rationals).unwrap();
        let alg = GradedAlgebra::new(p, 10, Limits::default()).unwrap();
        let l = reduced_differential(&alg, 2, 9).unwrap();
        let basis = domain_basis(&alg, &l).unwrap();
        use crate::tensorgraded::Branch;
        let expected = alg.dim(5).unwrap() * alg.j(Branch::A, 4).unwrap().dim()
            + alg.dim(4).unwrap() * alg.j(Branch::B, 5).unwrap().dim();
        assert_eq!(basis.len(), expected);
        assert_eq!(l.matrix.nrows(), expected);
    }

    #[test]
    fn table_csv_shape() {
        let p = fixture("xa-yb-2-3", Rationals).unwrap();
        let alg = GradedAlgebra::new(p, 4, Limits::default()).unwrap();
        let t = hh_table(&alg, 2, 4).unwrap();
        assert_eq!(t.row(0)[0], 1);
        assert_eq!(t.to_csv().lines().count(), 6);
    }
}
