//! Distributivity and multidistributivity of subspace tuples.
//!
//! A tuple `(E, F_1, …, F_t)` is distributive when `E ∩ (ΣF_k) = Σ(E ∩ F_k)`. A 4-tuple
//! `(E, E', F_1+…+F_t, G_1+…+G_t')` is multidistributive when `E ∩ E' = 0` and
//! `(E ⊕ E') ∩ (ΣF_k + ΣG_l) = Σ(E ∩ F_k) ⊕ Σ(E' ∩ G_l)`. Each listed space is one
//! summand; a summand that is itself a sum of shifts is not split further.

use crate::error::{Error, Result};
use crate::exactla::{Field, SparseVec, Subspace};

/// Outcome of a lattice identity with the dimensions of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCheck<E> {
    /// Whether the identity holds.
    pub holds: bool,
    /// Dimension of the left side.
    pub lhs_dim: usize,
    /// Dimension of the right side.
    pub rhs_dim: usize,
    /// A vector of the left side outside the right side, or of `E ∩ E'` when nonzero.
    pub witness: Option<SparseVec<E>>,
}

fn same_ambient<F: Field>(e: &Subspace<F>, others: &[&Subspace<F>]) -> Result<()> {
    for o in others {
        if o.ambient() != e.ambient() {
            return Err(Error::DimensionMismatch { left: e.ambient(), right: o.ambient() });
        }
    }
    Ok(())
}

/// `E ∩ (ΣF_k)` against `Σ(E ∩ F_k)`.
pub fn distributive_detail<F: Field>(field: &F, e: &Subspace<F>, fs: &[&Subspace<F>]) -> Result<LatticeCheck<F::Elem>> {
    same_ambient(e, fs)?;
    let amb = e.ambient();
    if e.is_zero() {
        return Ok(LatticeCheck { holds: true, lhs_dim: 0, rhs_dim: 0, witness: None });
    }
    let total = Subspace::sum_all(field, amb, fs.iter().copied())?;
    let lhs = e.intersect(field, &total)?;
    let parts = fs.iter().map(|f| e.intersect(field, f)).collect::<Result<Vec<_>>>()?;
    let rhs = Subspace::sum_all(field, amb, parts.iter())?;
    let witness = lhs.first_outside(field, &rhs);
    Ok(LatticeCheck { holds: witness.is_none(), lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), witness })
}

/// Whether `(E, F, G)` is distributive: `E ∩ (F + G) = (E ∩ F) + (E ∩ G)`.
pub fn check_triple_distributive<F: Field>(field: &F, e: &Subspace<F>, f: &Subspace<F>, g: &Subspace<F>) -> Result<bool> {
    Ok(distributive_detail(field, e, &[f, g])?.holds)
}

/// `(E ⊕ E') ∩ (ΣF + ΣG)` against `Σ(E ∩ F_k) ⊕ Σ(E' ∩ G_l)`, after checking `E ∩ E' = 0`.
pub fn multidistributive_detail<F: Field>(
    field: &F,
    e: &Subspace<F>,
    e2: &Subspace<F>,
    fs: &[&Subspace<F>],
    gs: &[&Subspace<F>],
) -> Result<LatticeCheck<F::Elem>> {
    same_ambient(e, &[e2])?;
    same_ambient(e, fs)?;
    same_ambient(e, gs)?;
    let amb = e.ambient();
    if e.is_zero() && e2.is_zero() {
        return Ok(LatticeCheck { holds: true, lhs_dim: 0, rhs_dim: 0, witness: None });
    }
    let meet = e.intersect(field, e2)?;
    if !meet.is_zero() {
        return Ok(LatticeCheck {
            holds: false,
            lhs_dim: meet.dim(),
            rhs_dim: 0,
            witness: meet.rows().first().cloned(),
        });
    }
    let direct = e.sum(field, e2)?;
    let total = Subspace::sum_all(field, amb, fs.iter().chain(gs.iter()).copied())?;
    let lhs = direct.intersect(field, &total)?;
    let mut parts = Vec::with_capacity(fs.len() + gs.len());
    for f in fs {
        parts.push(e.intersect(field, f)?);
    }
    for g in gs {
        parts.push(e2.intersect(field, g)?);
    }
    let rhs = Subspace::sum_all(field, amb, parts.iter())?;
    let witness = lhs.first_outside(field, &rhs);
    Ok(LatticeCheck { holds: witness.is_none(), lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), witness })
}

/// Whether `(E, E', ΣFs, ΣGs)` is multidistributive.
pub fn check_multidistributive<F: Field>(
    field: &F,
    e: &Subspace<F>,
    e2: &Subspace<F>,
    fs: &[&Subspace<F>],
    gs: &[&Subspace<F>],
) -> Result<bool> {
    Ok(multidistributive_detail(field, e, e2, fs, gs)?.holds)
}
