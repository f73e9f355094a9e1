//! Exact linear algebra over the rationals or a prime field.
//!
//! Subspaces are stored in canonical reduced row echelon form with leftmost pivots, so
//! equality of subspaces is equality of their stored bases. Every value is immutable once
//! built and every operation is a pure function.

pub mod field;
pub mod sparse;
pub mod subspace;

pub use field::{format_rational, parse_rational, validate_prime, Field, FieldTag, PrimeField, Rationals};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
pub use subspace::{is_distributive, kernel, left_kernel, rank, rank_of_rows, rref, Echelon, Subspace};
