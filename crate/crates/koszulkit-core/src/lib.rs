//! Exact computations for (a,b)-homogeneous algebras.
//!
//! An (a,b)-homogeneous algebra is a quotient `T(V)/I(R_a ⊕ R_b)` of a tensor algebra by
//! relations in two degrees `2 <= a < b`. This crate provides:
//!
//! - [`exactla`]: exact sparse linear algebra and subspace lattices over ℚ or GF(p).
//! - [`tensorgraded`]: words, ideal components `I_n`, quotient bases of `A_n`, the spaces
//!   `J_n^s`, opposite and dual presentations.
//! - [`koszulchecker`]: the extra conditions, distributivity checks and the Koszul
//!   complex exactness test.
//! - [`hochschild`]: the reduced bimodule Koszul complex and Hochschild homology tables.
//! - [`necklace`]: cyclic word counting routines and their filtered variants.
//! - [`presentation_file`]: the JSON presentation format and the shipped fixtures.

pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod koszulchecker;
pub mod necklace;
pub mod presentation_file;
pub mod tensorgraded;

pub use error::{Error, Result};
pub use exactla::{Field, FieldTag, PrimeField, Rationals, SparseMatrix, SparseVec, Subspace};
pub use tensorgraded::{Branch, GradedAlgebra, Limits, Presentation};
