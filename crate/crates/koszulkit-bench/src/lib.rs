//! Shared inputs for the criterion benchmarks.

use koszulkit_core::presentation_file::fixture;
use koszulkit_core::{GradedAlgebra, Limits, PrimeField, Rationals};

/// The prime used for the larger benchmarks.
pub const PRIME: u64 = 32003;

/// A shipped fixture over ℚ with its degree cache filled up to `n`.
pub fn rational_algebra(name: &str, n: usize) -> GradedAlgebra<Rationals> {
    let p = fixture(name, Rationals).expect("shipped fixture");
    GradedAlgebra::new(p, n, Limits::default()).expect("within budget")
}

/// A shipped fixture over GF(32003) with its degree cache filled up to `n`.
pub fn prime_algebra(name: &str, n: usize) -> GradedAlgebra<PrimeField> {
    let f = PrimeField::new(PRIME).expect("prime");
    let p = fixture(name, f).expect("shipped fixture");
    GradedAlgebra::new(p, n, Limits::default()).expect("within budget")
}
