//! Words, graded tensor components `V^(n)`, presentations, the ideal components `I_n`,
//! quotient bases of `A_n`, the intersection spaces `J_n^s`, reversal and duality.

pub mod algebra;
pub mod presentation;
pub mod word;

pub use algebra::{embed, GradedAlgebra, Limits};
pub use presentation::{Branch, Presentation, Relation};
pub use word::{format_word, parse_word, word_at, word_index, Letter, Word};

/// `n_s(2l) = l s` and `n_s(2l+1) = l s + 1`: the internal degree of the `i`-th Koszul term.
pub fn n_s(s: usize, i: usize) -> usize {
    (i / 2) * s + i % 2
}
