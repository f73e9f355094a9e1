//! Report types shared by the condition checks and the Koszul verdict.

use serde::Serialize;

use crate::error::Result;
use crate::exactla::{parse_rational, Field, SparseVec};
use crate::tensorgraded::{parse_word, word_index, Presentation};

/// Outcome of a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The condition holds; it concerns finitely many degrees.
    Holds,
    /// The condition fails; a witness is attached.
    Fails,
    /// The condition holds in every tested degree up to the stated bound.
    HoldsUpToBound,
    /// An earlier condition in the hypothesis chain failed, so this one was not tested.
    HypothesesUnmet,
}

impl Verdict {
    /// Whether the verdict is `holds` or `holds-up-to-bound`.
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsUpToBound)
    }
}

/// One tested (in)equality in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDetail {
    /// Internal degree (length of the words of the ambient `V^(n)`).
    pub n: usize,
    /// Short label of the test.
    pub test: String,
    /// Whether the test passed.
    pub holds: bool,
    /// Dimension of the left side.
    pub lhs_dim: usize,
    /// Dimension of the right side.
    pub rhs_dim: usize,
}

/// One term of a witness vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTerm {
    /// Exact coefficient.
    pub coeff: String,
    /// Word in generator names.
    pub word: String,
}

/// A vector of `V^(n)` exhibiting a failure, with the test it violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Word length of the ambient space.
    pub n: usize,
    /// What the vector shows.
    pub note: String,
    /// The vector in the word basis.
    pub terms: Vec<WitnessTerm>,
}

impl Witness {
    /// Renders a vector of `V^(n)`.
    pub fn new<F: Field>(p: &Presentation<F>, n: usize, note: impl Into<String>, v: &SparseVec<F::Elem>) -> Self {
        let terms = p.terms(n, v).into_iter().map(|(coeff, word)| WitnessTerm { coeff, word }).collect();
        Witness { n, note: note.into(), terms }
    }

    /// Parses the witness back into a vector of `V^(n)` for membership tests.
    pub fn vector<F: Field>(&self, p: &Presentation<F>) -> Result<SparseVec<F::Elem>> {
        let f = p.field();
        let mut pairs = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f.from_rational(&parse_rational(&t.coeff)?)?;
            let w = parse_word(&t.word, p.generators())?;
            pairs.push((word_index(&w, p.dim_v()), c));
        }
        Ok(SparseVec::from_pairs(f, pairs))
    }
}

/// Verdict, per-degree details and witness of one condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// Condition name.
    pub condition: String,
    /// Outcome.
    pub verdict: Verdict,
    /// Every tested (in)equality.
    pub details: Vec<DegreeDetail>,
    /// Present exactly when the verdict is `fails`.
    pub witness: Option<Witness>,
}

impl ConditionReport {
    /// A report for a condition that was not tested.
    pub fn unmet(condition: &str) -> Self {
        ConditionReport { condition: condition.into(), verdict: Verdict::HypothesesUnmet, details: Vec::new(), witness: None }
    }

    pub(crate) fn from_checks(condition: &str, bounded: bool, checks: Vec<(DegreeDetail, Option<Witness>)>) -> Self {
        let mut details = Vec::with_capacity(checks.len());
        let mut witness = None;
        for (d, w) in checks {
            if !d.holds && witness.is_none() {
                witness = w;
            }
            details.push(d);
        }
        let verdict = if details.iter().all(|d| d.holds) {
            if bounded {
                Verdict::HoldsUpToBound
            } else {
                Verdict::Holds
            }
        } else {
            Verdict::Fails
        };
        ConditionReport { condition: condition.into(), verdict, details, witness }
    }
}
