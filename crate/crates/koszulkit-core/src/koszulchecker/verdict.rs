//! The bounded Koszulity verdict.
//!
//! The exactness strategy builds the Koszul complex in every internal degree `1..=N` and
//! checks `ker δ_i = im δ_{i+1}` for `i <= imax`. The conditions strategy runs the
//! hypothesis chain and the kernel purity checks for `2 <= i <= imax`. Both are stamped
//! with the bounds they cover.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::koszulchecker::complex::{expand_element, homology_rectangle, homology_witness, DifferentialKind, HomologyCell};
use crate::koszulchecker::conditions::exclusive_meet;
use crate::koszulchecker::purity::{hypothesis_chain, purity_checks};
use crate::koszulchecker::report::{ConditionReport, Verdict, Witness};
use crate::tensorgraded::{format_word, GradedAlgebra};

/// How the verdict is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Exactness of the Koszul complex.
    Exactness,
    /// Extra conditions and kernel purity.
    Conditions,
    /// Both; the overall verdict is taken from exactness and agreement is recorded.
    Both,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exactness" => Ok(Strategy::Exactness),
            "conditions" => Ok(Strategy::Conditions),
            "both" => Ok(Strategy::Both),
            other => Err(Error::Parse(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Exactness of one node `K_{i,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactnessCell {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// `dim ker δ_i - rank δ_{i+1}` in degree `n`.
    pub homology: usize,
    /// Whether the homology vanishes.
    pub exact: bool,
}

/// One term `coeff · a_word ⊗ tensor_word` of a complex element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexTerm {
    /// Exact coefficient.
    pub coeff: String,
    /// Basis word of `A`.
    pub a_word: String,
    /// Word of the `J` factor.
    pub tensor_word: String,
}

/// A cycle of the Koszul complex that is not a boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexWitness {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// The cycle in `A ⊗ V^(L)` coordinates.
    pub terms: Vec<ComplexTerm>,
}

/// Overall outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Overall {
    /// Every tested cell or condition passed.
    KoszulUpToBound,
    /// A failing cell or condition.
    NotKoszul {
        /// Homological index of the failure, when it is attached to one.
        i: Option<usize>,
        /// Internal degree of the failure.
        n: Option<usize>,
        /// What failed.
        reason: String,
    },
    /// `R_a` and `R_b` are not exclusive.
    PreconditionFailed {
        /// Explanation.
        reason: String,
    },
}

impl Overall {
    /// Whether the outcome is `koszul-up-to-bound`.
    pub fn is_koszul(&self) -> bool {
        matches!(self, Overall::KoszulUpToBound)
    }
}

/// A bounded Koszulity verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulVerdict {
    /// Largest internal degree tested.
    pub degree_bound: usize,
    /// Largest homological index tested.
    pub homological_bound: usize,
    /// Strategy used.
    pub strategy: Strategy,
    /// Exactness cells `(i, n)` for `i <= imax`, `1 <= n <= N` (exactness strategies only).
    pub cells: Vec<ExactnessCell>,
    /// A cycle that is not a boundary at the first failing cell.
    pub complex_witness: Option<ComplexWitness>,
    /// Condition reports in check order (conditions strategies only).
    pub conditions: Vec<ConditionReport>,
    /// Outcome of the exactness strategy, when run.
    pub exactness_overall: Option<Overall>,
    /// Outcome of the conditions strategy, when run.
    pub conditions_overall: Option<Overall>,
    /// Whether both strategies reached the same Koszul or not-Koszul outcome (`both` only).
    pub strategies_agree: Option<bool>,
    /// The verdict.
    pub overall: Overall,
}

fn exactness<F: Field>(
    alg: &GradedAlgebra<F>,
    n_max: usize,
    imax: usize,
) -> Result<(Vec<ExactnessCell>, Option<ComplexWitness>, Overall)> {
    let table: Vec<HomologyCell> = homology_rectangle(alg, DifferentialKind::Koszul, imax, 1..=n_max)?;
    let mut cells: Vec<ExactnessCell> = table
        .iter()
        .map(|c| ExactnessCell { i: c.i, n: c.n, homology: c.homology, exact: c.homology == 0 })
        .collect();
    cells.sort_by_key(|c| (c.i, c.n));
    let failing = cells.iter().filter(|c| !c.exact).min_by_key(|c| (c.n, c.i)).copied();
    let Some(cell) = failing else {
        return Ok((cells, None, Overall::KoszulUpToBound));
    };
    let p = alg.presentation();
    let witness = homology_witness(alg, DifferentialKind::Koszul, cell.i, cell.n)?.map(|(layer, v)| {
        let terms = expand_element(alg, &layer, &v)
            .into_iter()
            .map(|(c, a, w)| ComplexTerm {
                coeff: alg.field().format(&c),
                a_word: format_word(&a, p.generators()),
                tensor_word: format_word(&w, p.generators()),
            })
            .collect();
        ComplexWitness { i: cell.i, n: cell.n, terms }
    });
    let overall = Overall::NotKoszul {
        i: Some(cell.i),
        n: Some(cell.n),
        reason: format!("the Koszul complex has homology of dimension {} at (i, n) = ({}, {})", cell.homology, cell.i, cell.n),
    };
    Ok((cells, witness, overall))
}

fn conditions<F: Field>(alg: &GradedAlgebra<F>, n_max: usize, imax: usize) -> Result<(Vec<ConditionReport>, Overall)> {
    let (ok, mut reports) = hypothesis_chain(alg)?;
    if !ok {
        let failed = reports.iter().find(|r| r.verdict == Verdict::Fails).expect("a failing condition");
        let overall = Overall::NotKoszul {
            i: None,
            n: failed.details.iter().find(|d| !d.holds).map(|d| d.n),
            reason: format!("{} fails", failed.condition),
        };
        for i in 2..=imax {
            reports.push(ConditionReport::unmet(&format!("kernel purity i={i}")));
        }
        return Ok((reports, overall));
    }
    let mut overall = Overall::KoszulUpToBound;
    for i in 2..=imax {
        let r = purity_checks(alg, i, n_max)?;
        if r.verdict == Verdict::Fails && overall.is_koszul() {
            let n = r.details.iter().find(|d| !d.holds).map(|d| d.n);
            overall = Overall::NotKoszul { i: Some(i), n, reason: format!("{} fails", r.condition) };
        }
        reports.push(r);
    }
    Ok((reports, overall))
}

/// Decides Koszulity up to internal degree `n_max` and homological index `imax`.
///
/// The algebra cache must reach degree `n_max`.
pub fn koszul_verdict<F: Field>(alg: &GradedAlgebra<F>, n_max: usize, imax: usize, strategy: Strategy) -> Result<KoszulVerdict> {
    if alg.max_degree() < n_max {
        return Err(Error::Budget(format!(
            "the algebra cache reaches degree {}, below the bound {n_max}",
            alg.max_degree()
        )));
    }
    let mut verdict = KoszulVerdict {
        degree_bound: n_max,
        homological_bound: imax,
        strategy,
        cells: Vec::new(),
        complex_witness: None,
        conditions: Vec::new(),
        exactness_overall: None,
        conditions_overall: None,
        strategies_agree: None,
        overall: Overall::KoszulUpToBound,
    };
    let meet = exclusive_meet(alg)?;
    if !meet.is_zero() {
        let w = Witness::new(alg.presentation(), alg.presentation().b(), "ideal(R_a) ∩ R_b", &meet.rows()[0]);
        let terms: Vec<String> = w.terms.iter().map(|t| format!("{}*{}", t.coeff, t.word)).collect();
        verdict.overall = Overall::PreconditionFailed {
            reason: format!("R_a and R_b are not exclusive; common vector {}", terms.join(" + ")),
        };
        return Ok(verdict);
    }
    if matches!(strategy, Strategy::Exactness | Strategy::Both) {
        let (cells, witness, overall) = exactness(alg, n_max, imax)?;
        verdict.cells = cells;
        verdict.complex_witness = witness;
        verdict.exactness_overall = Some(overall);
    }
    if matches!(strategy, Strategy::Conditions | Strategy::Both) {
        let (reports, overall) = conditions(alg, n_max, imax)?;
        verdict.conditions = reports;
        verdict.conditions_overall = Some(overall);
    }
    verdict.overall = match (&verdict.exactness_overall, &verdict.conditions_overall) {
        (Some(e), Some(c)) => {
            verdict.strategies_agree = Some(e.is_koszul() == c.is_koszul());
            e.clone()
        }
        (Some(e), None) => e.clone(),
        (None, Some(c)) => c.clone(),
        (None, None) => unreachable!("at least one strategy runs"),
    };
    Ok(verdict)
}
