//! Exclusivity and the extra conditions on the relation spaces.
//!
//! Shifted copies are written with their right padding: `shift(R_s, n, q)` is
//! `V^(n-s-q) ⊗ R_s ⊗ V^(q)` inside `V^(n)`.
//!
//! - exclusive: `(Σ_{i+j+a=b} V^(i) ⊗ R_a ⊗ V^(j)) ∩ R_b = 0`.
//! - e.c. at `m` for branch `s`: `(V^(m) ⊗ R_s) ∩ Σ_{q=1..m} shift(R_s, m+s, q)` equals
//!   `V^(m-1) ⊗ J^s_{s+1}`. The e.c. are the cases `m = a-1` and `m = b-1`.
//! - e.v.c.: `(V^(b-1) ⊗ R_a ⊗ V) ∩ (V^(b) ⊗ R_a) ∩ (R_b ⊗ V^(a)) = 0` and
//!   `(V^(a-1) ⊗ R_b ⊗ V) ∩ (V^(a) ⊗ R_b) ∩ (R_a ⊗ V^(b)) = 0`.
//! - e.c.c.: `(V^(b-1) ⊗ R_a) ∩ Σ_{q=1..a-1} shift(R_b, a+b-1, q) = 0` and
//!   `(V^(a-1) ⊗ R_b) ∩ Σ_{q=1..b-1} shift(R_a, a+b-1, q) = 0`.

use crate::error::{Error, Result};
use crate::exactla::{Field, Subspace};
use crate::koszulchecker::report::{ConditionReport, DegreeDetail, Witness};
use crate::tensorgraded::{Branch, GradedAlgebra, Presentation};

/// Equality test of two subspaces of `V^(n)`, with a witness from the larger difference.
pub(crate) fn equality<F: Field>(
    p: &Presentation<F>,
    n: usize,
    test: &str,
    lhs: &Subspace<F>,
    rhs: &Subspace<F>,
) -> (DegreeDetail, Option<Witness>) {
    let f = p.field();
    let witness = match lhs.first_outside(f, rhs) {
        Some(v) => Some(Witness::new(p, n, format!("{test}: in the left side, not in the right side"), &v)),
        None => rhs
            .first_outside(f, lhs)
            .map(|v| Witness::new(p, n, format!("{test}: in the right side, not in the left side"), &v)),
    };
    let detail = DegreeDetail { n, test: test.into(), holds: witness.is_none(), lhs_dim: lhs.dim(), rhs_dim: rhs.dim() };
    (detail, witness)
}

/// Vanishing test of a subspace of `V^(n)`.
pub(crate) fn vanishing<F: Field>(p: &Presentation<F>, n: usize, test: &str, s: &Subspace<F>) -> (DegreeDetail, Option<Witness>) {
    let witness = s.rows().first().map(|v| Witness::new(p, n, format!("{test}: nonzero vector of the intersection"), v));
    let detail = DegreeDetail { n, test: test.into(), holds: s.is_zero(), lhs_dim: s.dim(), rhs_dim: 0 };
    (detail, witness)
}

fn range(lo: usize, hi: usize) -> impl Iterator<Item = i64> {
    (lo as i64)..=(hi as i64)
}

/// `(Σ_{i+j+a=b} V^(i) ⊗ R_a ⊗ V^(j)) ∩ R_b`.
pub fn exclusive_meet<F: Field>(alg: &GradedAlgebra<F>) -> Result<Subspace<F>> {
    let p = alg.presentation();
    let (a, b) = (p.a(), p.b());
    let shifts = alg.shift_sum(p.relations(Branch::A), a, b, range(0, b - a))?;
    shifts.intersect(p.field(), p.relations(Branch::B))
}

/// Exclusivity of `R_a` and `R_b`.
pub fn check_exclusive<F: Field>(alg: &GradedAlgebra<F>) -> Result<ConditionReport> {
    let meet = exclusive_meet(alg)?;
    let check = vanishing(alg.presentation(), alg.presentation().b(), "ideal(R_a) ∩ R_b", &meet);
    Ok(ConditionReport::from_checks("exclusive", false, vec![check]))
}

fn require_exclusive<F: Field>(alg: &GradedAlgebra<F>, what: &str) -> Result<()> {
    if exclusive_meet(alg)?.is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} requires R_a and R_b to be exclusive")))
    }
}

/// Both sides of the e.c. at `m` for a branch, in `V^(m+s)`.
pub fn ec_sides<F: Field>(alg: &GradedAlgebra<F>, br: Branch, m: usize) -> Result<(Subspace<F>, Subspace<F>)> {
    let p = alg.presentation();
    let s = p.degree(br);
    let r = p.relations(br);
    let n = m + s;
    let head = alg.embed(r, s, m, 0)?;
    let shifts = alg.shift_sum(r, s, n, range(1, m))?;
    let lhs = head.intersect(p.field(), &shifts)?;
    let rhs = if m == 0 {
        Subspace::zero(lhs.ambient())
    } else {
        alg.embed(alg.j(br, s + 1)?, s + 1, m - 1, 0)?
    };
    Ok((lhs, rhs))
}

/// The e.c. equality at `m` for a branch as a single degree check.
pub(crate) fn ec_check<F: Field>(alg: &GradedAlgebra<F>, br: Branch, m: usize) -> Result<(DegreeDetail, Option<Witness>)> {
    let (lhs, rhs) = ec_sides(alg, br, m)?;
    let s = alg.presentation().degree(br);
    let label = format!("(V^({m})⊗R_{s}) ∩ Σ shifts = V^({})⊗J^{s}_{}", m.saturating_sub(1), s + 1);
    Ok(equality(alg.presentation(), m + s, &label, &lhs, &rhs))
}

/// The extra conditions at `s = a-1` and `l = b-1`.
pub fn check_ec<F: Field>(alg: &GradedAlgebra<F>) -> Result<ConditionReport> {
    require_exclusive(alg, "e.c.")?;
    let p = alg.presentation();
    let checks = vec![ec_check(alg, Branch::A, p.a() - 1)?, ec_check(alg, Branch::B, p.b() - 1)?];
    Ok(ConditionReport::from_checks("e.c.", false, checks))
}

/// The extra vanishing conditions.
pub fn check_evc<F: Field>(alg: &GradedAlgebra<F>) -> Result<ConditionReport> {
    require_exclusive(alg, "e.v.c.")?;
    let p = alg.presentation();
    let f = p.field();
    let (a, b) = (p.a(), p.b());
    let (ra, rb) = (p.relations(Branch::A), p.relations(Branch::B));
    let n = a + b;
    let first = alg
        .embed(ra, a, b - 1, 1)?
        .intersect(f, &alg.embed(ra, a, b, 0)?)?
        .intersect(f, &alg.embed(rb, b, 0, a)?)?;
    let second = alg
        .embed(rb, b, a - 1, 1)?
        .intersect(f, &alg.embed(rb, b, a, 0)?)?
        .intersect(f, &alg.embed(ra, a, 0, b)?)?;
    let checks = vec![
        vanishing(p, n, "(V^(b-1)⊗R_a⊗V) ∩ (V^(b)⊗R_a) ∩ (R_b⊗V^(a))", &first),
        vanishing(p, n, "(V^(a-1)⊗R_b⊗V) ∩ (V^(a)⊗R_b) ∩ (R_a⊗V^(b))", &second),
    ];
    Ok(ConditionReport::from_checks("e.v.c.", false, checks))
}

/// The extra crossed conditions.
pub fn check_ecc<F: Field>(alg: &GradedAlgebra<F>) -> Result<ConditionReport> {
    require_exclusive(alg, "e.c.c.")?;
    let p = alg.presentation();
    let f = p.field();
    let (a, b) = (p.a(), p.b());
    let (ra, rb) = (p.relations(Branch::A), p.relations(Branch::B));
    let n = a + b - 1;
    let first = alg.embed(ra, a, b - 1, 0)?.intersect(f, &alg.shift_sum(rb, b, n, range(1, a - 1))?)?;
    let second = alg.embed(rb, b, a - 1, 0)?.intersect(f, &alg.shift_sum(ra, a, n, range(1, b - 1))?)?;
    let checks = vec![
        vanishing(p, n, "(V^(b-1)⊗R_a) ∩ Σ_{q=1..a-1} shift(R_b, q)", &first),
        vanishing(p, n, "(V^(a-1)⊗R_b) ∩ Σ_{q=1..b-1} shift(R_a, q)", &second),
    ];
    Ok(ConditionReport::from_checks("e.c.c.", false, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::koszulchecker::report::Verdict;
    use crate::presentation_file::fixture;
    use crate::tensorgraded::Limits;

    fn alg(name: &str, reverse: bool) -> GradedAlgebra<Rationals> {
        let p = fixture(name, Rationals).unwrap();
        let p = if reverse { p.reverse() } else { p };
        let top = 2 * p.b() + 1;
        GradedAlgebra::new(p, top, Limits::default()).unwrap()
    }

    #[test]
    fn evc_asymmetry() {
        assert_eq!(check_evc(&alg("evc-asymmetry", false)).unwrap().verdict, Verdict::Holds);
        let rev = alg("evc-asymmetry", true);
        let r = check_evc(&rev).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let w = r.witness.unwrap();
        let v = w.vector(rev.presentation()).unwrap();
        assert!(!v.is_zero());
    }

    #[test]
    fn ecc_asymmetry() {
        assert_eq!(check_ecc(&alg("ecc-asymmetry", false)).unwrap().verdict, Verdict::Holds);
        assert_eq!(check_ecc(&alg("ecc-asymmetry", true)).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn downup_ec_dimensions() {
        let r = check_ec(&alg("downup-quotient", false)).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.details[0].lhs_dim, 2);
        assert_eq!(r.details[1].lhs_dim, 8);
    }

    #[test]
    fn monomial_conditions() {
        let x = alg("xa-yb-2-3", false);
        for r in [check_exclusive(&x), check_ec(&x), check_evc(&x), check_ecc(&x)] {
            assert!(r.unwrap().verdict.is_ok());
        }
    }
}
