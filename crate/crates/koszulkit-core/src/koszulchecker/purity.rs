//! Kernel purity of `δ_i` through distributivity of named subspace tuples.
//!
//! For `i = 2` and `i = 3` the tuples of the two kernel propositions are tested; for
//! `i >= 4` the spaces `E_a, E_b, F_1, …, F_16` of the kernel theorem are built. With
//! `shift(R_s, q) = V^(n-s-q) ⊗ R_s ⊗ V^(q)` and `range(R_s, lo, hi) = Σ_{q=lo..hi} shift(R_s, q)`:
//!
//! | space | definition |
//! |---|---|
//! | `E_a`, `E_b` | `V^(n-n_s(i)) ⊗ J^s_{n_s(i)}` |
//! | `F_1`, `F_2` | `range(R_a, n_a(i), n-a)`, `range(R_b, n_a(i), n-b)` |
//! | `F_3`, `F_4` | `range(R_a, n_b(i), n-a)`, `range(R_b, n_b(i), n-b)` |
//! | `F_5`, `F_7` | `range(R_a or R_b, n_a(i-2)+1, n_a(i)-1)` (even `i`) |
//! | `F_6`, `F_8` | `range(R_b or R_a, n_b(i-2)+1, n_b(i)-1)` (even `i`) |
//! | `F_9`, `F_10` | `range(R_a, n_a(i-1), n-a)`, `range(R_b, n_a(i-1), n-b)` (even `i`) |
//! | `F_11`, `F_12` | `range(R_a, n_b(i-1), n-a)`, `range(R_b, n_b(i-1), n-b)` (even `i`) |
//! | `F_13`, `F_14` | `shift(R_a or R_b, n_a(i-1))` (odd `i`) |
//! | `F_15`, `F_16` | `shift(R_a or R_b, n_b(i-1))` (odd `i`) |
//!
//! For even `i` the tuple `(E_a, E_b, F_9+F_10, F_11+F_12)` is tested when
//! `n_a(i) < n < n_a(i)+a` and `(E_a, E_b, F_1+F_2+F_5+F_7, F_3+F_4+F_6+F_8)` when
//! `n >= n_a(i+2)`. For odd `i` the tuple `(E_a, E_b, F_1+F_2+F_13+F_14, F_3+F_4+F_15+F_16)`
//! is tested when `n >= n_a(i+2)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{Field, Subspace};
use crate::koszulchecker::conditions::{check_ec, check_ecc, check_evc, check_exclusive, ec_check};
use crate::koszulchecker::lattice::{distributive_detail, multidistributive_detail, LatticeCheck};
use crate::koszulchecker::report::{ConditionReport, DegreeDetail, Witness};
use crate::tensorgraded::{n_s, Branch, GradedAlgebra};
use crate::tensorgraded::word::checked_pow;

/// The named spaces of the kernel theorem in `V^(n)`.
#[derive(Debug, Clone)]
pub struct TheoremSpaces<F: Field> {
    /// Homological index.
    pub i: usize,
    /// Internal degree.
    pub n: usize,
    /// `V^(n-n_a(i)) ⊗ J^a_{n_a(i)}`.
    pub e_a: Subspace<F>,
    /// `V^(n-n_b(i)) ⊗ J^b_{n_b(i)}`.
    pub e_b: Subspace<F>,
    /// `F_k` keyed by `k`; only the spaces defined for the parity of `i` are present.
    pub f: BTreeMap<usize, Subspace<F>>,
}

impl<F: Field> TheoremSpaces<F> {
    /// `F_k`.
    pub fn space(&self, k: usize) -> &Subspace<F> {
        &self.f[&k]
    }

    fn spaces(&self, ks: &[usize]) -> Vec<&Subspace<F>> {
        ks.iter().map(|k| self.space(*k)).collect()
    }
}

fn e_space<F: Field>(alg: &GradedAlgebra<F>, br: Branch, i: usize, n: usize) -> Result<Subspace<F>> {
    let s = alg.presentation().degree(br);
    let m = n_s(s, i);
    let zero = || -> Result<Subspace<F>> {
        let amb = checked_pow(alg.dim_v(), n).ok_or_else(|| Error::Budget(format!("V^({n}) overflows")))?;
        Ok(Subspace::zero(amb))
    };
    if m > n {
        return zero();
    }
    let j = alg.j(br, m)?;
    if j.is_zero() {
        return zero();
    }
    alg.embed(j, m, n - m, 0)
}

/// Sum of the right-padding shifts `q ∈ [lo, hi]` of `R_s` in `V^(n)`.
fn pad<F: Field>(alg: &GradedAlgebra<F>, br: Branch, n: usize, lo: i64, hi: i64) -> Result<Subspace<F>> {
    let s = alg.presentation().degree(br);
    alg.shift_sum(alg.relations(br), s, n, lo..=hi)
}

/// Builds `E_a`, `E_b` and the `F` spaces of the kernel theorem for `i >= 4`.
pub fn build_theorem_spaces<F: Field>(alg: &GradedAlgebra<F>, i: usize, n: usize) -> Result<TheoremSpaces<F>> {
    let p = alg.presentation();
    let (a, b) = (p.a(), p.b());
    let na = |k: usize| n_s(a, k) as i64;
    let nb = |k: usize| n_s(b, k) as i64;
    let (ni, ai, bi) = (n as i64, a as i64, b as i64);
    let (ra, rb) = (Branch::A, Branch::B);
    let mut f = BTreeMap::new();
    f.insert(1, pad(alg, ra, n, na(i), ni - ai)?);
    f.insert(2, pad(alg, rb, n, na(i), ni - bi)?);
    f.insert(3, pad(alg, ra, n, nb(i), ni - ai)?);
    f.insert(4, pad(alg, rb, n, nb(i), ni - bi)?);
    if i % 2 == 0 {
        f.insert(5, pad(alg, ra, n, na(i - 2) + 1, na(i) - 1)?);
        f.insert(6, pad(alg, rb, n, nb(i - 2) + 1, nb(i) - 1)?);
        f.insert(7, pad(alg, rb, n, na(i - 2) + 1, na(i) - 1)?);
        f.insert(8, pad(alg, ra, n, nb(i - 2) + 1, nb(i) - 1)?);
        f.insert(9, pad(alg, ra, n, na(i - 1), ni - ai)?);
        f.insert(10, pad(alg, rb, n, na(i - 1), ni - bi)?);
        f.insert(11, pad(alg, ra, n, nb(i - 1), ni - ai)?);
        f.insert(12, pad(alg, rb, n, nb(i - 1), ni - bi)?);
    } else {
        f.insert(13, pad(alg, ra, n, na(i - 1), na(i - 1))?);
        f.insert(14, pad(alg, rb, n, na(i - 1), na(i - 1))?);
        f.insert(15, pad(alg, ra, n, nb(i - 1), nb(i - 1))?);
        f.insert(16, pad(alg, rb, n, nb(i - 1), nb(i - 1))?);
    }
    Ok(TheoremSpaces { i, n, e_a: e_space(alg, ra, i, n)?, e_b: e_space(alg, rb, i, n)?, f })
}

fn lattice_detail<F: Field>(
    alg: &GradedAlgebra<F>,
    n: usize,
    test: String,
    c: LatticeCheck<F::Elem>,
) -> (DegreeDetail, Option<Witness>) {
    let w = c.witness.as_ref().map(|v| Witness::new(alg.presentation(), n, format!("{test}: fails"), v));
    (DegreeDetail { n, test, holds: c.holds, lhs_dim: c.lhs_dim, rhs_dim: c.rhs_dim }, w)
}

/// Degrees `n <= n_max` tested for index `i` by the kernel theorem, with the tuple used.
pub fn theorem_degrees(a: usize, i: usize, n_max: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    let lo = n_s(a, i);
    let hi = n_s(a, i + 2);
    if i % 2 == 0 {
        out.extend((lo + 1..(lo + a).min(n_max + 1)).map(|n| (n, false)));
    }
    out.extend((hi..=n_max).map(|n| (n, true)));
    out
}

fn theorem_checks<F: Field>(alg: &GradedAlgebra<F>, i: usize, n_max: usize) -> Result<Vec<(DegreeDetail, Option<Witness>)>> {
    let f = alg.field();
    let mut checks = Vec::new();
    for (n, high) in theorem_degrees(alg.presentation().a(), i, n_max) {
        alg.limits().check_time()?;
        let e_a = e_space(alg, Branch::A, i, n)?;
        let e_b = e_space(alg, Branch::B, i, n)?;
        if e_a.is_zero() && e_b.is_zero() {
            let label = format!("i={i}: E_a = E_b = 0");
            checks.push((DegreeDetail { n, test: label, holds: true, lhs_dim: 0, rhs_dim: 0 }, None));
            continue;
        }
        let t = build_theorem_spaces(alg, i, n)?;
        let (fs, gs, label): (&[usize], &[usize], &str) = match (i % 2 == 0, high) {
            (true, false) => (&[9, 10], &[11, 12], "(E_a, E_b, F9+F10, F11+F12)"),
            (true, true) => (&[1, 2, 5, 7], &[3, 4, 6, 8], "(E_a, E_b, F1+F2+F5+F7, F3+F4+F6+F8)"),
            (false, _) => (&[1, 2, 13, 14], &[3, 4, 15, 16], "(E_a, E_b, F1+F2+F13+F14, F3+F4+F15+F16)"),
        };
        let c = multidistributive_detail(f, &t.e_a, &t.e_b, &t.spaces(fs), &t.spaces(gs))?;
        checks.push(lattice_detail(alg, n, format!("i={i}: {label} multidistributive"), c));
    }
    Ok(checks)
}

fn delta2_checks<F: Field>(alg: &GradedAlgebra<F>, n_max: usize) -> Result<Vec<(DegreeDetail, Option<Witness>)>> {
    let p = alg.presentation();
    let f = p.field();
    let (a, b) = (p.a() as i64, p.b() as i64);
    let mut checks = Vec::new();
    for m in 2..=(p.a() - 1).min(p.b() - p.a()) {
        if m + p.a() <= n_max {
            checks.push(ec_check(alg, Branch::A, m)?);
        }
    }
    for n in 2 * p.a()..=n_max {
        alg.limits().check_time()?;
        let ni = n as i64;
        let e = alg.embed(alg.relations(Branch::A), p.a(), n - p.a(), 0)?;
        let e2 = if n >= p.b() {
            alg.embed(alg.relations(Branch::B), p.b(), n - p.b(), 0)?
        } else {
            Subspace::zero(e.ambient())
        };
        let fa = pad(alg, Branch::A, n, a, ni - a)?;
        let g = pad(alg, Branch::A, n, 1, a - 1)?;
        let c = distributive_detail(f, &e, &[&fa, &g])?;
        checks.push(lattice_detail(alg, n, "i=2: (E, F, G) distributive".into(), c));
        let f1 = fa.sum(f, &pad(alg, Branch::B, n, a, ni - b)?)?;
        let f2 = pad(alg, Branch::A, n, b, ni - a)?.sum(f, &pad(alg, Branch::B, n, b, ni - b)?)?;
        let g2 = pad(alg, Branch::B, n, 1, b - 1)?;
        let c = multidistributive_detail(f, &e, &e2, &[&f1, &g], &[&f2, &g2])?;
        checks.push(lattice_detail(alg, n, "i=2: (E', E'', F'+G', F''+G'') multidistributive".into(), c));
    }
    Ok(checks)
}

fn delta3_checks<F: Field>(alg: &GradedAlgebra<F>, n_max: usize) -> Result<Vec<(DegreeDetail, Option<Witness>)>> {
    let p = alg.presentation();
    let fld = p.field();
    let (a, b) = (p.a(), p.b());
    let mut checks = Vec::new();
    for n in 2 * a + 1..=n_max {
        alg.limits().check_time()?;
        let amb = alg.limits().ambient(alg.dim_v(), n)?;
        let zero = || Subspace::zero(amb);
        let e = alg.embed(alg.j(Branch::A, a + 1)?, a + 1, n - a - 1, 0)?;
        let e2 = if n > b { alg.embed(alg.j(Branch::B, b + 1)?, b + 1, n - b - 1, 0)? } else { zero() };
        let f = alg.embed(alg.ideal(n - a - 1)?, n - a - 1, 0, a + 1)?;
        let f2 = if n > b { alg.embed(alg.ideal(n - b - 1)?, n - b - 1, 0, b + 1)? } else { zero() };
        let g = alg.embed(alg.relations(Branch::A), a, n - 2 * a, a)?;
        let g2 = if n >= a + b { alg.embed(alg.relations(Branch::A), a, n - a - b, b)? } else { zero() };
        let h = if n >= a + b { alg.embed(alg.relations(Branch::B), b, n - a - b, a)? } else { zero() };
        let h2 = if n >= 2 * b { alg.embed(alg.relations(Branch::B), b, n - 2 * b, b)? } else { zero() };
        let c = distributive_detail(fld, &e, &[&f, &g, &h])?;
        checks.push(lattice_detail(alg, n, "i=3: (E, F, G, H) distributive".into(), c));
        let fs = f.sum(fld, &g)?.sum(fld, &h)?;
        let gs = f2.sum(fld, &g2)?.sum(fld, &h2)?;
        let c = multidistributive_detail(fld, &e, &e2, &[&fs], &[&gs])?;
        checks.push(lattice_detail(alg, n, "i=3: (E, E', F+G+H, F'+G'+H') multidistributive".into(), c));
    }
    Ok(checks)
}

/// Whether exclusivity, e.c., e.v.c. and e.c.c. hold, in that order, with their reports.
///
/// A failing condition stops the chain; the remaining ones are reported as unmet.
pub fn hypothesis_chain<F: Field>(alg: &GradedAlgebra<F>) -> Result<(bool, Vec<ConditionReport>)> {
    let mut reports = vec![check_exclusive(alg)?];
    let names = ["e.c.", "e.v.c.", "e.c.c."];
    for k in 0..names.len() {
        if !reports.last().expect("nonempty").verdict.is_ok() {
            reports.extend(names[k..].iter().map(|n| ConditionReport::unmet(n)));
            return Ok((false, reports));
        }
        reports.push(match k {
            0 => check_ec(alg)?,
            1 => check_evc(alg)?,
            _ => check_ecc(alg)?,
        });
    }
    let ok = reports.last().expect("nonempty").verdict.is_ok();
    Ok((ok, reports))
}

/// Purity of `ker δ_i` up to internal degree `n_max`, assuming the hypothesis chain holds.
pub fn purity_checks<F: Field>(alg: &GradedAlgebra<F>, i: usize, n_max: usize) -> Result<ConditionReport> {
    let name = format!("kernel purity i={i}");
    let checks = match i {
        0 | 1 => Vec::new(),
        2 => delta2_checks(alg, n_max)?,
        3 => delta3_checks(alg, n_max)?,
        _ => theorem_checks(alg, i, n_max)?,
    };
    Ok(ConditionReport::from_checks(&name, true, checks))
}

/// Kernel purity of `δ_i` up to internal degree `n_max`.
///
/// Reports `hypotheses-unmet` unless exclusivity, e.c., e.v.c. and e.c.c. all hold.
pub fn kernel_purity_report<F: Field>(alg: &GradedAlgebra<F>, i: usize, n_max: usize) -> Result<ConditionReport> {
    let (ok, _) = hypothesis_chain(alg)?;
    if !ok {
        return Ok(ConditionReport::unmet(&format!("kernel purity i={i}")));
    }
    purity_checks(alg, i, n_max)
}
