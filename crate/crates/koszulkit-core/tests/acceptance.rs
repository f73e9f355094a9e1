//! Acceptance run: one PASS or FAIL line per criterion, exact integer comparisons.
//!
//! Exits with status 1 when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use koszulkit_core::hochschild::{hh_table, HomologyTable};
use koszulkit_core::koszulchecker::{check_ec, check_ecc, check_evc, koszul_verdict, KoszulVerdict, Overall, Strategy, Verdict};
use koszulkit_core::necklace;
use koszulkit_core::presentation_file::{fixture, FIXTURE_NAMES};
use koszulkit_core::{Field, GradedAlgebra, Limits, Presentation, PrimeField, Rationals};

/// Outcome of one criterion: the failures found, empty when it passes.
type Outcome = Vec<String>;

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn algebra<F: Field>(p: Presentation<F>, n: usize) -> GradedAlgebra<F> {
    GradedAlgebra::new(p, n, Limits::default()).unwrap()
}

fn describe(o: &Overall) -> String {
    match o {
        Overall::KoszulUpToBound => "koszul-up-to-bound".into(),
        Overall::NotKoszul { i, n, .. } => format!("not-koszul at (i, n) = ({}, {})", show(i), show(n)),
        Overall::PreconditionFailed { .. } => "precondition-failed".into(),
    }
}

fn show(v: &Option<usize>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn verdict<F: Field>(name: &str, field: F, n: usize, imax: usize) -> KoszulVerdict {
    let alg = algebra(fixture(name, field).unwrap(), n);
    koszul_verdict(&alg, n, imax, Strategy::Exactness).unwrap()
}

/// Compares `got` with `want` position by position, reporting every mismatch.
fn compare(label: &str, ns: impl IntoIterator<Item = usize>, want: &[usize], got: impl Fn(usize) -> usize) -> Outcome {
    let ns: Vec<usize> = ns.into_iter().collect();
    let got: Vec<usize> = ns.iter().map(|&n| got(n)).collect();
    if got == want {
        Vec::new()
    } else {
        vec![format!("{label} at n = {}..={}: expected {want:?}, got {got:?}", ns[0], ns[ns.len() - 1])]
    }
}

fn criterion_1() -> Outcome {
    let mut out = Vec::new();
    let cases = [
        ("atilde-4-5", 14, 6, true),
        ("atilde-6-7", 14, 6, true),
        ("downup-quotient", 14, 7, true),
        ("xa-yb-2-3", 12, 6, false),
    ];
    for (name, n, imax, koszul) in cases {
        let v = verdict(name, gf(), n, imax);
        let ok = if koszul {
            v.overall.is_koszul()
        } else {
            matches!(v.overall, Overall::NotKoszul { i: Some(_), n: Some(_), .. }) && v.complex_witness.is_some()
        };
        if !ok {
            let want = if koszul { "koszul-up-to-bound" } else { "not-koszul with a witness cell" };
            out.push(format!("{name} (N={n}, imax={imax}): expected {want}, got {}", describe(&v.overall)));
        }
        let spot = verdict(name, Rationals, 10, imax);
        let reference = verdict(name, gf(), 10, imax);
        if spot.cells != reference.cells {
            out.push(format!("{name}: Q and GF(32003) cells differ at N=10"));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Vec::new();
    let pair = |name: &str| {
        let p = fixture(name, Rationals).unwrap();
        let n = p.a() + p.b();
        let op = p.reverse();
        (algebra(p, n), algebra(op, n))
    };
    let (a, a_op) = pair("evc-asymmetry");
    let (x, x_op) = (check_evc(&a).unwrap().verdict, check_evc(&a_op).unwrap().verdict);
    if (x, x_op) != (Verdict::Holds, Verdict::Fails) {
        out.push(format!("e.v.c. on <x^3, xy^3> and its opposite: expected (holds, fails), got ({x:?}, {x_op:?})"));
    }
    let (b, b_op) = pair("ecc-asymmetry");
    let (y, y_op) = (check_ecc(&b).unwrap().verdict, check_ecc(&b_op).unwrap().verdict);
    if (y, y_op) != (Verdict::Holds, Verdict::Fails) {
        out.push(format!("e.c.c. on <xy^2, x^4+x^3y> and its opposite: expected (holds, fails), got ({y:?}, {y_op:?})"));
    }
    for name in FIXTURE_NAMES {
        let (p, op) = pair(name);
        let (e, e_op) = (check_ec(&p).unwrap().verdict, check_ec(&op).unwrap().verdict);
        if e != e_op {
            out.push(format!("e.c. differs on {name} and its opposite: {e:?} vs {e_op:?}"));
        }
    }
    out
}

fn table<F: Field>(name: &str, field: F, imax: usize, n: usize) -> HomologyTable {
    hh_table(&algebra(fixture(name, field).unwrap(), n), imax, n).unwrap()
}

fn criterion_3() -> Outcome {
    let t = table("atilde-4-5", gf(), 4, 12);
    let q = table("atilde-4-5", Rationals, 4, 9);
    let hh = |i: usize, n: usize| t.get(i, n).unwrap();
    let mut out = Vec::new();
    out.extend(compare("HH_0", 0..=8, &[1, 2, 3, 4, 5, 5, 8, 8, 12], |n| hh(0, n)));
    out.extend(compare("HH_1", 1..=12, &[2, 3, 4, 5, 8, 14, 21, 36, 61, 107, 189, 351], |n| hh(1, n)));
    for i in 2..=4 {
        out.extend(compare(&format!("HH_{i}"), 0..=12, &[0; 13], |n| hh(i, n)));
    }
    if (0..=4).any(|i| (0..=9).any(|n| q.get(i, n) != t.get(i, n))) {
        out.push("Q and GF(32003) tables differ at N=9".into());
    }
    out
}

fn criterion_4() -> Outcome {
    let t = table("downup-quotient", gf(), 5, 15);
    let hh = |i: usize, n: usize| t.get(i, n).unwrap();
    let mut out = Vec::new();
    let p2: Vec<usize> = (9..=13).map(|n| 2 * necklace::predim2(n - 4).unwrap() as usize).collect();
    out.extend(compare("HH_2", 0..=8, &[0, 0, 0, 0, 4, 2, 2, 2, 0], |n| hh(2, n)));
    out.extend(compare("HH_2 = 2 predim2(n-4)", 9..=13, &p2, |n| hh(2, n)));
    out.extend(compare("HH_3", 4..=11, &[1, 2, 2, 2, 0, 0, 0, 0], |n| hh(3, n)));
    let p3: Vec<usize> = (12..=13).map(|n| 2 * necklace::predim3(n - 5).unwrap() as usize).collect();
    out.extend(compare("HH_3 = 2 predim3(n-5)", 12..=13, &p3, |n| hh(3, n)));
    out.extend(compare("HH_5", 9..=15, &[2, 2, 2, 0, 0, 0, 0], |n| hh(5, n)));
    out.extend(compare("HH_4", 0..=8, &[0; 9], |n| hh(4, n)));
    out.extend(compare("HH_4", 9..=11, &[2, 2, 2], |n| hh(4, n)));
    let boundary: Vec<usize> = (10..=12).map(|n| hh(4, n)).collect();
    eprintln!("    HH_4 of the down-up quotient at the boundary degrees n = 10, 11, 12: {boundary:?}");
    out
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    let rho: Vec<usize> = (2..=4).map(|n| necklace::rho(n).unwrap().try_into().unwrap()).collect();
    if rho != [3, 4, 6] {
        out.push(format!("rho(2..=4): expected [3, 4, 6], got {rho:?}"));
    }
    out.extend(compare("predim2", 5..=13, &[1, 2, 4, 6, 12, 22, 41, 74, 137], |n| necklace::predim2(n).unwrap() as usize));
    out.extend(compare("predim3", 7..=15, &[1, 1, 2, 3, 7, 12, 22, 40, 75], |n| necklace::predim3(n).unwrap() as usize));
    out.extend(compare("predim0(n, 4, 5)", 5..=8, &[1, 3, 4, 7], |n| necklace::predim0(n, 4, 5).unwrap()));
    out.extend(compare("predim1", 5..=7, &[4, 9, 17], |n| necklace::predim1(n).unwrap()));
    out
}

fn criterion_6() -> Outcome {
    let mut out = Vec::new();
    let t = table("atilde-4-5", gf(), 0, 8);
    let necklace_atilde = |n: usize| match n {
        0..=2 => n + 1,
        _ if n % 2 == 1 => necklace::predim0(n, 4, 5).unwrap() + 4,
        _ => necklace::predim0(n, 4, 5).unwrap() + 5,
    };
    let want: Vec<usize> = (0..=8).map(necklace_atilde).collect();
    out.extend(compare("Ã_{4,5}: rank HH_0 vs predim0", 0..=8, &want, |n| t.get(0, n).unwrap()));
    let t = table("downup-quotient", gf(), 0, 10);
    let necklace_downup = |n: usize| match n {
        0..=2 => n + 1,
        3 | 4 => 4,
        _ if n % 2 == 1 => necklace::ppredim0(n).unwrap(),
        _ => necklace::ppredim0(n).unwrap() + 1,
    };
    let want: Vec<usize> = (0..=10).map(necklace_downup).collect();
    out.extend(compare("down-up quotient: rank HH_0 vs ppredim0", 0..=10, &want, |n| t.get(0, n).unwrap()));
    out
}

fn criterion_7() -> Outcome {
    common::all()
        .into_iter()
        .filter_map(|p| (p.run)(common::CASES, true).err().map(|e| format!("{}: {}", p.name, e.lines().next().unwrap_or(""))))
        .collect()
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("Koszulity verdicts", criterion_1),
        ("condition asymmetries", criterion_2),
        ("Hochschild table of Ã_{4,5}", criterion_3),
        ("Hochschild table of the down-up quotient", criterion_4),
        ("necklace golden values", criterion_5),
        ("rank HH_0 vs necklace HH_0", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut passed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let failures = run();
        let secs = start.elapsed().as_secs_f64();
        if failures.is_empty() {
            passed += 1;
            println!("criterion {}: PASS  {title} ({secs:.1}s)", k + 1);
        } else {
            println!("criterion {}: FAIL  {title} ({secs:.1}s): {}", k + 1, failures.join("; "));
        }
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
