//! Property definitions shared by the property test target and the acceptance target.
//!
//! Each property is a proptest strategy paired with a check, run through a
//! [`TestRunner`] for a requested number of cases.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use koszulkit_core::exactla::{kernel, left_kernel, rank, rref};
use koszulkit_core::koszulchecker::{build_layer, koszul_verdict, DifferentialKind, Strategy as VerdictStrategy};
use koszulkit_core::necklace::{self, CyclicWord, X, Y};
use koszulkit_core::presentation_file::{fixture, parse_str, PresentationFile, FIXTURE_NAMES};
use koszulkit_core::tensorgraded::word::pow;
use koszulkit_core::{Branch, Field, GradedAlgebra, Limits, Presentation, PrimeField, Rationals, SparseMatrix, SparseVec, Subspace};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

/// Cases per property.
pub const CASES: u32 = 1000;

/// A named property.
pub struct Property {
    /// Short name.
    pub name: &'static str,
    /// Runs the property; `deterministic` fixes the RNG seed.
    pub run: fn(u32, bool) -> Result<(), String>,
}

fn check<S: Strategy>(
    cases: u32,
    deterministic: bool,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = if deterministic {
        TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm))
    } else {
        TestRunner::new(config)
    };
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every property, in suite order.
pub fn all() -> Vec<Property> {
    vec![
        Property { name: "Grassmann identity over GF(3)", run: grassmann_gf3 },
        Property { name: "Grassmann identity over Q", run: grassmann_rationals },
        Property { name: "RREF canonicality", run: rref_canonicality },
        Property { name: "rank-nullity", run: rank_nullity },
        Property { name: "modular law", run: modular_law },
        Property { name: "perp order reversal and De Morgan", run: perp_laws },
        Property { name: "intersection vs GF(3) enumeration", run: gf3_intersection_oracle },
        Property { name: "complexes square to zero on fixtures", run: complexes_square_on_fixtures },
        Property { name: "complexes square to zero on random presentations", run: complexes_square_on_random },
        Property { name: "J nesting and recursion vs direct intersection", run: j_nesting },
        Property { name: "opposite involution round trip", run: opposite_involution },
        Property { name: "strategy agreement on fixtures", run: strategy_agreement },
        Property { name: "normal form rotation invariance", run: normal_form_rotation },
        Property { name: "rho vs orbit enumeration", run: rho_orbits },
        Property { name: "rho vs Burnside sum", run: rho_burnside },
        Property { name: "predim2/predim3 vs scanning oracle", run: predim_scan },
        Property { name: "containment vs doubled word", run: containment },
    ]
}

/// Looks up a property by name.
pub fn run(name: &str) {
    let p = all().into_iter().find(|p| p.name == name).expect("known property");
    if let Err(e) = (p.run)(CASES, false) {
        panic!("{name}: {e}");
    }
}

// Linear algebra.

/// `(ambient, rows)` with entries in `-2..=2`.
fn vectors(max_ambient: usize, max_rows: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_ambient).prop_flat_map(move |d| (Just(d), prop::collection::vec(prop::collection::vec(-2i64..=2, d), 0..=max_rows)))
}

/// `count` random subspaces of one ambient space, as spanning rows.
fn subspaces(count: usize, max_ambient: usize) -> impl Strategy<Value = (usize, Vec<Vec<Vec<i64>>>)> {
    (1..=max_ambient).prop_flat_map(move |d| {
        let one = prop::collection::vec(prop::collection::vec(-2i64..=2, d), 0..=d);
        (Just(d), prop::collection::vec(one, count))
    })
}

fn vec_of<F: Field>(f: &F, v: &[i64]) -> SparseVec<F::Elem> {
    let dense: Vec<F::Elem> = v.iter().map(|&x| f.from_i64(x)).collect();
    SparseVec::from_dense(f, &dense)
}

fn span<F: Field>(f: &F, d: usize, rows: &[Vec<i64>]) -> Subspace<F> {
    Subspace::span(f, d, rows.iter().map(|r| vec_of(f, r))).unwrap()
}

fn matrix<F: Field>(f: &F, d: usize, rows: &[Vec<i64>]) -> SparseMatrix<F::Elem> {
    SparseMatrix::from_rows(d, rows.iter().map(|r| vec_of(f, r)).collect()).unwrap()
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn grassmann_on<F: Field>(f: &F, d: usize, u: &[Vec<i64>], w: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let (u, w) = (span(f, d, u), span(f, d, w));
    let sum = u.sum(f, &w).unwrap();
    let meet = u.intersect(f, &w).unwrap();
    prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
    prop_assert!(meet.is_subspace_of(f, &u).unwrap() && meet.is_subspace_of(f, &w).unwrap());
    prop_assert!(u.is_subspace_of(f, &sum).unwrap() && w.is_subspace_of(f, &sum).unwrap());
    Ok(())
}

fn grassmann_gf3(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, subspaces(2, 6), |(d, parts)| grassmann_on(&gf(3), d, &parts[0], &parts[1]))
}

fn grassmann_rationals(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, subspaces(2, 6), |(d, parts)| grassmann_on(&Rationals, d, &parts[0], &parts[1]))
}

/// Applies a random sequence of invertible row operations.
fn mix(rows: &[Vec<i64>], ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut out = rows.to_vec();
    if out.len() < 2 {
        return out;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % out.len(), j % out.len());
        if i == j {
            out.swap(0, i);
            continue;
        }
        let src = out[j].clone();
        for (x, y) in out[i].iter_mut().zip(src) {
            *x += c * y;
        }
    }
    out.reverse();
    out
}

fn rref_canonicality(cases: u32, det: bool) -> Result<(), String> {
    let strategy = (vectors(6, 6), prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..12));
    check(cases, det, strategy, |((d, rows), ops)| {
        let f = gf(5);
        let a = span(&f, d, &rows);
        prop_assert!(a.is_canonical(&f));
        prop_assert_eq!(a, span(&f, d, &mix(&rows, &ops)));
        let q = Rationals;
        let a = span(&q, d, &rows);
        prop_assert!(a.is_canonical(&q));
        prop_assert_eq!(a, span(&q, d, &mix(&rows, &ops)));
        Ok(())
    })
}

fn rank_nullity(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, vectors(7, 7), |(d, rows)| {
        let f = gf(3);
        let m = matrix(&f, d, &rows);
        let r = rank(&f, &m);
        prop_assert_eq!(r + kernel(&f, &m).dim(), d);
        prop_assert_eq!(r + left_kernel(&f, &m).dim(), rows.len());
        prop_assert_eq!(r, rref(&f, &m).dim());
        let q = Rationals;
        let m = matrix(&q, d, &rows);
        let r = rank(&q, &m);
        prop_assert_eq!(r + kernel(&q, &m).dim(), d);
        prop_assert_eq!(r + left_kernel(&q, &m).dim(), rows.len());
        for v in kernel(&q, &m).rows() {
            prop_assert!(m.mul_vec(&q, v).is_zero());
        }
        Ok(())
    })
}

fn modular_on<F: Field>(f: &F, d: usize, parts: &[Vec<Vec<i64>>]) -> Result<(), TestCaseError> {
    // U ⊆ W is forced by taking W = U + W'.
    let u = span(f, d, &parts[0]);
    let w = u.sum(f, &span(f, d, &parts[1])).unwrap();
    let x = span(f, d, &parts[2]);
    let lhs = w.intersect(f, &u.sum(f, &x).unwrap()).unwrap();
    let rhs = u.sum(f, &w.intersect(f, &x).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn modular_law(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, subspaces(3, 6), |(d, parts)| {
        modular_on(&gf(3), d, &parts)?;
        modular_on(&Rationals, d, &parts)
    })
}

fn perp_on<F: Field>(f: &F, d: usize, parts: &[Vec<Vec<i64>>]) -> Result<(), TestCaseError> {
    let u = span(f, d, &parts[0]);
    let w = span(f, d, &parts[1]);
    let uw = u.sum(f, &w).unwrap();
    prop_assert_eq!(&u.perp(f).perp(f), &u);
    prop_assert_eq!(u.perp(f).dim() + u.dim(), d);
    // U ⊆ U + W, so (U + W)^⊥ ⊆ U^⊥.
    prop_assert!(uw.perp(f).is_subspace_of(f, &u.perp(f)).unwrap());
    prop_assert_eq!(uw.perp(f), u.perp(f).intersect(f, &w.perp(f)).unwrap());
    prop_assert_eq!(u.intersect(f, &w).unwrap().perp(f), u.perp(f).sum(f, &w.perp(f)).unwrap());
    Ok(())
}

fn perp_laws(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, subspaces(2, 6), |(d, parts)| {
        perp_on(&gf(3), d, &parts)?;
        perp_on(&Rationals, d, &parts)
    })
}

/// All vectors of `GF(3)^d`.
fn all_gf3_vectors(d: usize) -> Vec<Vec<i64>> {
    (0..3usize.pow(d as u32))
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let c = (k % 3) as i64;
                    k /= 3;
                    c
                })
                .collect()
        })
        .collect()
}

fn gf3_intersection_oracle(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, subspaces(2, 4), |(d, parts)| {
        let f = gf(3);
        let u = span(&f, d, &parts[0]);
        let w = span(&f, d, &parts[1]);
        let meet = u.intersect(&f, &w).unwrap();
        let mut common = 0usize;
        for v in all_gf3_vectors(d) {
            let v = vec_of(&f, &v);
            if u.contains(&f, &v).unwrap() && w.contains(&f, &v).unwrap() {
                common += 1;
                prop_assert!(meet.contains(&f, &v).unwrap());
            }
        }
        prop_assert_eq!(common, 3usize.pow(meet.dim() as u32));
        Ok(())
    })
}

// Graded algebras and complexes.

/// Parameters of a random two-generator presentation over GF(3).
#[derive(Debug, Clone)]
pub struct RandomPresentation {
    a: usize,
    b: usize,
    r_a: Vec<Vec<i64>>,
    r_b: Vec<Vec<i64>>,
}

fn nonzero_vectors(len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(
        prop::collection::vec(prop_oneof![6 => Just(0i64), 1 => Just(1), 1 => Just(2)], len)
            .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0)),
        1..=2,
    )
}

/// Relation degrees `2 <= a < b <= a + 2` with one or two sparse random relations per degree.
fn random_presentation() -> impl Strategy<Value = RandomPresentation> {
    (2usize..=3, 1usize..=2).prop_flat_map(|(a, gap)| {
        let b = a + gap;
        (nonzero_vectors(pow(2, a)), nonzero_vectors(pow(2, b))).prop_map(move |(r_a, r_b)| RandomPresentation { a, b, r_a, r_b })
    })
}

fn build(rp: &RandomPresentation) -> Presentation<PrimeField> {
    let f = gf(3);
    let sp = |n: usize, rows: &[Vec<i64>]| Subspace::span(&f, pow(2, n), rows.iter().map(|r| vec_of(&f, r))).unwrap();
    Presentation::from_spaces(f, vec!["x".into(), "y".into()], rp.a, sp(rp.a, &rp.r_a), rp.b, sp(rp.b, &rp.r_b)).unwrap()
}

fn squares_to_zero<F: Field>(alg: &GradedAlgebra<F>, kind: DifferentialKind, i: usize, n: usize) -> bool {
    let hi = build_layer(alg, kind, i + 1, n).unwrap();
    let lo = build_layer(alg, kind, i, n).unwrap();
    hi.matrix.mul(alg.field(), &lo.matrix).unwrap().is_zero()
}

/// Fixture algebras over GF(32003) with degree cache `max(2b + 2, b + 6)`, built once.
fn fixture_algebras() -> &'static Vec<GradedAlgebra<PrimeField>> {
    static CELL: OnceLock<Vec<GradedAlgebra<PrimeField>>> = OnceLock::new();
    CELL.get_or_init(|| {
        FIXTURE_NAMES
            .iter()
            .map(|name| {
                let p = fixture(name, gf(32003)).unwrap();
                let top = (2 * p.b() + 2).max(p.b() + 6);
                GradedAlgebra::new(p, top, Limits::default()).unwrap()
            })
            .collect()
    })
}

fn kinds() -> impl Strategy<Value = DifferentialKind> {
    prop_oneof![Just(DifferentialKind::Koszul), Just(DifferentialKind::Hochschild)]
}

fn memo<K: std::hash::Hash + Eq + Clone, V: Clone>(cache: &Mutex<HashMap<K, V>>, key: K, compute: impl FnOnce() -> V) -> V {
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute();
    cache.lock().unwrap().insert(key, v.clone());
    v
}

fn complexes_square_on_fixtures(cases: u32, det: bool) -> Result<(), String> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool, usize, usize), bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    check(cases, det, (0..FIXTURE_NAMES.len(), kinds(), 1usize..=7, 0usize..=6), |(k, kind, i, dn)| {
        let alg = &fixture_algebras()[k];
        let n = alg.presentation().b() + dn;
        let ok = memo(cache, (k, kind == DifferentialKind::Koszul, i, n), || squares_to_zero(alg, kind, i, n));
        prop_assert!(ok, "{:?} squared is nonzero on {} at i={}, n={}", kind, FIXTURE_NAMES[k], i, n);
        Ok(())
    })
}

fn complexes_square_on_random(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, (random_presentation(), kinds(), 1usize..=5, 1usize..=7), |(rp, kind, i, n)| {
        let alg = GradedAlgebra::new(build(&rp), 7, Limits::default()).unwrap();
        prop_assert!(squares_to_zero(&alg, kind, i, n));
        Ok(())
    })
}

fn j_nesting(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, random_presentation(), |rp| {
        let p = build(&rp);
        let top = p.b() + 4;
        let alg = GradedAlgebra::new(p, top, Limits::default()).unwrap();
        let f = alg.field();
        for br in Branch::BOTH {
            let s = alg.presentation().degree(br);
            prop_assert_eq!(alg.j(br, s).unwrap(), alg.relations(br));
            for n in s..=s + 4 {
                let j = alg.j(br, n).unwrap();
                prop_assert_eq!(j, &alg.j_direct(br, n).unwrap(), "J^{}_{}", s, n);
                if n > s {
                    let prev = alg.j(br, n - 1).unwrap();
                    prop_assert!(j.is_subspace_of(f, &alg.embed(prev, n - 1, 1, 0).unwrap()).unwrap());
                    prop_assert!(j.is_subspace_of(f, &alg.embed(prev, n - 1, 0, 1).unwrap()).unwrap());
                }
            }
        }
        Ok(())
    })
}

fn opposite_involution(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, random_presentation(), |rp| {
        let p = build(&rp);
        let op = p.reverse();
        let back = op.reverse();
        prop_assert_eq!(back.fingerprint(), p.fingerprint());
        prop_assert_eq!(back.relations(Branch::A), p.relations(Branch::A));
        prop_assert_eq!(back.relations(Branch::B), p.relations(Branch::B));
        let file = serde_json::to_string(&PresentationFile::from_presentation(&op)).unwrap();
        let reparsed = parse_str(&file).unwrap().build(gf(3)).unwrap();
        prop_assert_eq!(reparsed.fingerprint(), op.fingerprint());
        let a = GradedAlgebra::new(p, 6, Limits::default()).unwrap();
        let b = GradedAlgebra::new(op, 6, Limits::default()).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(a.dim(n).unwrap(), b.dim(n).unwrap());
        }
        Ok(())
    })
}

fn strategy_agreement(cases: u32, det: bool) -> Result<(), String> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), (Option<bool>, String)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    // The hypothesis checks reach degree 2b - 1, so the strategies share a rectangle from there on.
    check(cases, det, (0..FIXTURE_NAMES.len(), 0usize..=3, 2usize..=4), |(k, dn, imax)| {
        let alg = &fixture_algebras()[k];
        let n_max = 2 * alg.presentation().b() - 1 + dn;
        let (agree, summary) = memo(cache, (k, n_max, imax), || {
            let v = koszul_verdict(alg, n_max, imax, VerdictStrategy::Both).unwrap();
            (v.strategies_agree, format!("exactness {:?}, conditions {:?}", v.exactness_overall, v.conditions_overall))
        });
        prop_assert!(agree != Some(false), "{} at N={}, imax={}: {}", FIXTURE_NAMES[k], n_max, imax, summary);
        Ok(())
    })
}

// Necklaces.

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop_oneof![Just(X), Just(Y)], 1..=max_len)
}

fn rotate(w: &[u8], k: usize) -> Vec<u8> {
    let k = k % w.len();
    [&w[k..], &w[..k]].concat()
}

/// Longest run of equal letters, by one left-to-right scan.
fn longest_run(w: &[u8]) -> usize {
    let (mut best, mut run) = (0, 0);
    for (k, &c) in w.iter().enumerate() {
        run = if k > 0 && w[k - 1] == c { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

/// Counts words `head · w · x³` of length `n` with no run of four equal letters.
fn scan_count(n: usize, head: &[u8]) -> u64 {
    let free = n - head.len() - 3;
    (0..1u64 << free)
        .filter(|bits| {
            let mut w = head.to_vec();
            w.extend((0..free).map(|k| if bits >> (free - 1 - k) & 1 == 1 { Y } else { X }));
            w.extend([X; 3]);
            longest_run(&w) < 4
        })
        .count() as u64
}

fn normal_form_rotation(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, (word(24), 0usize..24), |(w, k)| {
        let nf = necklace::normal_form(&w);
        prop_assert_eq!(&necklace::normal_form(&rotate(&w, k)), &nf);
        let rotations: Vec<Vec<u8>> = (0..w.len()).map(|j| rotate(&w, j)).collect();
        prop_assert!(rotations.contains(&nf));
        prop_assert!(rotations.iter().all(|r| &nf <= r));
        let cw = CyclicWord::new(w.clone());
        prop_assert_eq!(cw.canonical(), &nf[..]);
        prop_assert_eq!(necklace::parse(&necklace::render(&w)).unwrap(), w);
        Ok(())
    })
}

fn rho_orbits(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, 1u64..=14, |n| {
        let orbits: HashSet<Vec<u8>> = (0..1u32 << n)
            .map(|bits| (0..n).map(|k| ((bits >> k) & 1) as u8).collect::<Vec<u8>>())
            .map(|w| necklace::normal_form(&w))
            .collect();
        prop_assert_eq!(necklace::rho(n).unwrap(), BigUint::from(orbits.len()));
        Ok(())
    })
}

fn rho_burnside(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, 1u64..=60, |n| {
        // Σ_{k=0}^{n-1} 2^{gcd(k,n)} = n · ρ(n).
        let gcd = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let total: BigUint = (0..n).map(|k| BigUint::from(2u8).pow(gcd(k, n) as u32)).sum();
        prop_assert_eq!(total, necklace::rho(n).unwrap() * BigUint::from(n));
        Ok(())
    })
}

fn predim_scan(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, 7usize..=18, |n| {
        prop_assert_eq!(necklace::predim2(n).unwrap(), scan_count(n, &[X]));
        prop_assert_eq!(necklace::predim3(n).unwrap(), scan_count(n, &[X, X, X]));
        Ok(())
    })
}

fn containment(cases: u32, det: bool) -> Result<(), String> {
    check(cases, det, (word(12), word(4)), |(w, v)| {
        let doubled = [w.as_slice(), w.as_slice()].concat();
        let expected = v.len() <= w.len() && (0..w.len()).any(|s| doubled[s..s + v.len()] == v[..]);
        prop_assert_eq!(necklace::cyclic_contains(&w, &v), expected);
        let linear = w.windows(v.len()).any(|win| win == &v[..]);
        prop_assert_eq!(necklace::linear_contains(&w, &v), linear);
        Ok(())
    })
}
