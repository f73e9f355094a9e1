//! Benchmarks of the main computations: quotient bases and `J` spaces, Koszul verdicts,
//! Hochschild tables and necklace enumeration.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use koszulkit_bench::{prime_algebra, rational_algebra};
use koszulkit_core::hochschild::hh_table;
use koszulkit_core::koszulchecker::{check_ec, koszul_verdict, Strategy};
use koszulkit_core::necklace;
use koszulkit_core::Branch;

fn algebra_cache(c: &mut Criterion) {
    c.bench_function("atilde-4-5 basis and J up to degree 12", |b| {
        b.iter(|| {
            let alg = rational_algebra("atilde-4-5", 12);
            black_box(alg.j(Branch::A, 12).unwrap().dim())
        })
    });
}

fn koszul(c: &mut Criterion) {
    let mut g = c.benchmark_group("koszul");
    g.sample_size(10);
    g.bench_function("atilde-4-5 exactness N=12 I=6", |b| {
        b.iter(|| {
            let alg = prime_algebra("atilde-4-5", 12);
            black_box(koszul_verdict(&alg, 12, 6, Strategy::Exactness).unwrap())
        })
    });
    g.bench_function("downup conditions N=10 I=4", |b| {
        b.iter(|| {
            let alg = rational_algebra("downup-quotient", 10);
            black_box(koszul_verdict(&alg, 10, 4, Strategy::Conditions).unwrap())
        })
    });
    g.bench_function("downup e.c.", |b| {
        let alg = rational_algebra("downup-quotient", 9);
        b.iter(|| black_box(check_ec(&alg).unwrap()))
    });
    g.finish();
}

fn hochschild(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild");
    g.sample_size(10);
    g.bench_function("downup table N=11 I=4", |b| {
        b.iter(|| {
            let alg = prime_algebra("downup-quotient", 11);
            black_box(hh_table(&alg, 4, 11).unwrap())
        })
    });
    g.finish();
}

fn necklaces(c: &mut Criterion) {
    c.bench_function("necklace generators(14)", |b| b.iter(|| black_box(necklace::generators(14).unwrap().len())));
    c.bench_function("necklace predim3(14)", |b| b.iter(|| black_box(necklace::predim3(14).unwrap())));
}

criterion_group!(benches, algebra_cache, koszul, hochschild, necklaces);
criterion_main!(benches);
