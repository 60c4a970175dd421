use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use reeskit::structures::{enumerate_directoids, diamond_semilattice, loop5, random_algebras};
use reeskit::{all_congruences, all_subuniverses, unary_polynomials, Analyzer, Signature};

fn lattices(c: &mut Criterion) {
    let sig = Signature::new([("f", 2)]).unwrap();
    let randoms = random_algebras(&sig, 6, 1, 16).unwrap();
    c.bench_function("congruence lattice, diamond", |b| {
        let a = diamond_semilattice();
        b.iter(|| all_congruences(black_box(&a)).unwrap())
    });
    c.bench_function("congruence lattice, loop5", |b| {
        let a = loop5();
        b.iter(|| all_congruences(black_box(&a)).unwrap())
    });
    c.bench_function("congruence lattice, 16 random groupoids of size 6", |b| {
        b.iter(|| {
            for a in &randoms {
                black_box(all_congruences(a).unwrap());
            }
        })
    });
}

fn closures(c: &mut Criterion) {
    let sig = Signature::new([("f", 2)]).unwrap();
    let a = random_algebras(&sig, 6, 2, 1).unwrap().remove(0);
    c.bench_function("unary polynomials, random groupoid of size 6", |b| {
        b.iter(|| unary_polynomials(black_box(&a)).unwrap())
    });
    c.bench_function("subuniverses, random groupoid of size 6", |b| {
        b.iter(|| all_subuniverses(black_box(&a)).unwrap())
    });
}

fn deciders(c: &mut Criterion) {
    c.bench_function("directoid enumeration, n = 4", |b| {
        b.iter(|| enumerate_directoids(black_box(4)).unwrap())
    });
    let a = loop5();
    c.bench_function("quasi-Rees and OBP, loop5", |b| {
        b.iter(|| {
            let an = Analyzer::new(black_box(&a));
            (an.quasi_rees().unwrap().holds, an.obp_characterization())
        })
    });
}

criterion_group!(benches, lattices, closures, deciders);
criterion_main!(benches);
