//! Benchmarks for the exact kernels: block-matrix rank over both fields,
//! model construction, and Koszul homology.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use perazzo::algebra::build_model;
use perazzo::form::{gen_canonical, gen_general, gen_min, CanonicalKind};
use perazzo::hilbert::{block_matrix, hilbert_function};
use perazzo::linalg::{ExactMatrix, PrimeField, RationalField};
use perazzo::resolution::betti;

fn bench_block_rank(c: &mut Criterion) {
    let field = PrimeField::default();
    let form = gen_general(&field, 7, 4, 8, true, 42).unwrap();
    let m = block_matrix(&form, 4);
    c.bench_function("rank/prime block (7,4,8) i=4", |b| {
        b.iter_batched(|| m.clone(), |m| m.rank(), BatchSize::SmallInput)
    });

    let rat_form = gen_general(&RationalField, 3, 3, 8, true, 42).unwrap();
    let rm = block_matrix(&rat_form, 4);
    c.bench_function("rank/rational block (3,3,8) i=4", |b| {
        b.iter_batched(|| rm.clone(), |m| m.rank(), BatchSize::SmallInput)
    });
}

fn bench_dense_rank(c: &mut Criterion) {
    use rand::{Rng, SeedableRng};
    let field = PrimeField::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let m = ExactMatrix::from_fn(field, 200, 200, |_, _| rng.gen_range(0..field.modulus()));
    c.bench_function("rank/prime dense 200x200", |b| {
        b.iter_batched(|| m.clone(), |m| m.rank(), BatchSize::SmallInput)
    });
}

fn bench_hilbert(c: &mut Criterion) {
    let field = PrimeField::default();
    let form = gen_min(&field, 13, 3, 8, 42).unwrap();
    c.bench_function("hilbert_function gen_min(13,3,8)", |b| {
        b.iter(|| hilbert_function(&form).unwrap())
    });
}

fn bench_model_and_betti(c: &mut Criterion) {
    let field = PrimeField::default();
    let form = gen_canonical(&field, CanonicalKind::CaseI, 8).unwrap();
    let big = form.assemble().unwrap();
    c.bench_function("build_model minimal P4 d=8", |b| b.iter(|| build_model(&big)));

    let module = build_model(&big).module_model();
    c.bench_function("betti minimal P4 d=8", |b| b.iter(|| betti(&module)));
}

criterion_group!(benches, bench_block_rank, bench_dense_rank, bench_hilbert, bench_model_and_betti);
criterion_main!(benches);
