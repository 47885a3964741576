use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fusionring::oracles::proof_fragment_ring as proof_fragment_free;
use fusionring::{
    check_axioms, enumerate_rings, ladder_build, ring_freeness_obstructions, theorem_verdict,
    SearchOptions,
};
use fusionring_bench::{corpus, deep_ladder_ring};

fn axioms(c: &mut Criterion) {
    let rings = corpus();
    c.bench_function("check_axioms/corpus", |b| {
        b.iter(|| {
            for ring in &rings {
                black_box(check_axioms(ring));
            }
        })
    });
}

fn ladder(c: &mut Criterion) {
    let ring = deep_ladder_ring();
    let x3 = ring.index_of("x3").unwrap();
    c.bench_function("ladder_build/so3_41", |b| {
        b.iter(|| black_box(ladder_build(&ring, x3, usize::MAX).unwrap()))
    });
    c.bench_function("theorem_verdict/so3_41", |b| {
        b.iter(|| black_box(theorem_verdict(&ring).unwrap()))
    });
}

fn subrings(c: &mut Criterion) {
    let ring = proof_fragment_free();
    c.bench_function("freeness/fragment", |b| {
        b.iter(|| black_box(ring_freeness_obstructions(&ring).unwrap()))
    });
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("1_1_1_3", |b| {
        b.iter(|| black_box(enumerate_rings(&[1, 1, 1, 3], &SearchOptions::default()).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, axioms, ladder, subrings, search);
criterion_main!(benches);
