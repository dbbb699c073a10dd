use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wedge_crystal::fock::{kashiwara_from_module, representation, verify_relations};
use wedge_crystal::{AffineType, KacLabel};

fn module(c: &mut Criterion) {
    let mut group = c.benchmark_group("fock");
    group.sample_size(10);
    for n in [2usize, 3] {
        let t = AffineType::new(KacLabel::C1, n).unwrap();
        group.bench_with_input(BenchmarkId::new("representation", n), &t, |b, t| b.iter(|| representation(black_box(t))));
        let rep = representation(&t);
        group.bench_with_input(BenchmarkId::new("relations", n), &rep, |b, rep| b.iter(|| verify_relations(black_box(rep))));
        group.bench_with_input(BenchmarkId::new("kashiwara_e0", n), &rep, |b, rep| {
            b.iter(|| kashiwara_from_module(black_box(rep), 0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, module);
criterion_main!(benches);
