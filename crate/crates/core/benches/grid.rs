use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fibercone_core::artinian::{Poly, PrimeField, TruncatedLocalRing};
use fibercone_core::invariants::{FiberCone, StabilizationPolicy};
use fibercone_core::{Exec, IdealCalculus, NumericalSemigroup, SemigroupRing};

fn mono(f: &PrimeField, e: &[u32]) -> Poly<u64> {
    Poly::monomial(f, e.to_vec(), 1)
}

fn grid<C: IdealCalculus>(calc: &C, i: &C::Ideal, size: usize, exec: Exec) -> usize {
    let fc = FiberCone::new(calc, i.clone(), StabilizationPolicy::default(), exec).unwrap();
    fc.bhattacharya_grid(size).unwrap()[size][size]
}

fn bench_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("bhattacharya_grid");
    group.sample_size(10);

    let f = PrimeField::default_31bit();
    let r = TruncatedLocalRing::new(3, 40, f).unwrap();
    let gens: Vec<_> = [
        [3, 0, 0],
        [0, 3, 0],
        [0, 0, 3],
        [1, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
    ]
    .iter()
    .map(|e| mono(&f, e))
    .collect();
    let i = r.ideal(&gens).unwrap();

    let s = SemigroupRing::new(NumericalSemigroup::new(&[7, 15, 17, 33]).unwrap());
    let si = s.ideal(&[7, 17, 33]).unwrap();

    for exec in [Exec::Sequential, Exec::Parallel] {
        let name = format!("{exec:?}");
        group.bench_with_input(BenchmarkId::new("local_d3", &name), &exec, |b, &e| {
            b.iter(|| grid(&r, &i, 6, e))
        });
        group.bench_with_input(BenchmarkId::new("semigroup", &name), &exec, |b, &e| {
            b.iter(|| grid(&s, &si, 40, e))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_grid);
criterion_main!(benches);
