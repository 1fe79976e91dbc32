use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use quiverbox::complexes::VectorRank;
use quiverbox::corpus;
use quiverbox::exec::Execution;
use quiverbox::families::{orbit_census, HomSpace, Ideal};
use quiverbox::field::PrimeField;

fn space() -> HomSpace<PrimeField> {
    let alg = corpus::load(PrimeField::new(3).unwrap(), corpus::CUBIC).unwrap();
    HomSpace::new(Arc::new(alg), VectorRank::parse("2/2", 0).unwrap(), Ideal::Radical).unwrap()
}

fn census(s: &HomSpace<PrimeField>, exec: Execution) -> usize {
    let pts = s.enumerate_points(1_000_000, exec).unwrap();
    orbit_census(s, &pts, exec).len()
}

fn bench(c: &mut Criterion) {
    let s = space();
    let mut g = c.benchmark_group("points_and_orbits");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| census(black_box(&s), Execution::Sequential)));
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| b.iter(|| census(black_box(&s), Execution::Parallel)));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
