use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperbilliards::dynamics::{random_boundary_start, run, BilliardTable};
use hyperbilliards::exec::{par_map, seq_map};
use hyperbilliards::minkowski::{Caustic, ConfocalFamily};
use hyperbilliards::rotation::rotation_for;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn rotation_grid(c: &mut Criterion) {
    let fam = ConfocalFamily::new(1.0, 2.0, 3.0).unwrap();
    let grid: Vec<f64> = (0..256).map(|i| -20.0 + 19.5 * i as f64 / 255.0).collect();
    let job = |nu: &f64| rotation_for(&fam, *nu).ok();
    let mut g = c.benchmark_group("rotation_grid");
    g.bench_function(BenchmarkId::new("sequential", grid.len()), |b| {
        b.iter(|| seq_map(black_box(&grid), job))
    });
    g.bench_function(BenchmarkId::new("parallel", grid.len()), |b| {
        b.iter(|| par_map(black_box(&grid), job))
    });
    g.finish();
}

fn closure_sweep(c: &mut Criterion) {
    let table = BilliardTable::new(ConfocalFamily::new(1.0, 2.0, 3.0).unwrap());
    let seeds: Vec<u64> = (0..64).collect();
    let job = |s: &u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(*s);
        let (p, v) = random_boundary_start(&table, Caustic::Finite(-6.0), &mut rng)?;
        run(&p, v, &table, 40)
            .ok()?
            .trajectory()
            .map(|t| t.closure.n)
    };
    let mut g = c.benchmark_group("closure_sweep");
    g.bench_function(BenchmarkId::new("sequential", seeds.len()), |b| {
        b.iter(|| seq_map(black_box(&seeds), job))
    });
    g.bench_function(BenchmarkId::new("parallel", seeds.len()), |b| {
        b.iter(|| par_map(black_box(&seeds), job))
    });
    g.finish();
}

criterion_group!(benches, rotation_grid, closure_sweep);
criterion_main!(benches);
