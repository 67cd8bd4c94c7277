use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use invgamma::atlas::{branch_boundary, build_atlas, AtlasConfig, AtlasRequest};
use invgamma::complex::inv_gamma_complex;
use invgamma::exec::{self, Execution};
use invgamma::real::SolveConfig;
use invgamma::specfun::ComplexValue;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn atlas(c: &mut Criterion) {
    let mut group = c.benchmark_group("atlas");
    let cfg = AtlasConfig::default();
    for k in [0, -1] {
        let req = AtlasRequest::standard(k).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, k), &req, |b, req| {
                b.iter(|| build_atlas(black_box(req), &cfg, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn boundary(c: &mut Criterion) {
    let mut group = c.benchmark_group("boundary");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| branch_boundary(black_box(0), 128, exec).unwrap())
        });
    }
    group.finish();
}

fn complex_grid(c: &mut Criterion) {
    let cfg = SolveConfig::default();
    let grid: Vec<ComplexValue> = (0..20)
        .flat_map(|i| {
            (1..=20).map(move |j| ComplexValue::new(-5.0 + 0.5 * i as f64, 0.25 * j as f64))
        })
        .collect();
    let mut group = c.benchmark_group("complex_grid");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map(black_box(&grid), exec, |&z| {
                    inv_gamma_complex(z, 0, &cfg).ok()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, atlas, boundary, complex_grid);
criterion_main!(benches);
