use std::hint::black_box;
use std::sync::Arc;

use confdisk::builtin::DomainSpec;
use confdisk::measure::{harmonic_measure_with, walk_on_spheres, WosOptions};
use confdisk::potential::cell_energy;
use confdisk::{Exec, C64};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn wos(c: &mut Criterion) {
    let (disk, _) = DomainSpec::RadialSlitExterior { p_tilde: 2.0 }.build(0).unwrap();
    let disk = Arc::new(disk);
    let mut group = c.benchmark_group("walk_on_spheres");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new(name, 20_000), |b| {
            b.iter(|| {
                let opts = WosOptions { exec, ..WosOptions::default() };
                walk_on_spheres(&disk, black_box(20_000), 0xC0FFEE, opts).unwrap()
            })
        });
    }
    group.finish();
}

fn energy(c: &mut Criterion) {
    let spec = DomainSpec::SegmentExterior {
        a: C64::new(-2.0, 0.0),
        b: C64::new(2.0, 0.0),
    };
    let (_, g) = spec.build(0).unwrap();
    let omega = harmonic_measure_with(&g, 1024, Exec::Sequential).unwrap();
    let mut group = c.benchmark_group("cell_energy");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new(name, 1024), |b| b.iter(|| cell_energy(black_box(&omega), exec).unwrap()));
    }
    group.finish();
}

fn zipper_measure(c: &mut Criterion) {
    let (_, g) = DomainSpec::Polygon {
        points: vec![
            C64::new(-1.0, -1.0),
            C64::new(1.0, -1.0),
            C64::new(1.0, 1.0),
            C64::new(-1.0, 1.0),
        ],
    }
    .build(256)
    .unwrap();
    let mut group = c.benchmark_group("zipper_harmonic_measure");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new(name, 512), |b| b.iter(|| harmonic_measure_with(&g, black_box(512), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, wos, energy, zipper_measure);
criterion_main!(benches);
