use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use slopestab::numeric::{default_tolerance, int, rat};
use slopestab::positivity::cone_section_with;
use slopestab::scan::{scan_kodaira_invariants, scan_product_c_windows, scan_product_s_windows};
use slopestab::{ExecMode, ProductSurfaceParams, Rational};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn cone_grid(c: &mut Criterion) {
    let params = ProductSurfaceParams::branched(10, 4).unwrap();
    let mut group = c.benchmark_group("cone_section_64x64");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| cone_section_with(&params, &int(20), 64, mode).unwrap())
        });
    }
    group.finish();
}

fn window_scans(c: &mut Criterion) {
    let params = ProductSurfaceParams::unconstrained(7).unwrap();
    let tol = default_tolerance();
    let s_values: Vec<Rational> = (1..=64).map(|i| int(7) + rat(i, 16)).collect();
    let c_values: Vec<Rational> = (1..=16).map(|i| rat(i, 20)).collect();
    let mut group = c.benchmark_group("window_scans");
    group.sample_size(20);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new("c_windows", name), |b| {
            b.iter(|| scan_product_c_windows(&params, &s_values, &tol, mode))
        });
        group.bench_function(BenchmarkId::new("s_windows", name), |b| {
            b.iter(|| scan_product_s_windows(&params, &c_values, &int(10), &tol, mode))
        });
        group.bench_function(BenchmarkId::new("kodaira_invariants", name), |b| {
            b.iter(|| scan_kodaira_invariants(&[2, 3, 4, 5, 6], &[2, 3, 4], &[2, 3, 4, 6, 8, 12], mode))
        });
    }
    group.finish();
}

criterion_group!(benches, cone_grid, window_scans);
criterion_main!(benches);
