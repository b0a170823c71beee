//! Closed-form evaluation: coefficients, single witnesses and full scans.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use raman_core::scan::{run_scan, ScanConfig};
use raman_core::{compute_coefficients, witness_from, CoherentInputs, ModePair, RamanParams, WitnessOptions};

fn bench_coefficients(c: &mut Criterion) {
    let p = RamanParams::paper();
    c.bench_function("compute_coefficients", |b| {
        b.iter(|| compute_coefficients(black_box(&p), black_box(6.3e-7)))
    });
}

fn bench_witnesses(c: &mut Criterion) {
    let p = RamanParams::paper();
    let a = CoherentInputs::paper(std::f64::consts::FRAC_PI_2);
    let coeffs = compute_coefficients(&p, 6.3e-7);
    let mut group = c.benchmark_group("witness_from");
    for crit in raman_core::Criterion::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(crit), &crit, |b, &crit| {
            b.iter(|| {
                ModePair::ALL
                    .iter()
                    .map(|&pair| witness_from(crit, pair, black_box(&coeffs), &a, WitnessOptions::default()))
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_scan");
    group.sample_size(20);
    for steps in [100usize, 400] {
        let cfg = ScanConfig {
            t_steps: steps,
            ..ScanConfig::default()
        };
        group.throughput(Throughput::Elements((steps * 6 * 3 * 3) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(steps), &cfg, |b, cfg| {
            b.iter(|| run_scan(black_box(cfg), 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_coefficients, bench_witnesses, bench_scan);
criterion_main!(benches);
