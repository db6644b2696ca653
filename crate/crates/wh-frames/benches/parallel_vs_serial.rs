//! Compares the rayon-backed sweeps against the sequential fallback on the
//! three workloads that dominate real usage: correlation tables over a batch
//! of windows, dense modulus evaluation on the circle, and the rational
//! (a, c) classification chart.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wh_frames::abc::{self, RealParam};
use wh_frames::frameset::{modulus_at, ExponentSet};
use wh_frames::gabor::{gk_table, GaborSystem};
use wh_frames::par;
use wh_frames::sample::random_step;
use wh_frames::scalar::{rat, rint, Rat};
use wh_frames::stepfn::StepFunction;

fn pooled<R: Send>(threads: usize, job: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(job)
}

fn bench_gk_tables(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let windows: Vec<StepFunction> = (0..64)
        .map(|_| random_step(&mut rng, &rint(0), &rint(6), 12, true))
        .collect();
    let run = |ws: Vec<StepFunction>, seq: bool| {
        let job = move |g: StepFunction| {
            let sys = GaborSystem::new(g, rat(1, 2), Rat::one()).unwrap();
            gk_table(&sys).krange().len()
        };
        if seq {
            par::map_seq(ws, job)
        } else {
            par::map(ws, job)
        }
    };

    let mut group = c.benchmark_group("gk_tables_64_windows");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| run(windows.clone(), true));
    });
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::new("parallel", threads), &threads, |b, &t| {
            b.iter(|| pooled(t, || run(windows.clone(), false)));
        });
    }
    group.finish();
}

fn bench_circle_grid(c: &mut Criterion) {
    let e = ExponentSet::new(vec![0, 1, 3, 4, 7, 11, 15]).unwrap();
    let exps = e.normalized();
    let grid: Vec<f64> = (0..200_000).map(|i| i as f64 / 200_000.0).collect();
    let run = |thetas: Vec<f64>, seq: bool| -> f64 {
        let exps = exps.clone();
        let job = move |t: f64| modulus_at(&exps, t);
        let vals = if seq {
            par::map_seq(thetas, job)
        } else {
            par::map(thetas, job)
        };
        vals.into_iter().fold(f64::INFINITY, f64::min)
    };

    let mut group = c.benchmark_group("circle_modulus_200k");
    group.bench_function("sequential", |b| {
        b.iter(|| run(grid.clone(), true));
    });
    for threads in thread_counts() {
        group.bench_with_input(BenchmarkId::new("parallel", threads), &threads, |b, &t| {
            b.iter(|| pooled(t, || run(grid.clone(), false)));
        });
    }
    group.finish();
}

fn bench_abc_chart(c: &mut Criterion) {
    let grid: Vec<RealParam> = (1..=60).map(|k| RealParam::Rat(rat(k, 30))).collect();
    let a_grid: Vec<RealParam> = grid.iter().take(30).cloned().collect();

    let mut group = c.benchmark_group("abc_chart_30x60");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        // chart itself uses par::map internally; a 1-thread pool is the
        // sequential baseline with identical code.
        b.iter(|| pooled(1, || abc::chart(&a_grid, &grid).len()));
    });
    group.bench_function("parallel", |b| {
        b.iter(|| pooled(num_cpus(), || abc::chart(&a_grid, &grid).len()));
    });
    group.finish();
}

fn num_cpus() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

fn thread_counts() -> Vec<usize> {
    let mut counts = vec![1, num_cpus()];
    counts.dedup();
    counts
}

criterion_group!(benches, bench_gk_tables, bench_circle_grid, bench_abc_chart);
criterion_main!(benches);
