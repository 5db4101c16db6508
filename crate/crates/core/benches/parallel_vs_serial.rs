//! Compares the rayon-backed batch verification against a
//! single-threaded run of the same work. The sequential side uses a
//! one-thread rayon pool, which matches the `--no-default-features`
//! fallback path operation for operation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gr_braid_core::braid_sigma::{sigma, sigma_word};
use gr_braid_core::pluecker::{eq_mod, EqOpts, MinorIndex, PlueckerPoly};
use gr_braid_core::translation::commute_check;

fn braid_relation_batch(m: usize) -> bool {
    let mut ok = true;
    for a in 1..=(2 * m as i64) {
        for b in (a + 1)..=(2 * m as i64 + 1) {
            for c in (b + 1)..=(2 * m as i64 + 2) {
                let mut entries = vec![a, b, c];
                entries.extend((c + 1)..(c + 1 + (m as i64 - 3)));
                let p = PlueckerPoly::var(MinorIndex::new(entries).unwrap());
                let lhs = sigma_word(&[1, 2, 1], &p).unwrap();
                let rhs = sigma_word(&[2, 1, 2], &p).unwrap();
                ok &= eq_mod(&lhs, &rhs, EqOpts::default()).unwrap();
            }
        }
    }
    ok
}

fn bench_eq_mod(c: &mut Criterion) {
    let p134 = PlueckerPoly::var(MinorIndex::new(vec![1, 3, 4]).unwrap());
    let lhs = sigma(2, &p134).unwrap();
    let rhs = PlueckerPoly::var(MinorIndex::new(vec![1, 4, 5]).unwrap());
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();

    let mut group = c.benchmark_group("eq_mod_32_trials");
    let opts = EqOpts { trials: 32, ..EqOpts::default() };
    group.bench_function(BenchmarkId::new("parallel", "global"), |b| {
        b.iter(|| eq_mod(&lhs, &rhs, opts).unwrap())
    });
    group.bench_function(BenchmarkId::new("serial", "1-thread"), |b| {
        b.iter(|| single.install(|| eq_mod(&lhs, &rhs, opts).unwrap()))
    });
    group.finish();
}

fn bench_commute_check(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("commute_check_n3");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", "global"), |b| {
        b.iter(|| commute_check(1, 3, (-6, 12), EqOpts::default()).unwrap())
    });
    group.bench_function(BenchmarkId::new("serial", "1-thread"), |b| {
        b.iter(|| single.install(|| commute_check(1, 3, (-6, 12), EqOpts::default()).unwrap()))
    });
    group.finish();
}

fn bench_braid_sweep(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("braid_relation_sweep_m3");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("parallel", "global"), |b| {
        b.iter(|| assert!(braid_relation_batch(3)))
    });
    group.bench_function(BenchmarkId::new("serial", "1-thread"), |b| {
        b.iter(|| single.install(|| assert!(braid_relation_batch(3))))
    });
    group.finish();
}

criterion_group!(benches, bench_eq_mod, bench_commute_check, bench_braid_sweep);
criterion_main!(benches);
