//! Trial-loop throughput, grouped by execution mode. Build with default
//! features for the rayon path and with `--no-default-features` for the
//! sequential one; group names carry the mode so the two runs line up in
//! criterion's reports. The parallel build also benches a one-thread pool,
//! which isolates scheduling overhead from actual parallel speedup.

use criterion::{criterion_group, criterion_main, Criterion};

use ctclab::experiments::{run_paradox, run_signalling, Bitstring, Model};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_signalling(c: &mut Criterion) {
    let message = Bitstring::from_bits((0..256).map(|i| (i % 2) as u8)).unwrap();
    let mut group = c.benchmark_group(format!("signal/{}", mode()));
    group.sample_size(10);
    group.bench_function("pctc_256_bits", |b| {
        b.iter(|| run_signalling(&message, Model::Pctc, 7).unwrap())
    });
    group.bench_function("deutsch_256_bits", |b| {
        b.iter(|| run_signalling(&message, Model::Deutsch, 7).unwrap())
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        group.bench_function("deutsch_256_bits_one_thread", |b| {
            b.iter(|| pool.install(|| run_signalling(&message, Model::Deutsch, 7).unwrap()))
        });
    }
    group.finish();
}

fn bench_paradox(c: &mut Criterion) {
    let theorem: Bitstring = "01101001".parse().unwrap();
    let mut group = c.benchmark_group(format!("paradox/{}", mode()));
    group.sample_size(10);
    group.bench_function("2048_trials", |b| {
        b.iter(|| run_paradox(2048, &theorem, 11).unwrap())
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        group.bench_function("2048_trials_one_thread", |b| {
            b.iter(|| pool.install(|| run_paradox(2048, &theorem, 11).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(trials, bench_signalling, bench_paradox);
criterion_main!(trials);
