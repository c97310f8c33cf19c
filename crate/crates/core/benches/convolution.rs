//! Chain convolution and closed-form chain construction, timed on the
//! default rayon pool and on a one-thread pool. Build with
//! `--no-default-features` to time the plain sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tsmult_core::germs::diagonal_microlocal_chain;
use tsmult_core::thom_sebastiani::convolved_microlocal_chain;
use tsmult_core::{Germ, Rat};

const GERMS: [&[u32]; 3] = [&[2, 3, 5], &[5, 7, 9], &[3, 4, 5, 6]];

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    vec![("default-pool".into(), default), ("one-thread".into(), one)]
}

fn bench(c: &mut Criterion) {
    let window = Rat::int(3);
    let label = if tsmult_core::par::is_parallel() { "rayon" } else { "sequential" };
    for (name, f) in [
        ("convolved", convolved_microlocal_chain as fn(&Germ, Rat) -> tsmult_core::Result<tsmult_core::JumpChain>),
        ("closed_form", diagonal_microlocal_chain as fn(&Germ, Rat) -> tsmult_core::Result<tsmult_core::JumpChain>),
    ] {
        let mut group = c.benchmark_group(format!("{name}/{label}"));
        group.sample_size(10);
        for (pool_name, pool) in pools() {
            for ms in GERMS {
                let g = Germ::diagonal(ms).unwrap();
                group.bench_with_input(BenchmarkId::new(&pool_name, format!("{ms:?}")), &g, |b, g| {
                    b.iter(|| pool.install(|| f(black_box(g), window).unwrap()))
                });
            }
        }
        group.finish();
    }
}

criterion_group!(benches, bench);
criterion_main!(benches);
