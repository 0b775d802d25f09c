use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigUint;

use permseq_core::bounds::{crossing_rhin, laubl_candidates, BoundContext};
use permseq_core::census::{cycle_census, CensusSettings};
use permseq_core::dynamics::{run_trajectory, RunSettings};
use permseq_core::numerics::{cf_expand_with_retry, hp_log};
use permseq_core::perm::{make_pabcd, Permutation};
use permseq_core::Nat;

fn apply_throughput(c: &mut Criterion) {
    let spec = make_pabcd(2, 4, 3, 3).unwrap();
    c.bench_function("apply 1k seeds", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for x in 0u64..1_000 {
                let y = spec.apply(black_box(&Nat::from(x))).unwrap();
                acc ^= y.to_u64().unwrap_or(0);
            }
            acc
        })
    });
}

fn trajectory(c: &mut Criterion) {
    let spec = make_pabcd(2, 4, 3, 3).unwrap();
    let settings = RunSettings::default();
    c.bench_function("trajectory to the 93-cycle", |b| {
        b.iter(|| run_trajectory(&spec, black_box(&Nat::from(90u64)), &settings).unwrap())
    });
}

fn census(c: &mut Criterion) {
    let spec = make_pabcd(2, 4, 3, 3).unwrap();
    let settings = CensusSettings {
        include_elements: false,
        ..CensusSettings::default()
    };
    let mut group = c.benchmark_group("census");
    group.sample_size(20);
    group.bench_function("sweep below 1e4", |b| {
        b.iter(|| cycle_census(&spec, black_box(10_000), &settings).unwrap())
    });
    group.finish();
}

fn continued_fraction(c: &mut Criterion) {
    let q_limit = BigUint::from(1_000_000_000_000_000u64);
    c.bench_function("convergents to q = 1e15", |b| {
        b.iter(|| {
            cf_expand_with_retry(
                |bits| {
                    let num = hp_log(&BigUint::from(3u32), &BigUint::from(2u32), bits)?;
                    let den = hp_log(&BigUint::from(4u32), &BigUint::from(3u32), bits)?;
                    Ok(num.div(&den))
                },
                black_box(&q_limit),
                256,
                1 << 14,
            )
            .unwrap()
        })
    });
}

fn crossings(c: &mut Criterion) {
    let ctx = BoundContext::new(1, 3, 2, 2, 1_000_000, 256).unwrap();
    let rhin = ctx.rhin_params().unwrap();
    c.bench_function("transcendence crossing m = 20", |b| {
        b.iter(|| crossing_rhin(&ctx, &rhin, black_box(20)).unwrap())
    });
}

fn candidate_scan(c: &mut Criterion) {
    let ctx = BoundContext::new(1, 3, 2, 2, 1_000_000, 256).unwrap();
    let mut group = c.benchmark_group("candidates");
    group.sample_size(20);
    group.bench_function("band scan to l = 2000", |b| {
        b.iter(|| laubl_candidates(&ctx, black_box(2_000)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    apply_throughput,
    trajectory,
    census,
    continued_fraction,
    crossings,
    candidate_scan
);
criterion_main!(benches);
