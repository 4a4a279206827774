use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use learnability::dimensions::{fat_gamma, ldim_value, pdim, LdimTable};
use learnability::online::soa_run;
use learnability::privacy::{private_learn_mc, stable_histogram, PrivacyParams};
use learnability::rng::seeded;
use learnability::stability::GlobalStableLearner;
use learnability::LabeledExample;
use learnability_bench::{complete, random_multiclass, random_real, three_constants};

fn ldim(c: &mut Criterion) {
    let mut g = c.benchmark_group("ldim");
    for n in [4usize, 5, 6] {
        let class = complete(n);
        g.bench_with_input(BenchmarkId::new("complete", n), &class, |b, class| {
            b.iter(|| ldim_value(black_box(class), 0).unwrap())
        });
    }
    for rows in [16usize, 32, 64] {
        let class = random_multiclass(rows, 1);
        g.bench_with_input(BenchmarkId::new("random_tau1", rows), &class, |b, class| {
            b.iter(|| ldim_value(black_box(class), 1).unwrap())
        });
    }
    let class = random_multiclass(20, 2);
    g.bench_function("dense_table_20_rows", |b| b.iter(|| LdimTable::new(black_box(&class), 0).unwrap()));
    g.finish();
}

fn real_dimensions(c: &mut Criterion) {
    let mut g = c.benchmark_group("real");
    let f = random_real(12, 4, 3);
    g.bench_function("fat_0.4", |b| b.iter(|| fat_gamma(black_box(&f), 0.4).unwrap()));
    g.bench_function("pdim", |b| b.iter(|| pdim(black_box(&f)).unwrap()));
    g.finish();
}

fn learners(c: &mut Criterion) {
    let class = complete(6);
    let seq: Vec<LabeledExample> = (0..64).map(|t| LabeledExample::new(t % 6, class.get(37, t % 6))).collect();
    c.bench_function("soa_run_64_rounds", |b| b.iter(|| soa_run(&class, 0, black_box(&seq)).unwrap()));

    let (class, dist) = three_constants();
    let g = GlobalStableLearner::new(&class, 0.1).unwrap();
    let mut rng = seeded(4);
    c.bench_function("g_run_three_constants", |b| b.iter(|| g.run(&dist, &mut rng).unwrap()));

    let p = PrivacyParams::approximate(0.5, 0.01).unwrap();
    let items: Vec<u16> = (0..5000u16).map(|i| i % 40).collect();
    let mut rng = seeded(5);
    c.bench_function("stable_histogram_5000", |b| {
        b.iter(|| stable_histogram(black_box(&items), p, 0.1, &mut rng).unwrap())
    });

    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("private_learn_three_constants", |b| {
        b.iter(|| private_learn_mc(&class, &dist, p, 0.2, 0.2, 6).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ldim, real_dimensions, learners);
criterion_main!(benches);
