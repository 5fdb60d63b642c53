use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wdeg_bench::EXAMPLES;
use wdeg_core::galoisdeg::{analyze_degree, DegreeOptions};
use wdeg_core::invbirkhoff::enumerate_vertices;
use wdeg_core::rootcert::isolate_roots;
use wdeg_core::transport::minimize_over_vertices;
use wdeg_core::IotaAction;

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("roots");
    for ex in EXAMPLES {
        let (p, q) = ex.polys();
        for bits in [128, 512] {
            group.bench_with_input(BenchmarkId::new(ex.name, bits), &bits, |b, &bits| {
                b.iter(|| (isolate_roots(black_box(&p), bits).unwrap(), isolate_roots(black_box(&q), bits).unwrap()))
            });
        }
    }
    group.finish();
}

fn vertices(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertices");
    for (r, s) in [((0, 2), (0, 2)), ((1, 2), (3, 1)), ((0, 3), (2, 2)), ((2, 2), (0, 3))] {
        let iota = IotaAction::from_signatures(r, s).unwrap();
        group.bench_function(format!("{r:?}{s:?}"), |b| b.iter(|| enumerate_vertices(black_box(&iota)).unwrap()));
    }
    group.finish();
}

fn transport(c: &mut Criterion) {
    let mut group = c.benchmark_group("transport");
    for ex in EXAMPLES {
        let prep = ex.prepare(128);
        group.bench_function(ex.name, |b| {
            b.iter(|| minimize_over_vertices(&prep.pr, &prep.qr, black_box(&prep.vertices), 4096).unwrap())
        });
    }
    group.finish();
}

fn degree(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree");
    group.sample_size(10);
    let opts = DegreeOptions::default();
    for ex in &EXAMPLES[..2] {
        let prep = ex.prepare(128);
        group.bench_function(ex.name, |b| {
            b.iter(|| analyze_degree(&prep.optimal, &prep.pr, &prep.qr, &prep.value, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, roots, vertices, transport, degree);
criterion_main!(benches);
