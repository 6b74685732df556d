use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;

use pgarcs::{rng, search, verify_arc, ArcSet, Field, Plane, SearchConfig};

fn field_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("field_mul");
    for q in [256u64, 65_536, 1 << 20] {
        let f = Field::with_order(q).unwrap();
        let xs: Vec<_> = (1..1025u32).filter_map(|i| f.element(i * 97 % f.order())).collect();
        g.bench_with_input(BenchmarkId::from_parameter(q), &xs, |b, xs| {
            b.iter(|| xs.windows(2).fold(f.element(1).unwrap(), |acc, w| f.mul(acc, f.add(w[0], w[1]))))
        });
    }
    g.finish();
}

fn random_completion(c: &mut Criterion) {
    let mut g = c.benchmark_group("random_complete_arc");
    for q in [31u64, 127] {
        let plane = Plane::with_order(q).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(q), &plane, |b, plane| {
            let mut r = rng::stream(1, 0);
            b.iter(|| {
                let mut arc = ArcSet::new(plane, &plane.frame_points()).unwrap();
                loop {
                    let cands = arc.uncovered_points();
                    if cands.is_empty() {
                        break arc.len();
                    }
                    arc.add_point(cands[r.random_range(0..cands.len())]).unwrap();
                }
            })
        });
    }
    g.finish();
}

fn greedy_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for q in [49u64, 127, 251] {
        let config = SearchConfig { attempts: 4, ..SearchConfig::default() };
        g.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| search(black_box(q), &config).unwrap().best_size)
        });
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let plane = Plane::with_order(61).unwrap();
    let arc = search(61, &SearchConfig { attempts: 2, ..SearchConfig::default() }).unwrap().best;
    c.bench_function("verify_arc/61", |b| b.iter(|| verify_arc(&plane, black_box(&arc)).complete));
}

criterion_group!(benches, field_ops, random_completion, greedy_search, verification);
criterion_main!(benches);
