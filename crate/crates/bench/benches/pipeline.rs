use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jung_tame::fixtures::PUISEUX_CORPUS;
use jung_tame::puiseux::default_trunc_terms;
use jung_tame::{decompose, expansions_at_infinity, parse_poly, recompose, verify_division, EngineConfig, FieldMode, Var, WitnessConfig};
use jung_tame_bench::sample_map;

fn decomposition(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    for (depth, deg) in [(3, 3), (5, 3), (5, 4)] {
        let f = sample_map(depth, deg);
        g.bench_with_input(BenchmarkId::new(format!("depth{depth}-tri{deg}"), f.max_degree()), &f, |b, f| {
            b.iter(|| recompose(&decompose(black_box(f)).unwrap()))
        });
    }
    g.finish();
}

fn expansions(c: &mut Criterion) {
    let cfg = EngineConfig::default();
    let curves: Vec<_> = PUISEUX_CORPUS.iter().map(|s| parse_poly(s, FieldMode::Rational).unwrap()).collect();
    c.bench_function("puiseux corpus", |b| {
        b.iter(|| {
            for h in &curves {
                let d = h.degree_in(Var::Y).finite().unwrap();
                black_box(expansions_at_infinity(h, default_trunc_terms(d), &cfg).unwrap());
            }
        })
    });
}

fn witness(c: &mut Criterion) {
    let wc = WitnessConfig::default();
    let mut g = c.benchmark_group("verify_division");
    for (depth, deg) in [(1, 2), (3, 2), (3, 3)] {
        let f = sample_map(depth, deg);
        g.bench_with_input(BenchmarkId::new(format!("depth{depth}-tri{deg}"), f.max_degree()), &f, |b, f| {
            b.iter(|| verify_division(black_box(f), &wc).unwrap())
        });
    }
    g.finish();
}

fn parsing(c: &mut Criterion) {
    let text = sample_map(5, 3).to_string();
    let p = text.split(';').next().unwrap().to_string();
    c.bench_function("parse component", |b| b.iter(|| parse_poly(black_box(&p), FieldMode::Rational).unwrap()));
}

criterion_group!(benches, decomposition, expansions, witness, parsing);
criterion_main!(benches);
