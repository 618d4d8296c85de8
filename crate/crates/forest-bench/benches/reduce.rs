//! Reduction engine and certificate checker throughput.
//!
//! The dodecahedron sits under the default exact threshold and times the
//! solve-small path; the 6x6 grid and four linked cubes are over it and
//! time the rule matching and surgery machinery.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use forest::bounds::GirthClass;
use forest::families;
use forest::graph::Graph;
use forest::reducer::{self, ReduceOptions};

fn fixture(spec: &str) -> Graph {
    families::make(&spec.parse().expect("family spec parses")).expect("fixture builds")
}

fn bench_reduce(c: &mut Criterion) {
    let opts = ReduceOptions::default();
    let cases = [
        ("dodecahedron", GirthClass::Girth5),
        ("grid:6x6", GirthClass::Girth4),
        ("cubes-linked:4", GirthClass::Girth4),
    ];
    for (spec, class) in cases {
        let g = fixture(spec);
        c.bench_function(&format!("reduce/{spec}"), |b| {
            b.iter(|| reducer::reduce(black_box(&g), class, &opts).expect("reduces"))
        });
    }
}

fn bench_verify(c: &mut Criterion) {
    let g = fixture("grid:6x6");
    let cert =
        reducer::reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).expect("reduces");
    c.bench_function("verify/grid:6x6", |b| {
        b.iter(|| reducer::verify(black_box(&g), black_box(&cert)).expect("verifies"))
    });
}

criterion_group!(benches, bench_reduce, bench_verify);
criterion_main!(benches);
