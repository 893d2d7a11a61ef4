use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use unimod_core::matrix::design_matrix;
use unimod_core::oracle::{is_unimodular_exact, is_unimodular_randomized, OracleConfig, DEFAULT_SEED};
use unimod_core::{DVector, NamedComplex};

fn matrix(name: &str, d: Option<Vec<u64>>) -> unimod_core::IntegerMatrix {
    let c = name.parse::<NamedComplex>().unwrap().complex().unwrap();
    let d = d.map_or_else(|| DVector::binary(c.n()), |d| DVector::new(d).unwrap());
    design_matrix(&c, &d).unwrap()
}

fn exact(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("exact_scan");
    for (label, name, d) in [
        ("c4", "c4", None),
        ("c4_d2223", "c4", Some(vec![2, 2, 2, 3])),
        ("j1", "j1", None),
        ("dmn_1_1", "dmn:1,1", None),
    ] {
        let a = matrix(name, d);
        g.bench_with_input(BenchmarkId::from_parameter(label), &a, |b, a| {
            b.iter(|| is_unimodular_exact(a, &cfg).unwrap())
        });
    }
    g.finish();
}

fn randomized(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let a = matrix("o6", None);
    c.bench_function("randomized_o6", |b| {
        b.iter(|| is_unimodular_randomized(&a, DEFAULT_SEED, 1_000, &cfg).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = exact, randomized
}
criterion_main!(benches);
