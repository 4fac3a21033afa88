use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use twistvo::unitary::{verify_rho_hom, CharacterSpec, RhoConfig};
use twistvo::vertex::{commutator_matrix, mode_matrix, verify_thm215, Thm215Config, VertexSpec};
use twistvo::Scalar;
use twistvo_bench::{regimes, window};

fn modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("mode_matrix");
    for depth in [3u32, 5] {
        let fw = window(3, depth, 2);
        let spec = VertexSpec::new(0, 1, Scalar::zeta(3, 1));
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| mode_matrix(&fw, black_box(&spec), -1, d).unwrap())
        });
    }
    group.finish();
}

fn commutators(c: &mut Criterion) {
    let fw = window(3, 5, 4);
    let u = mode_matrix(&fw, &VertexSpec::new(0, 1, Scalar::zeta(3, 1)), 1, 5).unwrap();
    let v = mode_matrix(&fw, &VertexSpec::new(1, 2, Scalar::zeta(3, 2)), -2, 5).unwrap();
    c.bench_function("commutator nu=3 depth=3", |b| {
        b.iter(|| commutator_matrix(black_box(&u), black_box(&v), 3).unwrap())
    });
}

fn commutator_formula(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutator formula nu=2 depth=3");
    group.sample_size(10);
    for (name, a, b) in regimes() {
        let cfg = Thm215Config::new(2, a, b, 3, 1);
        group.bench_function(name, |bch| bch.iter(|| verify_thm215(&cfg).unwrap()));
    }
    group.finish();
}

fn representation(c: &mut Criterion) {
    let mut group = c.benchmark_group("rho homomorphism nu=2");
    group.sample_size(10);
    for (name, chi) in [
        ("trivial", CharacterSpec::trivial()),
        ("Z/3", CharacterSpec::cyclic(3)),
    ] {
        let cfg = RhoConfig::new(2, chi, 3, 1);
        group.bench_function(name, |b| b.iter(|| verify_rho_hom(&cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(
    benches,
    modes,
    commutators,
    commutator_formula,
    representation
);
criterion_main!(benches);
