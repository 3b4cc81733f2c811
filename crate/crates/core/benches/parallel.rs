//! Sequential against rayon execution for the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use multbound::algebra::ExponentVector;
use multbound::exec::Execution;
use multbound::polytope::{mixed_volume_with, Limits, Polytope};
use multbound::verify::{run_property_suite, InstanceSpec, Suite};

const POLICIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn body(n: usize, shift: i64) -> Polytope {
    let mut pts = vec![ExponentVector::zero(n)];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 2 + shift;
        e[(i + 1) % n] += 1;
        pts.push(ExponentVector::new(e));
    }
    Polytope::hull(&pts).expect("full-dimensional")
}

fn mixed_volume(c: &mut Criterion) {
    let mut g = c.benchmark_group("mixed_volume");
    for n in [3, 4] {
        let bodies: Vec<Polytope> = (0..n).map(|i| body(n, i as i64)).collect();
        let refs: Vec<&Polytope> = bodies.iter().collect();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, n), &refs, |b, refs| {
                b.iter(|| mixed_volume_with(refs, exec).expect("valid bodies"))
            });
        }
    }
    g.finish();
}

fn lattice_count(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice_count");
    let simplex = Polytope::standard_simplex(4).scale(12);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| simplex.lattice_count_with(&Limits::default(), exec).expect("within limits"))
        });
    }
    g.finish();
}

fn suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for s in [Suite::Bk, Suite::VolIvol] {
        let spec = InstanceSpec::for_suite(s, 1).with_trials(20);
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, s.name()), &spec, |b, spec| {
                b.iter(|| run_property_suite(s, spec, exec).expect("valid spec"))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, mixed_volume, lattice_count, suite);
criterion_main!(benches);
