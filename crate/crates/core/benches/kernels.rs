use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;

use ringel::commutant::{coend_dim, commutant_basis, lie_invariants_lazy};
use ringel::diagrams::{AlgebraKind, DiagramAlgebra};
use ringel::interp::{algebra_action, InterpContext};
use ringel::superlinalg::field::MERSENNE_31;
use ringel::supergroups::{component_extras, osp};
use ringel::{Field, PrimeField, Rationals};

fn kernels(c: &mut Criterion) {
    let q = Rationals;
    let p = PrimeField::new(MERSENNE_31).unwrap();
    let ctx = InterpContext::orthosymplectic(&q, 2, 2).unwrap();
    let b2 = DiagramAlgebra::build(&q, AlgebraKind::BrauerC { r: 2 }, q.from_i64(-2)).unwrap();
    let t2 = algebra_action(&b2, &ctx).unwrap();
    let g = osp(&p, 2, 1).unwrap();
    let sigma: Vec<_> = component_extras(&p, g.space).reflection.into_iter().collect();

    let pools = [("parallel", ThreadPoolBuilder::new().build().unwrap()), ("1-thread", ThreadPoolBuilder::new().num_threads(1).build().unwrap())];
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::new("table_brauer_c4", name), |b| {
            b.iter(|| pool.install(|| DiagramAlgebra::build(&q, AlgebraKind::BrauerC { r: 4 }, q.from_i64(3)).unwrap()))
        });
        group.bench_function(BenchmarkId::new("commutant_t2", name), |b| b.iter(|| pool.install(|| commutant_basis(&q, &t2).unwrap().len())));
        group.bench_function(BenchmarkId::new("coend_t2", name), |b| b.iter(|| pool.install(|| coend_dim(&q, &t2).unwrap())));
        group.bench_function(BenchmarkId::new("invariants_osp_2_1_v4", name), |b| {
            b.iter(|| pool.install(|| lie_invariants_lazy(&p, &g, &sigma, 4).unwrap().len()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
