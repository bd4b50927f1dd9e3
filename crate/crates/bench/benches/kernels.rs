use criterion::{black_box, criterion_group, criterion_main, Criterion};

use orlicz_lab::crossed::grid::GridSpec;
use orlicz_lab::norms::{amemiya_norm, luxemburg_norm};
use orlicz_lab::svf::SingularValueFunction;
use orlicz_lab::OrliczFunction;
use orlicz_lab_bench::{diagonal_instance, embedded, hermitian_block};

fn bench_jacobi(c: &mut Criterion) {
    for dim in [8usize, 16, 32] {
        let a = hermitian_block(dim);
        c.bench_function(&format!("jacobi_eig_{dim}"), |b| {
            b.iter(|| black_box(a.herm_eigs()))
        });
    }
}

fn bench_norms(c: &mut Criterion) {
    let a = diagonal_instance(8);
    let psi2 = OrliczFunction::power(2.0).unwrap();
    c.bench_function("luxemburg_norm_8_atoms", |b| {
        b.iter(|| black_box(luxemburg_norm(&a, &psi2)))
    });
    c.bench_function("amemiya_norm_8_atoms", |b| {
        b.iter(|| black_box(amemiya_norm(&a, &psi2)))
    });
    c.bench_function("svf_of_hermitian_16", |b| {
        let h = hermitian_block(16);
        b.iter(|| black_box(SingularValueFunction::of(&h)))
    });
}

fn bench_crossed(c: &mut Criterion) {
    let a = diagonal_instance(8);
    let x = embedded(&a);
    c.bench_function("crossed_mu1_closed_form", |b| {
        b.iter(|| black_box(x.mu(1.0).unwrap()))
    });
    c.bench_function("grid_sample_1024", |b| {
        b.iter(|| black_box(x.to_grid(GridSpec::coarse())))
    });
    let g = x.to_grid(GridSpec::coarse());
    c.bench_function("grid_lambda_1024", |b| {
        b.iter(|| black_box(g.lambda(1.0)))
    });
}

criterion_group!(benches, bench_jacobi, bench_norms, bench_crossed);
criterion_main!(benches);
