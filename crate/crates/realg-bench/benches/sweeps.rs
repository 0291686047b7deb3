use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use realg_bench::{boolean_par, boolean_tens, tripos};
use realg_core::catalog::catalog;
use realg_core::separators::{all_separators, generate_separator};
use realg_core::suite::{run_criterion, Scope};
use realg_core::tripos::{check_beck_chevalley, check_beck_chevalley_by_enumeration, check_quantifiers, check_quantifiers_by_enumeration};

fn quantifiers(c: &mut Criterion) {
    let mut g = c.benchmark_group("quantifiers");
    g.sample_size(10);
    for atoms in [1, 2] {
        let t = tripos(boolean_par(atoms));
        g.bench_with_input(BenchmarkId::new("row-factored", atoms), &t, |b, t| b.iter(|| check_quantifiers(t, 2, 2)));
        g.bench_with_input(BenchmarkId::new("enumeration", atoms), &t, |b, t| {
            b.iter(|| check_quantifiers_by_enumeration(t, 2, 2))
        });
    }
    let t = tripos(boolean_tens(2));
    g.bench_function("beck-chevalley/row-factored", |b| b.iter(|| check_beck_chevalley(&t, &[0, 0], 1, 2)));
    g.bench_function("beck-chevalley/enumeration", |b| b.iter(|| check_beck_chevalley_by_enumeration(&t, &[0, 0], 1, 2)));
    g.finish();
}

fn separators(c: &mut Criterion) {
    let instances = catalog(4, 3, 2);
    let mut g = c.benchmark_group("separators");
    g.bench_function("generate/top on catalogue", |b| {
        b.iter(|| {
            for i in &instances {
                let top = i.structure.lattice().top();
                generate_separator(&i.structure, &[top], false).unwrap();
            }
        })
    });
    let s = boolean_par(3);
    g.bench_function("all/boolean 3 atoms", |b| b.iter(|| all_separators(&s, false)));
    g.finish();
}

fn criteria(c: &mut Criterion) {
    let mut g = c.benchmark_group("criteria");
    g.sample_size(10);
    for id in [1, 4, 5, 8] {
        g.bench_with_input(BenchmarkId::new("fast", id), &id, |b, &id| b.iter(|| run_criterion(id, Scope::Fast, 0)));
    }
    g.finish();
}

criterion_group!(benches, quantifiers, separators, criteria);
criterion_main!(benches);
