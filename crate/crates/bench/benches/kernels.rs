use std::hint::black_box;

use ascheme_core::algebra::FiniteGroup;
use ascheme_core::analysis::{automorphisms_with, SearchBudget};
use ascheme_core::constructions::{build_affine_unitriangular, build_field_affine, build_lc_scheme, BuildOptions};
use ascheme_core::scheme::{verify_scheme_with, VerifyMode};
use criterion::{criterion_group, criterion_main, Criterion};

fn verify(c: &mut Criterion) {
    let o = BuildOptions::default();
    let mut g = c.benchmark_group("verify");
    for (name, scheme) in [
        ("twisted-45", build_lc_scheme(3, &FiniteGroup::cyclic(5), None, &o).unwrap().scheme),
        ("unitriangular-81", build_affine_unitriangular(3, &o).unwrap().scheme),
        ("field-117", build_field_affine(3, &o).unwrap().scheme),
    ] {
        g.bench_function(format!("{name}/fast"), |b| {
            b.iter(|| verify_scheme_with(black_box(scheme.table()), VerifyMode::Fast))
        });
        g.bench_function(format!("{name}/full"), |b| {
            b.iter(|| verify_scheme_with(black_box(scheme.table()), VerifyMode::Full))
        });
    }
    g.finish();
}

fn automorphisms(c: &mut Criterion) {
    let o = BuildOptions::default();
    let budget = SearchBudget::default();
    let mut g = c.benchmark_group("automorphisms");
    g.sample_size(20);
    for (name, scheme) in [
        ("twisted-45", build_lc_scheme(3, &FiniteGroup::cyclic(5), None, &o).unwrap().scheme),
        ("unitriangular-81", build_affine_unitriangular(3, &o).unwrap().scheme),
    ] {
        g.bench_function(name, |b| b.iter(|| automorphisms_with(black_box(&scheme), &budget).unwrap()));
    }
    g.finish();
}

fn builders(c: &mut Criterion) {
    let o = BuildOptions::default();
    let mut g = c.benchmark_group("build");
    g.sample_size(20);
    g.bench_function("twisted p=5 C7", |b| b.iter(|| build_lc_scheme(5, &FiniteGroup::cyclic(7), None, &o).unwrap()));
    g.bench_function("unitriangular p=3", |b| b.iter(|| build_affine_unitriangular(3, &o).unwrap()));
    g.bench_function("field p=3", |b| b.iter(|| build_field_affine(3, &o).unwrap()));
    g.finish();
}

criterion_group!(benches, verify, automorphisms, builders);
criterion_main!(benches);
