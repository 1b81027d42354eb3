use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hilburch::{
    buchberger_lex, canonical_deformation, decode_cellpoint, reduced_standard_basis, Cap,
    Staircase,
};
use hilburch_cli::fixtures::fixtures;

fn standard_bases(c: &mut Criterion) {
    let corpus = fixtures();
    c.bench_function("reduced_basis/polynomial_pair", |b| {
        b.iter(|| reduced_standard_basis(black_box(&corpus.leading_terms.gens)).unwrap())
    });
    c.bench_function("reduced_basis/series_tail", |b| {
        b.iter(|| reduced_standard_basis(black_box(&corpus.canonical_reduction.gens)).unwrap())
    });
}

fn minors(c: &mut Criterion) {
    let corpus = fixtures();
    let n = decode_cellpoint(&corpus.cover.point());
    c.bench_function("signed_minors/quintic_point", |b| {
        b.iter(|| black_box(&n).signed_minors(Cap::Unbounded).unwrap())
    });
}

fn canonical(c: &mut Criterion) {
    let corpus = fixtures();
    c.bench_function("canonical_deformation/series_tail", |b| {
        b.iter(|| canonical_deformation(black_box(&corpus.canonical_reduction.gens)).unwrap())
    });
}

fn stratification(c: &mut Criterion) {
    c.bench_function("staircase_enumeration/colength_10", |b| {
        b.iter(|| Staircase::enumerate(black_box(10)))
    });
}

fn groebner(c: &mut Criterion) {
    let corpus = fixtures();
    let minors = corpus
        .mixed_support
        .matrix()
        .signed_minors(Cap::Unbounded)
        .unwrap();
    c.bench_function("buchberger_lex/mixed_support_minors", |b| {
        b.iter(|| buchberger_lex(black_box(&minors)).unwrap())
    });
}

criterion_group!(benches, standard_bases, minors, canonical, stratification, groebner);
criterion_main!(benches);
