use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qclass_core::natrep::{qybe_residual, NatAction};
use qclass_core::rootdata::LambdaEval;
use qclass_core::singular::{verify_singular, ConstructionSet};
use qclass_core::spectra::central_character;
use qclass_core::tensor::verify_filtration;
use qclass_core::verma::VermaModule;
use qclass_core::{ClassData, Mode, OrthoRank, ParamAssignment, WeightVec};
use std::hint::black_box;

fn verma(n: usize) -> VermaModule {
    let class = ClassData::symmetric(n).validate().unwrap();
    VermaModule::new(&ParamAssignment::new(&class, Mode::Specialized))
}

fn qybe(c: &mut Criterion) {
    let mut g = c.benchmark_group("qybe_residual");
    g.sample_size(10);
    for n in [5, 7, 8] {
        let nat = NatAction::new(OrthoRank::new(n).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &nat, |b, nat| b.iter(|| qybe_residual(black_box(nat))));
    }
    g.finish();
}

fn singular(c: &mut Criterion) {
    let mut g = c.benchmark_group("singular_vector");
    g.sample_size(10);
    for n in [5, 7, 8, 9] {
        let class = ClassData::symmetric(n).validate().unwrap();
        let cons = ConstructionSet::build(&class).unwrap();
        // A fresh module each iteration so the weight-space cache is not reused.
        g.bench_function(BenchmarkId::from_parameter(n), |b| b.iter(|| verify_singular(&cons, &verma(n)).unwrap()));
    }
    g.finish();
}

fn filtration(c: &mut Criterion) {
    let mut g = c.benchmark_group("tensor_filtration");
    g.sample_size(10);
    for n in [5, 7] {
        g.bench_function(BenchmarkId::from_parameter(n), |b| b.iter(|| verify_filtration(&verma(n)).unwrap()));
    }
    g.finish();
}

fn character(c: &mut Criterion) {
    let rank = OrthoRank::new(8).unwrap();
    let lambda = LambdaEval::integral(&WeightVec::eps(rank.rank(), 0, 2));
    c.bench_function("central_character_so8_k4", |b| {
        b.iter(|| central_character(&rank, black_box(&lambda), 4).unwrap())
    });
}

criterion_group!(benches, qybe, singular, filtration, character);
criterion_main!(benches);
