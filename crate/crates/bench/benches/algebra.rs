use brauer_core::g2::{verify, G2Algebra};
use brauer_core::presentations::derived_sets_for;
use brauer_core::prover::{certify_lemma_pipeline, Mode, Prover, SearchBounds};
use brauer_core::{presentation_for, MonoidWord, RootType};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn table(c: &mut Criterion) {
    c.bench_function("g2 table build", |b| b.iter(|| G2Algebra::build().unwrap()));
}

fn associativity(c: &mut Criterion) {
    let alg = G2Algebra::build().unwrap();
    c.bench_function("g2 verify (no case proofs)", |b| {
        b.iter(|| verify(black_box(&alg), false).unwrap())
    });
}

fn prover(c: &mut Criterion) {
    let g2 = presentation_for(RootType::G2Folded).unwrap();
    let p = Prover::new(&g2, Mode::Skeleton).unwrap();
    let (l, r) = (
        MonoidWord::parse("r1 r0 e1 r0 r1 e0").unwrap(),
        MonoidWord::parse("e0").unwrap(),
    );
    c.bench_function("prove g2 collapse", |b| {
        b.iter(|| p.prove(&l, &r, SearchBounds::default()).unwrap())
    });
    let d4 = presentation_for(RootType::D(4)).unwrap();
    let sets = derived_sets_for(&d4).unwrap();
    c.bench_function("d4 lemma pipeline", |b| {
        b.iter(|| {
            let mut p = Prover::new(&d4, Mode::Skeleton).unwrap();
            certify_lemma_pipeline(&mut p, &sets, SearchBounds::default()).unwrap()
        })
    });
}

criterion_group!(benches, table, associativity, prover);
criterion_main!(benches);
