use std::sync::Arc;

use brauer_core::admissible::{
    enumerate_admissible, is_admissible, orthogonal_subsets, Definition,
};
use brauer_core::presentations::derived_sets_for;
use brauer_core::prover::{certify_lemma_pipeline, Mode, Prover, SearchBounds};
use brauer_core::*;

fn order(t: RootType) -> usize {
    WeylGroup::enumerate(Arc::new(RootSystem::build(t).unwrap()), 1 << 16)
        .unwrap()
        .order()
}

#[test]
fn weyl_group_orders() {
    assert_eq!(order(RootType::A(3)), 24);
    assert_eq!(order(RootType::D(4)), 192);
    assert_eq!(order(RootType::B(3)), 48);
    assert_eq!(order(RootType::C(3)), 48);
    assert_eq!(order(RootType::F4), 1152);
    assert_eq!(order(RootType::G2Folded), 12);
}

#[test]
fn admissibility_definitions_agree_on_small_types() {
    for n in 1..=5 {
        let w = WeylGroup::enumerate(
            Arc::new(RootSystem::build(RootType::A(n)).unwrap()),
            1 << 16,
        )
        .unwrap();
        for s in orthogonal_subsets(w.root_system()) {
            assert_eq!(
                is_admissible(&w, s, Definition::OrbitForm).unwrap(),
                is_admissible(&w, s, Definition::ClosureForm).unwrap(),
                "A{n}: {}",
                w.root_system().format_set(s)
            );
        }
    }
}

#[test]
fn empty_set_always_admissible() {
    for t in [RootType::A(2), RootType::D(4), RootType::B(3)] {
        let rs = RootSystem::build(t).unwrap();
        assert!(enumerate_admissible(&rs).contains(&RootSet::EMPTY));
    }
}

#[test]
fn g2_pipeline() {
    let p = presentation_for(RootType::G2Folded).unwrap();
    let mut prover = Prover::new(&p, Mode::Skeleton).unwrap();
    let rep = certify_lemma_pipeline(
        &mut prover,
        &derived_sets_for(&p).unwrap(),
        SearchBounds::default(),
    )
    .unwrap();
    assert!(rep.all_proved, "{:?}", rep.items);
    for item in &rep.items {
        assert!(prover.lemmas().iter().any(|l| l.tag == item.tag));
    }
}

#[test]
fn opposite_relations_are_provable() {
    for t in [RootType::G2Folded, RootType::C(2)] {
        let p = presentation_for(t).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        for rel in &p.relations {
            let op = rel.op();
            let out = prover
                .prove(&op.lhs, &op.rhs, SearchBounds::default())
                .unwrap();
            assert_eq!(
                out.delta(),
                Some(op.delta_shift),
                "{t}: {}",
                op.display(true)
            );
            assert!(prover.replay(out.trace().unwrap()).ok);
        }
    }
}
