use brauer_core::action::apply_word;
use brauer_core::g2::G2Algebra;
use brauer_core::phi::phi_word;
use brauer_core::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn alg() -> &'static G2Algebra {
    static A: OnceLock<G2Algebra> = OnceLock::new();
    A.get_or_init(|| G2Algebra::build().unwrap())
}

fn arb_word(max: usize) -> impl Strategy<Value = MonoidWord> {
    prop::collection::vec(0..4usize, 0..max).prop_map(|v| {
        MonoidWord::new(
            v.into_iter()
                .map(|k| {
                    if k < 2 {
                        GenSymbol::r(k)
                    } else {
                        GenSymbol::e(k - 2)
                    }
                })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn product_of_normal_forms_is_normal_form_of_concatenation(a in arb_word(8), b in arb_word(8)) {
        let a_nf = alg().normalize(&a).unwrap();
        let b_nf = alg().normalize(&b).unwrap();
        prop_assert_eq!(alg().multiply(a_nf, b_nf), alg().normalize(&a.concat(&b)).unwrap());
    }

    #[test]
    fn op_reverses_words(a in arb_word(10)) {
        let (t, k) = alg().normalize(&a).unwrap();
        prop_assert_eq!(alg().normalize(&a.reversed()).unwrap(), (t, alg().op(k)));
    }

    // words with equal normal forms have equal φ-actions on every admissible D4 set
    #[test]
    fn normal_form_determines_phi_action(a in arb_word(6), b in arb_word(6)) {
        let (na, nb) = (alg().normalize(&a).unwrap(), alg().normalize(&b).unwrap());
        if na.1 == nb.1 {
            let rs = RootSystem::build(RootType::D(4)).unwrap();
            for s in brauer_core::admissible::enumerate_admissible(&rs) {
                prop_assert_eq!(
                    apply_word(&rs, &phi_word(&a).unwrap(), s).unwrap(),
                    apply_word(&rs, &phi_word(&b).unwrap(), s).unwrap()
                );
            }
        }
    }
}

#[test]
fn table_outputs() {
    let a = alg();
    let csv = a.table_csv();
    assert!(csv.starts_with("i,j,delta_exp,k\n"));
    assert_eq!(csv.lines().count(), 1 + 39 * 39);
    let json = a.table_json();
    assert_eq!(json["basis"].as_array().unwrap().len(), 39);
    assert_eq!(json["products"].as_array().unwrap().len(), 39 * 39);
}
