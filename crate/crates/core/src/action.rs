//! Action of the Brauer monoid generators on admissible root sets.
//!
//! `R_i` acts by the simple reflection (positive representatives), `δ` acts
//! trivially, and `E_i` acts by
//!
//! * `E_i B = B` if `α_i ∈ B`,
//! * `E_i B = (B ∪ {α_i})^cl` if `α_i ⊥ B`,
//! * `E_i B = R_β R_i B` otherwise, for some `β ∈ B` not orthogonal to `α_i`.
//!
//! In the last case `β` is the non-orthogonal root of least height, ties
//! broken by root index; [`choice_independence`] checks that the choice does
//! not matter.

use serde::Serialize;

use crate::admissible::{closure, enumerate_admissible};
use crate::error::Result;
use crate::presentations::{Presentation, Relation};
use crate::roots::{RootSet, RootSystem};
use crate::word::{GenKind, GenSymbol, MonoidWord};

/// `s_β(B)` for the positive root with index `k`.
pub fn reflect_set(rs: &RootSystem, k: usize, set: RootSet) -> RootSet {
    RootSet::from_indices(set.iter().map(|m| rs.reflect(k, m).index as usize))
}

fn non_orthogonal(rs: &RootSystem, alpha: usize, set: RootSet) -> Vec<usize> {
    let mut out: Vec<usize> = set
        .iter()
        .filter(|&m| !rs.inner(alpha, m).is_zero())
        .collect();
    out.sort_by_key(|&m| (rs.root_height(m), m));
    out
}

pub fn apply_generator(rs: &RootSystem, g: GenSymbol, set: RootSet) -> Result<RootSet> {
    let node = match (g.kind, g.node) {
        (GenKind::Delta | GenKind::DeltaInv, _) => return Ok(set),
        (_, Some(n)) => n,
        (_, None) => return Ok(set),
    };
    let alpha = rs.simple_index(rs.gen_of_node(node)?);
    match g.kind {
        GenKind::R => Ok(reflect_set(rs, alpha, set)),
        _ => {
            if set.contains(alpha) {
                return Ok(set);
            }
            match non_orthogonal(rs, alpha, set).first() {
                None => closure(rs, set.with(alpha)),
                Some(&beta) => Ok(reflect_set(rs, beta, reflect_set(rs, alpha, set))),
            }
        }
    }
}

/// Applies the symbols right to left.
pub fn apply_word(rs: &RootSystem, w: &MonoidWord, set: RootSet) -> Result<RootSet> {
    w.symbols
        .iter()
        .rev()
        .try_fold(set, |acc, &g| apply_generator(rs, g, acc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionMismatch {
    pub relation: String,
    pub set: String,
    pub lhs_result: String,
    pub rhs_result: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatibilityReport {
    pub presentation: String,
    pub relations_checked: usize,
    pub sets_checked: usize,
    pub mismatches: Vec<ActionMismatch>,
    pub ok: bool,
}

/// Checks `u·B = v·B` for every relation `u = δ^k v` and every `B ∈ 𝒜`.
/// The action ignores δ, so this is a necessary condition only.
pub fn check_relations(
    rs: &RootSystem,
    name: &str,
    relations: &[Relation],
) -> Result<CompatibilityReport> {
    let sets = enumerate_admissible(rs);
    let lower = !rs.root_type().is_simply_laced();
    let mut mismatches = Vec::new();
    for rel in relations {
        for &b in &sets {
            let l = apply_word(rs, &rel.lhs, b)?;
            let r = apply_word(rs, &rel.rhs, b)?;
            if l != r {
                mismatches.push(ActionMismatch {
                    relation: format!("{} [{}]", rel.display(lower), rel.tag),
                    set: rs.format_set(b),
                    lhs_result: rs.format_set(l),
                    rhs_result: rs.format_set(r),
                });
            }
        }
    }
    Ok(CompatibilityReport {
        presentation: name.to_string(),
        relations_checked: relations.len(),
        sets_checked: sets.len(),
        ok: mismatches.is_empty(),
        mismatches,
    })
}

pub fn check_relation_compatibility(
    p: &Presentation,
    rs: &RootSystem,
) -> Result<CompatibilityReport> {
    check_relations(rs, &p.name, &p.relations)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChoiceReport {
    /// Pairs `(E_i, B)` falling under the third case.
    pub cases: usize,
    /// Cases with more than one admissible choice of `β`.
    pub multi_choice_cases: usize,
    pub disagreements: Vec<String>,
    pub ok: bool,
}

/// Evaluates the third case with every possible `β` over all of `𝒜`.
pub fn choice_independence(rs: &RootSystem) -> Result<ChoiceReport> {
    let sets = enumerate_admissible(rs);
    let (mut cases, mut multi) = (0, 0);
    let mut disagreements = Vec::new();
    for gen in 0..rs.rank() {
        let alpha = rs.simple_index(gen);
        for &b in &sets {
            if b.contains(alpha) {
                continue;
            }
            let betas = non_orthogonal(rs, alpha, b);
            if betas.is_empty() {
                continue;
            }
            cases += 1;
            if betas.len() > 1 {
                multi += 1;
            }
            let results: Vec<RootSet> = betas
                .iter()
                .map(|&beta| reflect_set(rs, beta, reflect_set(rs, alpha, b)))
                .collect();
            if results.iter().any(|&r| r != results[0]) {
                disagreements.push(format!(
                    "E{} on {}: {}",
                    rs.node_of_gen(gen),
                    rs.format_set(b),
                    results
                        .iter()
                        .map(|&r| rs.format_set(r))
                        .collect::<Vec<_>>()
                        .join(" vs ")
                ));
            }
        }
    }
    Ok(ChoiceReport {
        cases,
        multi_choice_cases: multi,
        ok: disagreements.is_empty(),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootType;

    fn d4() -> RootSystem {
        RootSystem::build(RootType::D(4)).unwrap()
    }

    fn w(s: &str) -> MonoidWord {
        MonoidWord::parse(s).unwrap()
    }

    #[test]
    fn generator_cases() {
        let rs = d4();
        let set = |s: &str| rs.parse_set(s).unwrap();
        let e = |n| GenSymbol::e(n);
        assert_eq!(
            apply_generator(&rs, e(3), RootSet::EMPTY).unwrap(),
            set("a3")
        );
        assert_eq!(apply_generator(&rs, e(3), set("a3")).unwrap(), set("a3"));
        let big = set("a1,a2,a4,a1+a2+2a3+a4");
        assert_eq!(apply_generator(&rs, e(1), big).unwrap(), big);
        // R_{α2} R_3 {α2} = R_{α2} {α2+α3} = {α3}
        assert_eq!(apply_generator(&rs, e(3), set("a2")).unwrap(), set("a3"));
        assert_eq!(
            apply_generator(&rs, GenSymbol::delta(false), big).unwrap(),
            big
        );
    }

    #[test]
    fn word_application() {
        let rs = d4();
        let set = |s: &str| rs.parse_set(s).unwrap();
        let b = set("a2,a4");
        assert_eq!(apply_word(&rs, &w("1"), b).unwrap(), b);
        assert_eq!(
            apply_word(&rs, &w("E1 E2 E4"), RootSet::EMPTY).unwrap(),
            set("a1,a2,a4,a1+a2+2a3+a4")
        );
        assert_eq!(
            apply_word(&rs, &w("E3 E1 E2 E4"), RootSet::EMPTY).unwrap(),
            apply_word(&rs, &w("R1 R2 R4 R3 E1 E2 E4"), RootSet::EMPTY).unwrap()
        );
    }

    #[test]
    fn relations_act_compatibly() {
        for t in [RootType::D(4), RootType::A(4), RootType::A(3)] {
            let rs = RootSystem::build(t).unwrap();
            let p = crate::presentations::presentation_for(t).unwrap();
            let rep = check_relation_compatibility(&p, &rs).unwrap();
            assert!(
                rep.ok,
                "{t}: {:?}",
                &rep.mismatches[..rep.mismatches.len().min(3)]
            );
            let derived = crate::presentations::derived_sets_for(&p).unwrap();
            for set in derived {
                assert!(check_relations(&rs, &set.name, &set.items).unwrap().ok);
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let rs = d4();
        let bogus = Relation::new("E1", "E3", 0, "bogus".into());
        let rep = check_relations(&rs, "test", &[bogus]).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.mismatches[0].set, "{}");
    }

    #[test]
    fn beta_choice_is_irrelevant() {
        for t in [RootType::D(4), RootType::A(4)] {
            let rs = RootSystem::build(t).unwrap();
            let rep = choice_independence(&rs).unwrap();
            assert!(rep.ok, "{:?}", rep.disagreements);
            assert!(rep.cases > 0);
        }
    }
}
