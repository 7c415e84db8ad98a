//! The map `φ` from the `G2` Brauer monoid into the `D4` one:
//! `r0 ↦ R1R2R4`, `r1 ↦ R3`, `e0 ↦ E1E2E4`, `e1 ↦ E3`, `δ ↦ δ`.
//!
//! Well-definedness is checked two ways: by proving every relation image from
//! the `D4` presentation, and by comparing the actions of both sides on all
//! admissible `D4` sets. Neither establishes injectivity or surjectivity.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::action::{apply_word, check_relations, CompatibilityReport};
use crate::admissible::{admissible_orbits, closure, folded_admissibles};
use crate::error::{Error, Result};
use crate::presentations::{derived_sets_for, presentation_for, Relation};
use crate::prover::{
    certify_lemma_pipeline, Mode, PipelineReport, ProofOutcome, Prover, SearchBounds,
};
use crate::roots::{FoldingMap, RootSet, RootSystem, RootType};
use crate::weyl::WeylGroup;
use crate::word::{GenKind, GenSymbol, MonoidWord};

fn image(g: GenSymbol) -> Result<Vec<GenSymbol>> {
    Ok(match (g.kind, g.node) {
        (GenKind::Delta | GenKind::DeltaInv, _) => vec![g],
        (GenKind::R, Some(0)) => vec![GenSymbol::r(1), GenSymbol::r(2), GenSymbol::r(4)],
        (GenKind::R, Some(1)) => vec![GenSymbol::r(3)],
        (GenKind::E, Some(0)) => vec![GenSymbol::e(1), GenSymbol::e(2), GenSymbol::e(4)],
        (GenKind::E, Some(1)) => vec![GenSymbol::e(3)],
        _ => return Err(Error::Domain(format!("{g:?} is not a G2 generator"))),
    })
}

/// Symbol-wise substitution.
pub fn phi_word(w: &MonoidWord) -> Result<MonoidWord> {
    let mut out = Vec::new();
    for &g in &w.symbols {
        out.extend(image(g)?);
    }
    Ok(MonoidWord::new(out))
}

pub fn phi_relation(rel: &Relation) -> Result<Relation> {
    Ok(Relation {
        lhs: phi_word(&rel.lhs)?,
        rhs: phi_word(&rel.rhs)?,
        delta_shift: rel.delta_shift,
        tag: format!("phi({})", rel.tag),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Prover,
    Action,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "prover" => Ok(Method::Prover),
            "action" => Ok(Method::Action),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Certified,
    WrongDelta,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiItem {
    pub source: String,
    pub image: String,
    pub expected_delta: i64,
    pub found_delta: Option<i64>,
    pub status: Status,
    pub abstract_depth: Option<usize>,
    pub trace_length: Option<usize>,
    pub replay_ok: bool,
    pub millis: u128,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub methods: Vec<Method>,
    pub bounds: SearchBounds,
    /// The `D4` lemmas proved first and then used as rewrite rules.
    pub lemmas: Option<PipelineReport>,
    pub items: Vec<PhiItem>,
    pub action: Option<CompatibilityReport>,
    pub ok: bool,
}

/// The `G2` relations followed by the derived `G2` lemmas.
pub fn g2_relations() -> Result<Vec<Relation>> {
    let p = presentation_for(RootType::G2Folded)?;
    let mut rels = p.relations.clone();
    for set in derived_sets_for(&p)? {
        rels.extend(set.items);
    }
    Ok(rels)
}

pub fn verify_phi_relations(methods: &[Method], bounds: SearchBounds) -> Result<PhiReport> {
    bounds.validate()?;
    let sources = g2_relations()?;
    let images = sources
        .iter()
        .map(phi_relation)
        .collect::<Result<Vec<_>>>()?;
    let d4 = presentation_for(RootType::D(4))?;
    let mut lemmas = None;
    let mut items = Vec::new();
    if methods.contains(&Method::Prover) {
        let mut prover = Prover::new(&d4, Mode::Skeleton)?;
        lemmas = Some(certify_lemma_pipeline(
            &mut prover,
            &derived_sets_for(&d4)?,
            bounds,
        )?);
        for (src, img) in sources.iter().zip(&images) {
            let t0 = Instant::now();
            let outcome = prover.prove(&img.lhs, &img.rhs, bounds)?;
            let mut item = PhiItem {
                source: format!("{} [{}]", src.display(true), src.tag),
                image: img.display(false),
                expected_delta: img.delta_shift,
                found_delta: None,
                status: Status::Inconclusive,
                abstract_depth: None,
                trace_length: None,
                replay_ok: false,
                millis: 0,
                note: String::new(),
            };
            match outcome {
                ProofOutcome::Found { trace, delta } => {
                    item.found_delta = Some(delta);
                    item.abstract_depth = Some(trace.abstract_depth);
                    item.trace_length = Some(trace.steps.len());
                    item.replay_ok = prover.replay(&trace).ok;
                    item.status = if delta == img.delta_shift && item.replay_ok {
                        Status::Certified
                    } else {
                        Status::WrongDelta
                    };
                }
                ProofOutcome::NotFound {
                    reason,
                    states_explored,
                } => {
                    item.note = format!(
                        "{reason} ({states_explored} states; depth ≤ {}, width ≤ {})",
                        bounds.max_depth, bounds.max_frontier
                    );
                }
            }
            item.millis = t0.elapsed().as_millis();
            if item.status == Status::Certified {
                prover.add_lemma(img.clone())?;
            }
            items.push(item);
        }
    }
    let action = if methods.contains(&Method::Action) {
        let rs = RootSystem::build(RootType::D(4))?;
        Some(check_relations(&rs, "phi(G2)", &images)?)
    } else {
        None
    };
    let ok = lemmas.as_ref().is_none_or(|l| l.all_proved)
        && items.iter().all(|i| i.status == Status::Certified)
        && action.as_ref().is_none_or(|a| a.ok);
    Ok(PhiReport {
        methods: methods.to_vec(),
        bounds,
        lemmas,
        items,
        action,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCensus {
    pub representative: String,
    pub size: usize,
    pub sigma_invariant: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldedOrbit {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaCensus {
    pub orbits: Vec<OrbitCensus>,
    /// Sizes of the `φ(W(G2))`-orbits on the σ-invariant admissible sets.
    pub phi_orbits: Vec<Vec<String>>,
    pub closure_orbit: Vec<String>,
    pub folded_orbits: Vec<FoldedOrbit>,
    /// `𝔭` maps the σ-invariant sets onto the folded collection.
    pub projection_onto: bool,
    pub short_norm2: String,
    pub long_norm2: String,
    pub sigma_order_three: bool,
    pub ok: bool,
}

/// `φ(W(G2))` as a subgroup of `W(D4)`.
fn phi_group(w: &WeylGroup) -> Result<Vec<usize>> {
    let rs = w.root_system();
    let g = |n: usize| -> Result<usize> { Ok(w.generator(rs.gen_of_node(n)?)) };
    let r0 = w.mul(w.mul(g(1)?, g(2)?), g(4)?);
    Ok(w.generate(&[r0, g(3)?]).elements)
}

fn phi_orbit(w: &WeylGroup, group: &[usize], set: RootSet) -> Vec<RootSet> {
    let mut out: Vec<RootSet> = group.iter().map(|&g| w.act_on_rootset(g, set)).collect();
    out.sort();
    out.dedup();
    out
}

pub fn sigma_census() -> Result<SigmaCensus> {
    let f = FoldingMap::triality();
    let w = WeylGroup::enumerate(Arc::new(RootSystem::build(RootType::D(4))?), 1 << 12)?;
    let rs = w.root_system();
    let perm = f.root_permutation(rs)?;
    let sigma = |s: RootSet| RootSet::from_indices(s.iter().map(|k| perm[k]));
    let mut orbits = Vec::new();
    for poset in admissible_orbits(&w)? {
        let inv: Vec<String> = poset
            .elements
            .iter()
            .filter(|&&s| sigma(s) == s)
            .map(|&s| rs.format_set(s))
            .collect();
        orbits.push(OrbitCensus {
            representative: rs.format_set(poset.elements[0]),
            size: poset.elements.len(),
            sigma_invariant: inv,
        });
    }
    let group = phi_group(&w)?;
    let mut invariant: Vec<RootSet> = crate::admissible::enumerate_admissible(rs)
        .into_iter()
        .filter(|&s| sigma(s) == s)
        .collect();
    invariant.sort();
    let mut phi_orbits = Vec::new();
    let mut seen = Vec::new();
    for &s in &invariant {
        if seen.contains(&s) {
            continue;
        }
        let orb = phi_orbit(&w, &group, s);
        seen.extend(orb.iter().copied());
        phi_orbits.push(orb.iter().map(|&x| rs.format_set(x)).collect());
    }
    let x = closure(rs, rs.parse_set("a1,a2,a4")?)?;
    let closure_orbit = phi_orbit(&w, &group, x)
        .iter()
        .map(|&s| rs.format_set(s))
        .collect();

    let g2w = WeylGroup::enumerate(Arc::new(RootSystem::build(RootType::G2Folded)?), 64)?;
    let g2 = g2w.root_system();
    let folded = folded_admissibles(&f, rs, &g2w)?;
    let folded_orbits: Vec<FoldedOrbit> = folded
        .orbits
        .iter()
        .map(|o| FoldedOrbit {
            representative: g2.format_set(o[0]),
            members: o.iter().map(|&s| g2.format_set(s)).collect(),
        })
        .collect();
    let mut images: Vec<RootSet> = folded
        .images
        .iter()
        .copied()
        .filter(|s| !s.is_empty())
        .collect();
    images.sort();
    images.dedup();
    let mut members = folded.members();
    members.sort();
    let projection_onto = images == members;
    let sigma_order_three = rs
        .positive_roots()
        .iter()
        .chain(rs.positive_roots())
        .enumerate()
        .all(|(k, r)| {
            let v: Vec<_> = if k < rs.num_positive() {
                r.coords.clone()
            } else {
                r.coords.iter().map(|x| -*x).collect()
            };
            f.apply_power(&v, 3) == v
        });
    let short_norm2 = g2.norm2(g2.simple_index(0)).to_string();
    let long_norm2 = g2.norm2(g2.simple_index(1)).to_string();

    let no_invariant = |rep: &str| -> Result<bool> {
        let s = rs.parse_set(rep)?;
        Ok(admissible_orbits(&w)?
            .iter()
            .find(|p| p.position(s).is_some())
            .is_some_and(|p| p.elements.iter().all(|&m| sigma(m) != m)))
    };
    let reps_ok = folded.orbits.len() == 2
        && ["b1", "b0,3b0+2b1"].iter().try_fold(
            Vec::new(),
            |mut hit, r| -> Result<Vec<usize>> {
                let s = g2.parse_set(r)?;
                if let Some(k) = folded
                    .orbits
                    .iter()
                    .position(|o| o.len() == 3 && o.contains(&s))
                {
                    hit.push(k);
                }
                Ok(hit)
            },
        )?[..]
            == [0, 1];
    let ok = no_invariant("a1,a2")?
        && no_invariant("a1,a4")?
        && phi_orbit(&w, &group, x).len() == 3
        && reps_ok
        && projection_onto
        && short_norm2 == "2/3"
        && long_norm2 == "2"
        && sigma_order_three;
    Ok(SigmaCensus {
        orbits,
        phi_orbits,
        closure_orbit,
        folded_orbits,
        projection_onto,
        short_norm2,
        long_norm2,
        sigma_order_three,
        ok,
    })
}

/// Acts with `φ(w)` on a `D4` admissible set.
pub fn act(w: &MonoidWord, set: RootSet) -> Result<RootSet> {
    let rs = RootSystem::build(RootType::D(4))?;
    apply_word(&rs, &phi_word(w)?, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> MonoidWord {
        MonoidWord::parse(s).unwrap()
    }

    #[test]
    fn substitution() {
        assert_eq!(phi_word(&w("e0")).unwrap(), w("E1 E2 E4"));
        assert_eq!(phi_word(&w("r1")).unwrap(), w("R3"));
        assert_eq!(phi_word(&w("d r0 d^-1")).unwrap(), w("d R1 R2 R4 d^-1"));
        assert!(phi_word(&w("E3")).is_err());
    }

    #[test]
    fn images_commute_factorwise() {
        let d4 = presentation_for(RootType::D(4)).unwrap();
        for (a, b) in [(1, 2), (1, 4), (2, 4)] {
            assert!(!d4.adjacent(a, b));
        }
    }

    #[test]
    fn action_method() {
        let rep = verify_phi_relations(&[Method::Action], SearchBounds::default()).unwrap();
        assert!(rep.ok, "{:?}", rep.action.unwrap().mismatches);
        assert!(rep.items.is_empty());
    }

    #[test]
    fn prover_method() {
        let rep = verify_phi_relations(&[Method::Prover], SearchBounds::default()).unwrap();
        for i in &rep.items {
            assert_eq!(i.status, Status::Certified, "{i:?}");
        }
        let find = |tag: &str| rep.items.iter().find(|i| i.source.contains(tag)).unwrap();
        assert_eq!(find("ere_delta2[0,1]").found_delta, Some(2));
        assert_eq!(find("rrerre_delta[1,0]").found_delta, Some(1));
        assert!(rep.ok);
    }

    #[test]
    fn census() {
        let c = sigma_census().unwrap();
        assert!(c.ok, "{c:#?}");
        assert_eq!(c.closure_orbit.len(), 3);
        assert!(c
            .closure_orbit
            .contains(&"{a1, a2, a4, a1+a2+2a3+a4}".to_string()));
        let pair_orbits: Vec<_> = c
            .orbits
            .iter()
            .filter(|o| o.representative == "{a1, a2}" || o.representative == "{a1, a4}")
            .collect();
        assert_eq!(pair_orbits.len(), 2);
        assert!(pair_orbits.iter().all(|o| o.sigma_invariant.is_empty()));
    }
}
