//! The eight end-to-end acceptance checks, shared by the test suite and the
//! `verify-all` command.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{apply_word, choice_independence};
use crate::admissible::{
    admissible_orbits, closure, is_admissible, orthogonal_subsets, Definition,
};
use crate::error::Result;
use crate::exact::Rational;
use crate::g2::{verify, G2Algebra};
use crate::phi::{sigma_census, verify_phi_relations, Method};
use crate::presentations::{derived_sets_for, presentation_for};
use crate::prover::{certify_lemma_pipeline, Mode, Prover, SearchBounds};
use crate::roots::{RootSystem, RootType};
use crate::weyl::WeylGroup;
use crate::word::MonoidWord;

pub const CRITERIA: [&str; 8] = [
    "rank 39",
    "ideal chain",
    "lemma pipeline",
    "phi well-definedness",
    "admissible machinery",
    "folding census",
    "action sanity",
    "documented constant",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub millis: u128,
    pub details: Value,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} [{} ms]",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.millis
        )
    }
}

fn group(t: RootType) -> Result<WeylGroup> {
    WeylGroup::enumerate(Arc::new(RootSystem::build(t)?), 1 << 16)
}

fn rank39(alg: &G2Algebra) -> Result<(bool, Value)> {
    let rep = verify(alg, false)?;
    let pass = rep.basis_size == 39
        && rep.closure_ok
        && rep.associativity_triples == 39 * 39 * 39
        && rep.associativity_failures.is_empty()
        && rep.relations.iter().all(|r| r.ok);
    Ok((
        pass,
        json!({
            "basis_size": rep.basis_size,
            "forms": [rep.group_forms, rep.e1_forms, rep.e0_forms],
            "closure_ok": rep.closure_ok,
            "associativity_triples": rep.associativity_triples,
            "associativity_failures": rep.associativity_failures,
            "relations": rep.relations,
        }),
    ))
}

fn ideal_chain(alg: &G2Algebra) -> Result<(bool, Value)> {
    let rep = verify(alg, false)?;
    let ranks = rep.ideal_chain_ranks;
    Ok((
        ranks == [12, 18, 9] && ranks.iter().sum::<usize>() == 39,
        json!({ "ranks": ranks }),
    ))
}

fn lemma_pipeline() -> Result<(bool, Value)> {
    let bounds = SearchBounds::default();
    let mut reports = Vec::new();
    let mut pass = true;
    for t in [RootType::D(4), RootType::C(2), RootType::G2Folded] {
        let p = presentation_for(t)?;
        let mut prover = Prover::new(&p, Mode::Skeleton)?;
        let rep = certify_lemma_pipeline(&mut prover, &derived_sets_for(&p)?, bounds)?;
        pass &= rep.all_proved
            && rep.items.iter().all(|i| {
                i.abstract_depth.is_some_and(|d| d <= bounds.max_depth)
                    && i.replay_ok
                    && i.millis < 60_000
            });
        reports.push(rep);
    }
    Ok((pass, json!(reports)))
}

fn phi_check() -> Result<(bool, Value)> {
    let rep = verify_phi_relations(&[Method::Prover, Method::Action], SearchBounds::default())?;
    Ok((rep.ok, json!(rep)))
}

fn admissible_machinery() -> Result<(bool, Value)> {
    let d4 = group(RootType::D(4))?;
    let rs = d4.root_system();
    let orbits = admissible_orbits(&d4)?;
    let reps = ["", "a3", "a1,a2", "a1,a4", "a1,a2,a4,a1+a2+2a3+a4"];
    let mut hit = Vec::new();
    for r in reps {
        let s = rs.parse_set(r)?;
        hit.extend(orbits.iter().position(|p| p.position(s).is_some()));
    }
    hit.sort();
    hit.dedup();
    let exactly_five = orbits.len() == 5 && hit.len() == 5;
    let cl = closure(rs, rs.parse_set("a1,a2,a4")?)?;
    let closure_ok = cl == rs.parse_set("a1,a2,a4,a1+a2+2a3+a4")?;

    let mut disagreements = Vec::new();
    let mut types: Vec<RootType> = (1..=5).map(RootType::A).collect();
    types.push(RootType::D(4));
    let mut maxima_ok = true;
    for &t in &types {
        let w = group(t)?;
        for s in orthogonal_subsets(w.root_system()) {
            if is_admissible(&w, s, Definition::OrbitForm)?
                != is_admissible(&w, s, Definition::ClosureForm)?
            {
                disagreements.push(format!("{t}: {}", w.root_system().format_set(s)));
            }
        }
    }
    let a4 = group(RootType::A(4))?;
    for w in [&a4, &d4] {
        maxima_ok &= admissible_orbits(w)?
            .iter()
            .all(|p| p.unique_maximum().is_some());
    }
    let ars = a4.root_system();
    let pair = ars.parse_set("a1,a3")?;
    let a4_max = admissible_orbits(&a4)?
        .into_iter()
        .find(|p| p.position(pair).is_some())
        .and_then(|p| p.unique_maximum());
    let a4_max_ok = a4_max == Some(ars.parse_set("a1+a2+a3,a2+a3+a4")?);
    let pass = exactly_five && closure_ok && disagreements.is_empty() && maxima_ok && a4_max_ok;
    Ok((
        pass,
        json!({
            "d4_orbit_count": orbits.len(),
            "d4_orbit_representatives": orbits.iter().map(|p| rs.format_set(p.elements[0])).collect::<Vec<_>>(),
            "listed_representatives_distinct_orbits": hit.len(),
            "closure": rs.format_set(cl),
            "closure_ok": closure_ok,
            "definition_disagreements": disagreements,
            "unique_maxima": maxima_ok,
            "a4_pair_orbit_maximum": a4_max.map(|s| ars.format_set(s)),
        }),
    ))
}

fn folding_census() -> Result<(bool, Value)> {
    let c = sigma_census()?;
    Ok((c.ok, json!(c)))
}

fn action_sanity() -> Result<(bool, Value)> {
    let rs = RootSystem::build(RootType::A(4))?;
    let b = rs.parse_set("a1+a2,a4")?;
    let img = apply_word(&rs, &MonoidWord::parse("R4 R1 R2 R1")?, b)?;
    let d4 = choice_independence(&RootSystem::build(RootType::D(4))?)?;
    let a4 = choice_independence(&rs)?;
    Ok((
        img == b && d4.ok && a4.ok,
        json!({
            "example_image": rs.format_set(img),
            "example_fixed": img == b,
            "choice_d4": d4,
            "choice_a4": a4,
        }),
    ))
}

/// Rank count for the dihedral type with `m = 6`: `2·6 + (3/2)·6² = 66`.
fn documented_constant() -> (bool, Value) {
    let m = 6;
    let total = Rational::from(2 * m) + Rational::new(3, 2) * Rational::from(m * m);
    (
        total == Rational::from(66),
        json!({ "m": m, "total": total.to_string() }),
    )
}

pub fn run_criterion(id: usize) -> Result<CriterionResult> {
    let t0 = Instant::now();
    let (pass, details) = match id {
        1 => rank39(&G2Algebra::build()?)?,
        2 => ideal_chain(&G2Algebra::build()?)?,
        3 => lemma_pipeline()?,
        4 => phi_check()?,
        5 => admissible_machinery()?,
        6 => folding_census()?,
        7 => action_sanity()?,
        8 => documented_constant(),
        _ => return Err(crate::Error::Config(format!("no criterion {id}"))),
    };
    Ok(CriterionResult {
        id,
        name: CRITERIA[id - 1].to_string(),
        pass,
        millis: t0.elapsed().as_millis(),
        details,
    })
}

pub fn run_all() -> Result<Vec<CriterionResult>> {
    (1..=CRITERIA.len()).map(run_criterion).collect()
}
