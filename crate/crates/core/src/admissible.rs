//! Admissible root sets, admissible closure, and the monoidal poset on a
//! Weyl orbit.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::roots::{FoldingMap, RootSet, RootSystem, RootType};
use crate::weyl::WeylGroup;

/// Which of the two equivalent admissibility conditions to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definition {
    /// For every `B'` in `W·B` and non-adjacent nodes `i, j`: whenever
    /// `γ, γ − α_i + α_j ∈ B'` then `r_i B' = r_j B'`.
    OrbitForm,
    /// For distinct `γ1, γ2, γ3 ∈ B` and a root `γ` pairing to `±1` with each,
    /// the positive representative of `2γ − Σ (γ,γ_k) γ_k` lies in `B`.
    ClosureForm,
}

fn require_orthogonal(rs: &RootSystem, set: RootSet) -> Result<()> {
    if rs.is_orthogonal(set) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{} is not mutually orthogonal",
            rs.format_set(set)
        )))
    }
}

/// Roots forced into any admissible superset of `set` by one application of
/// the closure rule. `Err` carries a triple whose image is not a root.
fn forced_roots(rs: &RootSystem, set: RootSet) -> std::result::Result<RootSet, String> {
    let members: Vec<usize> = set.iter().collect();
    let one = Rational::ONE;
    let mut out = RootSet::EMPTY;
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            for c in b + 1..members.len() {
                let triple = [members[a], members[b], members[c]];
                for g in 0..rs.num_positive() {
                    let pairings: Vec<Rational> = triple.iter().map(|&t| rs.inner(g, t)).collect();
                    if pairings.iter().any(|p| p.abs() != one) {
                        continue;
                    }
                    let gamma = &rs.positive_roots()[g].simple_coords;
                    let mut v: Vec<i64> = gamma.iter().map(|x| 2 * x).collect();
                    for (&t, p) in triple.iter().zip(&pairings) {
                        let sign = p.to_integer().unwrap_or(0);
                        for (vi, ti) in v.iter_mut().zip(&rs.positive_roots()[t].simple_coords) {
                            *vi -= sign * ti;
                        }
                    }
                    match rs.lookup_simple(&v) {
                        Some(s) => out = out.with(s.index as usize),
                        None => {
                            return Err(format!(
                                "{} with {} gives a non-root",
                                rs.format_set(RootSet::from_indices(triple)),
                                rs.root_label(g)
                            ))
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn closure_form_holds(rs: &RootSystem, set: RootSet) -> bool {
    matches!(forced_roots(rs, set), Ok(f) if f.is_subset(set))
}

fn adjacent(rs: &RootSystem, i: usize, j: usize) -> bool {
    let (a, b) = (rs.simple_index(i), rs.simple_index(j));
    !rs.inner(a, b).is_zero()
}

fn orbit_form_holds(w: &WeylGroup, set: RootSet) -> bool {
    let rs = w.root_system();
    let rank = rs.rank();
    let orbit = w.orbit(set);
    orbit.iter().all(|&(b, _)| {
        (0..rank).all(|i| {
            (0..rank).all(|j| {
                if i == j || adjacent(rs, i, j) {
                    return true;
                }
                let hit = b.iter().any(|g| {
                    let mut v = rs.positive_roots()[g].simple_coords.clone();
                    v[i] -= 1;
                    v[j] += 1;
                    matches!(rs.lookup_simple(&v), Some(s) if !s.negative && b.contains(s.index as usize))
                });
                !hit || w.act_on_rootset(w.generator(i), b) == w.act_on_rootset(w.generator(j), b)
            })
        })
    })
}

/// Tests admissibility of a mutually orthogonal set of positive roots.
pub fn is_admissible(w: &WeylGroup, set: RootSet, definition: Definition) -> Result<bool> {
    let rs = w.root_system();
    require_orthogonal(rs, set)?;
    Ok(match definition {
        Definition::ClosureForm => closure_form_holds(rs, set),
        Definition::OrbitForm => orbit_form_holds(w, set),
    })
}

/// Smallest admissible superset, by saturating the closure rule.
pub fn closure(rs: &RootSystem, set: RootSet) -> Result<RootSet> {
    require_orthogonal(rs, set)?;
    let mut cur = set;
    loop {
        let forced = forced_roots(rs, cur).map_err(Error::NoAdmissibleSuperset)?;
        let next = cur.union(forced);
        if !rs.is_orthogonal(next) {
            return Err(Error::NoAdmissibleSuperset(format!(
                "saturating {} reaches the non-orthogonal set {}",
                rs.format_set(set),
                rs.format_set(next)
            )));
        }
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// All mutually orthogonal subsets of `Φ⁺`, including `∅`.
pub fn orthogonal_subsets(rs: &RootSystem) -> Vec<RootSet> {
    let n = rs.num_positive();
    let mut out = Vec::new();
    fn extend(rs: &RootSystem, n: usize, start: usize, cur: RootSet, out: &mut Vec<RootSet>) {
        out.push(cur);
        for k in start..n {
            if cur.iter().all(|m| rs.inner(k, m).is_zero()) {
                extend(rs, n, k + 1, cur.with(k), out);
            }
        }
    }
    extend(rs, n, 0, RootSet::EMPTY, &mut out);
    out
}

/// The collection `𝒜` of admissible sets, ordered by size then bitmask.
pub fn enumerate_admissible(rs: &RootSystem) -> Vec<RootSet> {
    let mut out: Vec<RootSet> = orthogonal_subsets(rs)
        .into_iter()
        .filter(|&s| closure_form_holds(rs, s))
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

/// Partitions a `W`-stable collection into orbits, each listed in the order
/// in which the shortlex-least group elements reach it.
pub fn partition_orbits(w: &WeylGroup, sets: &[RootSet]) -> Vec<Vec<RootSet>> {
    let mut assigned: BTreeSet<RootSet> = BTreeSet::new();
    let mut out = Vec::new();
    for &s in sets {
        if assigned.contains(&s) {
            continue;
        }
        let orbit: Vec<RootSet> = w.orbit(s).into_iter().map(|(b, _)| b).collect();
        assigned.extend(orbit.iter().copied());
        out.push(orbit);
    }
    out
}

/// Raising or lowering classification of `R_i` at `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    Fixed,
    Raise,
    Lower,
}

/// Classifies `R_i` on `B`.
///
/// The minimal-height roots moved by `R_i` vote "raise" when `β + α_i` is a
/// positive root and "lower" when `β − α_i` is. If they disagree a diagnostic
/// is returned and the move is decided by comparing the ascending height
/// profiles of the moved roots in `B` and in `R_i B`, which keeps "raises
/// `B`" equivalent to "lowers `R_i B`".
pub fn classify_move(w: &WeylGroup, set: RootSet, gen: usize) -> (Move, Option<String>) {
    let rs = w.root_system();
    let image = w.act_on_rootset(w.generator(gen), set);
    if image == set {
        return (Move::Fixed, None);
    }
    let ai = rs.simple_index(gen);
    let moved_heights = |b: RootSet| {
        let mut h: Vec<i64> = b
            .iter()
            .filter(|&k| !rs.inner(k, ai).is_zero())
            .map(|k| rs.root_height(k))
            .collect();
        h.sort_unstable();
        h
    };
    let moved: Vec<usize> = set.iter().filter(|&b| !rs.inner(b, ai).is_zero()).collect();
    let min_h = moved.iter().map(|&b| rs.root_height(b)).min().unwrap_or(0);
    let mut raise_votes = 0;
    let mut lower_votes = 0;
    for &b in moved.iter().filter(|&&b| rs.root_height(b) == min_h) {
        let sc = &rs.positive_roots()[b].simple_coords;
        let shifted = |d: i64| {
            let mut v = sc.clone();
            v[gen] += d;
            matches!(rs.lookup_simple(&v), Some(s) if !s.negative)
        };
        raise_votes += shifted(1) as usize;
        lower_votes += shifted(-1) as usize;
    }
    let before = moved_heights(set);
    let after = moved_heights(image);
    let mv = match after.cmp(&before) {
        std::cmp::Ordering::Greater => Move::Raise,
        std::cmp::Ordering::Less => Move::Lower,
        std::cmp::Ordering::Equal => Move::Fixed,
    };
    let diag = if mv == Move::Fixed {
        Some(format!(
            "R{} on {}: moved heights unchanged, no order relation",
            rs.node_of_gen(gen),
            rs.format_set(set)
        ))
    } else if raise_votes > 0 && lower_votes > 0 {
        Some(format!(
            "R{} on {}: minimal-height moved roots disagree, decided by height profile",
            rs.node_of_gen(gen),
            rs.format_set(set)
        ))
    } else {
        None
    };
    (mv, diag)
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetEdge {
    pub from: usize,
    pub to: usize,
    /// Diagram node label of the raising generator.
    pub node: usize,
}

/// The monoidal poset on one `W`-orbit of admissible sets.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    pub root_type: RootType,
    pub elements: Vec<RootSet>,
    pub raising_edges: Vec<PosetEdge>,
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
    pub heights: Vec<usize>,
    pub diagnostics: Vec<String>,
}

impl OrbitPoset {
    pub fn unique_maximum(&self) -> Option<RootSet> {
        match self.maximal.as_slice() {
            [m] => Some(self.elements[*m]),
            _ => None,
        }
    }

    pub fn position(&self, set: RootSet) -> Option<usize> {
        self.elements.iter().position(|&s| s == set)
    }

    pub fn height_of(&self, set: RootSet) -> Option<usize> {
        self.position(set).map(|k| self.heights[k])
    }

    /// DOT digraph: nodes labeled by simple-basis coordinate vectors, edges
    /// by the raising generator.
    pub fn to_dot(&self, rs: &RootSystem) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph hasse {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for (k, &s) in self.elements.iter().enumerate() {
            let label: Vec<String> = rs
                .set_coords(s)
                .iter()
                .map(|v| {
                    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    format!("[{}]", parts.join(","))
                })
                .collect();
            let _ = writeln!(
                out,
                "  n{k} [label=\"{{{}}}\\nht={}\"];",
                label.join(" "),
                self.heights[k]
            );
        }
        for e in &self.raising_edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.node);
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// Builds the orbit of an admissible set with its raising edges and heights.
pub fn orbit_and_hasse(w: &WeylGroup, start: RootSet) -> Result<OrbitPoset> {
    let rs = w.root_system();
    if !is_admissible(w, start, Definition::ClosureForm)? {
        return Err(Error::Domain(format!(
            "{} is not admissible",
            rs.format_set(start)
        )));
    }
    let mut elements: Vec<RootSet> = w.orbit(start).into_iter().map(|(b, _)| b).collect();
    elements.sort_by_key(|s| {
        let h: i64 = s.iter().map(|k| rs.root_height(k)).sum();
        (h, s.0)
    });
    let pos: HashMap<RootSet, usize> = elements.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut raising_edges = Vec::new();
    let mut diagnostics = Vec::new();
    for (k, &s) in elements.iter().enumerate() {
        for gen in 0..rs.rank() {
            let (mv, diag) = classify_move(w, s, gen);
            if let Some(d) = diag {
                diagnostics.push(d);
            }
            if mv == Move::Raise {
                let to = pos[&w.act_on_rootset(w.generator(gen), s)];
                raising_edges.push(PosetEdge {
                    from: k,
                    to,
                    node: rs.node_of_gen(gen),
                });
            }
        }
    }
    let n = elements.len();
    let has_out: Vec<bool> = (0..n)
        .map(|k| raising_edges.iter().any(|e| e.from == k))
        .collect();
    let has_in: Vec<bool> = (0..n)
        .map(|k| raising_edges.iter().any(|e| e.to == k))
        .collect();
    let maximal: Vec<usize> = (0..n).filter(|&k| !has_out[k]).collect();
    let minimal: Vec<usize> = (0..n).filter(|&k| !has_in[k]).collect();

    // shortest raising-path distance to the maximum, by reverse BFS
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &m in &maximal {
        dist[m] = 0;
        queue.push_back(m);
    }
    while let Some(k) = queue.pop_front() {
        for e in raising_edges.iter().filter(|e| e.to == k) {
            if dist[e.from] == usize::MAX {
                dist[e.from] = dist[k] + 1;
                queue.push_back(e.from);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        diagnostics.push("some orbit members have no raising path to a maximum".into());
    }
    let d = dist
        .iter()
        .filter(|&&x| x != usize::MAX)
        .max()
        .copied()
        .unwrap_or(0);
    let heights = dist
        .iter()
        .map(|&l| if l == usize::MAX { 0 } else { d - l })
        .collect();
    Ok(OrbitPoset {
        root_type: rs.root_type(),
        elements,
        raising_edges,
        maximal,
        minimal,
        heights,
        diagnostics,
    })
}

/// All admissible orbits of a simply-laced system with their posets.
pub fn admissible_orbits(w: &WeylGroup) -> Result<Vec<OrbitPoset>> {
    let sets = enumerate_admissible(w.root_system());
    partition_orbits(w, &sets)
        .into_iter()
        .map(|orbit| orbit_and_hasse(w, orbit[0]))
        .collect()
}

/// The folded collection `ℬ` over `Ψ⁺`.
#[derive(Clone, Debug)]
pub struct FoldedAdmissibles {
    /// σ-invariant admissible `D4` sets.
    pub invariant: Vec<RootSet>,
    /// `𝔭`-image of each invariant set, as a set of `G2` positive roots.
    pub images: Vec<RootSet>,
    /// Distinct nonempty images, grouped into `W(G2)`-orbits.
    pub orbits: Vec<Vec<RootSet>>,
}

impl FoldedAdmissibles {
    pub fn members(&self) -> Vec<RootSet> {
        self.orbits.iter().flatten().copied().collect()
    }

    /// Smallest member of `ℬ` containing `x`.
    pub fn closure(&self, g2: &RootSystem, x: RootSet) -> Result<RootSet> {
        require_orthogonal(g2, x)?;
        if x.is_empty() {
            return Ok(x);
        }
        let containing: Vec<RootSet> = self
            .members()
            .into_iter()
            .filter(|&b| x.is_subset(b))
            .collect();
        let meet = containing.iter().fold(None, |acc: Option<RootSet>, &b| {
            Some(acc.map_or(b, |a| a.intersection(b)))
        });
        match meet {
            Some(m) if containing.contains(&m) => Ok(m),
            _ => Err(Error::NoAdmissibleSuperset(g2.format_set(x))),
        }
    }
}

/// `σ`-invariant admissible `D4` sets, their `𝔭`-images in `Ψ⁺`, and the
/// `W(G2)`-orbits of those images.
pub fn folded_admissibles(
    f: &FoldingMap,
    d4: &RootSystem,
    g2_group: &WeylGroup,
) -> Result<FoldedAdmissibles> {
    if d4.root_type() != RootType::D(4) {
        return Err(Error::Config("folding requires the D4 system".into()));
    }
    let g2 = g2_group.root_system();
    let perm = f.root_permutation(d4)?;
    let sigma_set = |s: RootSet| RootSet::from_indices(s.iter().map(|k| perm[k]));
    let invariant: Vec<RootSet> = enumerate_admissible(d4)
        .into_iter()
        .filter(|&s| sigma_set(s) == s)
        .collect();
    let project = |k: usize| -> Result<usize> {
        match g2.lookup_coords(&f.reynolds(&d4.positive_roots()[k].coords)) {
            Some(s) if !s.negative => Ok(s.index as usize),
            _ => Err(Error::Domain(
                "projection left the folded positive roots".into(),
            )),
        }
    };
    let images = invariant
        .iter()
        .map(|s| {
            s.iter()
                .map(project)
                .collect::<Result<Vec<_>>>()
                .map(RootSet::from_indices)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut distinct: Vec<RootSet> = images.iter().copied().filter(|s| !s.is_empty()).collect();
    distinct.sort_by_key(|s| (s.len(), s.0));
    distinct.dedup();
    let orbits = partition_orbits(g2_group, &distinct);
    Ok(FoldedAdmissibles {
        invariant,
        images,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn group(t: RootType) -> WeylGroup {
        WeylGroup::enumerate(Arc::new(RootSystem::build(t).unwrap()), 1 << 16).unwrap()
    }

    #[test]
    fn d4_examples() {
        let w = group(RootType::D(4));
        let rs = w.root_system();
        let x = rs.parse_set("a1,a2,a4").unwrap();
        let full = rs.parse_set("a1,a2,a4,a1+a2+2a3+a4").unwrap();
        for def in [Definition::ClosureForm, Definition::OrbitForm] {
            assert!(!is_admissible(&w, x, def).unwrap());
            assert!(is_admissible(&w, RootSet::EMPTY, def).unwrap());
            assert!(is_admissible(&w, full, def).unwrap());
        }
        assert_eq!(closure(rs, x).unwrap(), full);
        assert_eq!(closure(rs, full).unwrap(), full);
        let a12 = rs.parse_set("a1,a2").unwrap();
        assert_eq!(closure(rs, a12).unwrap(), a12);
        assert!(matches!(
            is_admissible(&w, rs.parse_set("a1,a3").unwrap(), Definition::ClosureForm),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn d4_orbit_representatives() {
        let w = group(RootType::D(4));
        let rs = w.root_system();
        let orbits = admissible_orbits(&w).unwrap();
        // triality cycles the three pair orbits, so {a2,a4} is a sixth orbit
        assert_eq!(orbits.len(), 6);
        let extra = rs.parse_set("a2,a4").unwrap();
        for r in ["a1,a2", "a1,a4"] {
            let s = rs.parse_set(r).unwrap();
            assert!(orbits
                .iter()
                .all(|p| p.position(s).is_none() || p.position(extra).is_none()));
        }
        let reps = ["", "a3", "a1,a2", "a1,a4", "a1,a2,a4,[1,1,2,1]"];
        let mut hit = BTreeSet::new();
        for r in reps {
            let s = rs.parse_set(r).unwrap();
            let k = orbits.iter().position(|p| p.position(s).is_some()).unwrap();
            hit.insert(k);
        }
        assert_eq!(hit.len(), 5);
        for p in &orbits {
            assert_eq!(p.maximal.len(), 1);
            assert!(p
                .diagnostics
                .iter()
                .all(|d| !d.contains("no order relation")));
        }
    }

    #[test]
    fn a4_two_root_orbit() {
        let w = group(RootType::A(4));
        let rs = w.root_system();
        let p = orbit_and_hasse(&w, rs.parse_set("a1,a3").unwrap()).unwrap();
        assert_eq!(
            p.unique_maximum(),
            Some(rs.parse_set("a1+a2+a3,a2+a3+a4").unwrap())
        );
        let min = p.elements[p.minimal[0]];
        assert_eq!(p.height_of(min), Some(0));
        let dot = p.to_dot(rs);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("[1,1,1,0] [0,1,1,1]"));
    }

    #[test]
    fn closure_is_minimal_and_intersections_admissible() {
        let w = group(RootType::D(4));
        let rs = w.root_system();
        let adm = enumerate_admissible(rs);
        for &x in &orthogonal_subsets(rs) {
            if let Ok(c) = closure(rs, x) {
                assert!(adm.contains(&c));
                for &b in &adm {
                    if x.is_subset(b) {
                        assert!(c.is_subset(b));
                    }
                }
            } else {
                assert!(adm.iter().all(|b| !x.is_subset(*b)));
            }
        }
        for &a in &adm {
            for &b in &adm {
                assert!(adm.contains(&a.intersection(b)));
            }
        }
    }

    #[test]
    fn definitions_agree_small() {
        for t in [RootType::A(3), RootType::D(4)] {
            let w = group(t);
            for s in orthogonal_subsets(w.root_system()) {
                assert_eq!(
                    is_admissible(&w, s, Definition::ClosureForm).unwrap(),
                    is_admissible(&w, s, Definition::OrbitForm).unwrap()
                );
            }
        }
    }

    #[test]
    fn folding_census() {
        let f = FoldingMap::triality();
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let g2 = group(RootType::G2Folded);
        let folded = folded_admissibles(&f, &d4, &g2).unwrap();
        let rs = g2.root_system();
        assert_eq!(folded.orbits.len(), 2);
        assert!(folded.orbits.iter().all(|o| o.len() == 3));
        let reps = [
            rs.parse_set("b1").unwrap(),
            rs.parse_set("b0,3b0+2b1").unwrap(),
        ];
        for r in reps {
            assert!(folded.orbits.iter().any(|o| o.contains(&r)));
        }
        let full = d4.parse_set("a1,a2,a4,a1+a2+2a3+a4").unwrap();
        let k = folded.invariant.iter().position(|&s| s == full).unwrap();
        assert_eq!(folded.images[k], reps[1]);
        assert_eq!(
            folded.closure(rs, rs.parse_set("b0").unwrap()).unwrap(),
            reps[1]
        );
        assert!(folded.closure(rs, rs.parse_set("b0,b1").unwrap()).is_err());
    }
}
