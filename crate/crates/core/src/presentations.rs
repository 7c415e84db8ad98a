//! Relation tables for Brauer algebras of types `A_n`, `D_n` (simply laced)
//! and `B_n`, `C_n`, `F4`, `G2`, plus curated lists of derived relations.
//!
//! A relation `lhs = δ^k rhs` stores `k` as `delta_shift`; relation words are
//! δ-free. Tags are descriptive, with node labels in brackets, e.g.
//! `rre_to_ee[1,3]` for `R3 R1 E3 = E1 E3`.
//!
//! Node labels: `A_n`, `D_n`, `F4` use `1..=n`; `B_n`, `C_n`, `G2` use
//! `0..n`. In a double bond block `i ⇒ j` the node `i` is long (`κ_i = 1`)
//! and `j` short; in `G2` the block is `0 ⇛ 1` with `β0` short.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{RootSystem, RootType};
use crate::word::{GenKind, GenSymbol, MonoidWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub multiplicity: u8,
    /// `"none"`, `"i>j"` (double bond block) or `"i<j"` (triple bond block).
    pub arrow: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: MonoidWord,
    pub rhs: MonoidWord,
    pub delta_shift: i64,
    pub tag: String,
}

impl Relation {
    pub fn new(lhs: &str, rhs: &str, delta_shift: i64, tag: String) -> Self {
        Relation {
            lhs: MonoidWord::parse(lhs).expect("relation literal"),
            rhs: MonoidWord::parse(rhs).expect("relation literal"),
            delta_shift,
            tag,
        }
    }

    /// Image under the anti-involution (both sides reversed).
    pub fn op(&self) -> Relation {
        Relation {
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
            delta_shift: self.delta_shift,
            tag: format!("op({})", self.tag),
        }
    }

    pub fn is_op_invariant(&self) -> bool {
        let (l, r) = (self.lhs.reversed(), self.rhs.reversed());
        (l == self.lhs && r == self.rhs)
            || (l == self.rhs && r == self.lhs && self.delta_shift == 0)
    }

    pub fn display(&self, lower: bool) -> String {
        let (l, r) = if lower {
            (self.lhs.to_lower_string(), self.rhs.to_lower_string())
        } else {
            (self.lhs.to_string(), self.rhs.to_string())
        };
        match self.delta_shift {
            0 => format!("{l} = {r}"),
            1 => format!("{l} = d {r}"),
            k => format!("{l} = d^{k} {r}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub root_type: RootType,
    pub nodes: Vec<usize>,
    pub bonds: Vec<Bond>,
    pub kappa: BTreeMap<usize, i64>,
    pub relations: Vec<Relation>,
}

/// Letters are packed as `2·gen + (0 for R, 1 for E)`.
pub type Letter = u8;

impl Presentation {
    /// Uses lowercase generator names (`r0`, `e1`) when printing.
    pub fn lowercase(&self) -> bool {
        !self.root_type.is_simply_laced()
    }

    pub fn gen_of_node(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    pub fn letter(&self, sym: GenSymbol) -> Result<Letter> {
        let node = sym
            .node
            .ok_or_else(|| Error::Domain("δ is not a word letter".into()))?;
        let gen = self.gen_of_node(node).ok_or_else(|| {
            Error::Domain(format!("node {node} is not in the {} diagram", self.name))
        })?;
        Ok((2 * gen + usize::from(sym.kind == GenKind::E)) as Letter)
    }

    pub fn symbol(&self, letter: Letter) -> GenSymbol {
        let node = self.nodes[letter as usize / 2];
        if letter % 2 == 1 {
            GenSymbol::e(node)
        } else {
            GenSymbol::r(node)
        }
    }

    /// δ-free letter encoding; δ symbols are rejected.
    pub fn encode(&self, w: &MonoidWord) -> Result<Vec<Letter>> {
        w.symbols.iter().map(|&s| self.letter(s)).collect()
    }

    pub fn decode(&self, letters: &[Letter]) -> MonoidWord {
        MonoidWord::new(letters.iter().map(|&l| self.symbol(l)).collect())
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        let w = self.decode(letters);
        if self.lowercase() {
            w.to_lower_string()
        } else {
            w.to_string()
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.bonds
            .iter()
            .any(|bd| (bd.i == a && bd.j == b) || (bd.i == b && bd.j == a))
    }

    pub fn relation(&self, tag: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.tag == tag)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let lower = self.lowercase();
        let show = |w: &MonoidWord| {
            if lower {
                w.to_lower_string()
            } else {
                w.to_string()
            }
        };
        serde_json::json!({
            "name": self.name,
            "type": self.root_type.to_string(),
            "nodes": self.nodes,
            "bonds": self.bonds,
            "kappa": self.kappa.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            "relations": self.relations.iter().map(|r| serde_json::json!({
                "lhs": show(&r.lhs),
                "rhs": show(&r.rhs),
                "delta_shift": r.delta_shift,
                "tag": r.tag,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("presentation JSON: {what}"));
        let root_type: RootType = v["type"]
            .as_str()
            .ok_or_else(|| bad("missing type"))?
            .parse()?;
        let nodes: Vec<usize> =
            serde_json::from_value(v["nodes"].clone()).map_err(|_| bad("nodes"))?;
        let bonds: Vec<Bond> =
            serde_json::from_value(v["bonds"].clone()).map_err(|_| bad("bonds"))?;
        let kappa_raw: BTreeMap<String, i64> =
            serde_json::from_value(v["kappa"].clone()).map_err(|_| bad("kappa"))?;
        let kappa = kappa_raw
            .into_iter()
            .map(|(k, x)| k.parse().map(|k| (k, x)).map_err(|_| bad("kappa key")))
            .collect::<Result<_>>()?;
        let relations = v["relations"]
            .as_array()
            .ok_or_else(|| bad("relations"))?
            .iter()
            .map(|r| {
                Ok(Relation {
                    lhs: MonoidWord::parse(r["lhs"].as_str().ok_or_else(|| bad("lhs"))?)?,
                    rhs: MonoidWord::parse(r["rhs"].as_str().ok_or_else(|| bad("rhs"))?)?,
                    delta_shift: r["delta_shift"]
                        .as_i64()
                        .ok_or_else(|| bad("delta_shift"))?,
                    tag: r["tag"].as_str().ok_or_else(|| bad("tag"))?.to_string(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Presentation {
            name: v["name"].as_str().unwrap_or("custom").to_string(),
            root_type,
            nodes,
            bonds,
            kappa,
            relations,
        })
    }
}

fn sym(kind: char, node: usize) -> String {
    format!("{kind}{node}")
}

struct Builder {
    rels: Vec<Relation>,
}

impl Builder {
    fn add(&mut self, lhs: String, rhs: String, shift: i64, tag: String) {
        self.rels.push(Relation::new(&lhs, &rhs, shift, tag));
    }
}

fn per_node(b: &mut Builder, i: usize, kappa: i64) {
    let (r, e) = (sym('R', i), sym('E', i));
    b.add(format!("{r} {r}"), "1".into(), 0, format!("rr_id[{i}]"));
    b.add(format!("{r} {e}"), e.clone(), 0, format!("re_absorb[{i}]"));
    b.add(format!("{e} {r}"), e.clone(), 0, format!("er_absorb[{i}]"));
    b.add(format!("{e} {e}"), e, kappa, format!("ee_quasi[{i}]"));
}

fn non_adjacent(b: &mut Builder, i: usize, j: usize) {
    let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
    b.add(
        format!("{ri} {rj}"),
        format!("{rj} {ri}"),
        0,
        format!("rr_commute[{i},{j}]"),
    );
    b.add(
        format!("{ei} {rj}"),
        format!("{rj} {ei}"),
        0,
        format!("er_commute[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri}"),
        format!("{ri} {ej}"),
        0,
        format!("er_commute[{j},{i}]"),
    );
    b.add(
        format!("{ei} {ej}"),
        format!("{ej} {ei}"),
        0,
        format!("ee_commute[{i},{j}]"),
    );
}

/// Single bond relations, for the ordered pair `(i, j)`.
fn single_bond(b: &mut Builder, i: usize, j: usize) {
    let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
    b.add(
        format!("{ri} {rj} {ri}"),
        format!("{rj} {ri} {rj}"),
        0,
        format!("braid[{i},{j}]"),
    );
    b.add(
        format!("{rj} {ri} {ej}"),
        format!("{ei} {ej}"),
        0,
        format!("rre_to_ee[{i},{j}]"),
    );
    b.add(
        format!("{ri} {ej} {ri}"),
        format!("{rj} {ei} {rj}"),
        0,
        format!("rer_swap[{i},{j}]"),
    );
}

/// Double bond block `i ⇒ j`.
fn double_bond(b: &mut Builder, i: usize, j: usize) {
    let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
    b.add(
        format!("{rj} {ri} {rj} {ri}"),
        format!("{ri} {rj} {ri} {rj}"),
        0,
        format!("braid4[{i},{j}]"),
    );
    b.add(
        format!("{rj} {ri} {ej}"),
        format!("{ri} {ej}"),
        0,
        format!("rre_to_re[{i},{j}]"),
    );
    b.add(
        format!("{rj} {ei} {rj} {ei}"),
        format!("{ei} {ej} {ei}"),
        0,
        format!("rere_to_eee[{i},{j}]"),
    );
    b.add(
        format!("{rj} {ri} {rj} {ei}"),
        format!("{ei} {rj} {ri} {rj}"),
        0,
        format!("rrr_e_commute[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri} {ej}"),
        ej.clone(),
        1,
        format!("ere_delta[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ei} {ej}"),
        ej.clone(),
        1,
        format!("eee_delta[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri} {rj}"),
        format!("{ej} {ri}"),
        0,
        format!("err_to_er[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ei} {rj}"),
        format!("{ej} {ei}"),
        0,
        format!("eer_to_ee[{i},{j}]"),
    );
}

/// Triple bond block with `i` short and `j` long.
fn triple_bond(b: &mut Builder, i: usize, j: usize) {
    let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
    b.add(
        format!("{ri} {ej} {ei}"),
        format!("{rj} {ei}"),
        0,
        format!("ree_to_re[{i},{j}]"),
    );
    b.add(
        format!("{ei} {ej} {ri}"),
        format!("{ei} {rj}"),
        0,
        format!("eer_to_er[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri} {ej} {ri} {ej}"),
        ej.clone(),
        0,
        format!("erere_to_e[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri} {ej} {ri} {rj}"),
        format!("{ej} {ri} {rj} {ri}"),
        0,
        format!("ererr_to_errr[{i},{j}]"),
    );
    b.add(
        format!("{ei} {rj} {ei}"),
        ei.clone(),
        2,
        format!("ere_delta2[{i},{j}]"),
    );
    b.add(
        format!("{rj} {ri} {ej} {ri} {ej}"),
        format!("{ri} {rj} {ri} {ej}"),
        0,
        format!("rrere_to_rrre[{i},{j}]"),
    );
    b.add(
        format!("({rj} {ri})^6"),
        "1".into(),
        0,
        format!("braid6[{i},{j}]"),
    );
}

fn kappa_table(t: RootType) -> BTreeMap<usize, i64> {
    let nodes = t.node_labels();
    nodes
        .iter()
        .map(|&n| {
            let k = match t {
                RootType::A(_) | RootType::D(_) => 1,
                RootType::C(_) => {
                    if n == 0 {
                        1
                    } else {
                        2
                    }
                }
                RootType::B(_) => {
                    if n == 0 {
                        2
                    } else {
                        1
                    }
                }
                RootType::F4 => {
                    if n <= 2 {
                        2
                    } else {
                        1
                    }
                }
                RootType::G2Folded => {
                    if n == 0 {
                        3
                    } else {
                        1
                    }
                }
            };
            (n, k)
        })
        .collect()
}

/// Bonds as `(i, j, multiplicity)` with the block orientation of
/// multiple bonds.
fn bond_list(t: RootType) -> Result<Vec<Bond>> {
    let plain = |i, j| Bond {
        i,
        j,
        multiplicity: 1,
        arrow: "none".into(),
    };
    Ok(match t {
        RootType::A(_) | RootType::D(_) => {
            let rs = RootSystem::build(t)?;
            let labels = t.node_labels();
            let mut out = Vec::new();
            for a in 0..labels.len() {
                for b in a + 1..labels.len() {
                    if !rs.inner(rs.simple_index(a), rs.simple_index(b)).is_zero() {
                        out.push(plain(labels[a], labels[b]));
                    }
                }
            }
            out
        }
        RootType::B(n) | RootType::C(n) => {
            if !(2..=8).contains(&n) {
                return Err(Error::Config(format!("unsupported rank for {t}")));
            }
            let (i, j) = if matches!(t, RootType::C(_)) {
                (0, 1)
            } else {
                (1, 0)
            };
            let mut out = vec![Bond {
                i,
                j,
                multiplicity: 2,
                arrow: "i>j".into(),
            }];
            out.extend((1..n - 1).map(|k| plain(k, k + 1)));
            out
        }
        RootType::F4 => vec![
            plain(1, 2),
            Bond {
                i: 3,
                j: 2,
                multiplicity: 2,
                arrow: "i>j".into(),
            },
            plain(3, 4),
        ],
        RootType::G2Folded => vec![Bond {
            i: 0,
            j: 1,
            multiplicity: 3,
            arrow: "i<j".into(),
        }],
    })
}

/// The defining presentation of `Br(Q)` for `Q ∈ {A_n, D_n, B_n, C_n, F4, G2}`.
pub fn presentation_for(t: RootType) -> Result<Presentation> {
    let bonds = bond_list(t)?;
    let kappa = kappa_table(t);
    let nodes = t.node_labels();
    let mut b = Builder { rels: Vec::new() };
    for &n in &nodes {
        per_node(&mut b, n, kappa[&n]);
    }
    let adjacent = |x: usize, y: usize| {
        bonds
            .iter()
            .any(|bd| (bd.i == x && bd.j == y) || (bd.i == y && bd.j == x))
    };
    for (a, &x) in nodes.iter().enumerate() {
        for &y in &nodes[a + 1..] {
            if !adjacent(x, y) {
                non_adjacent(&mut b, x, y);
            }
        }
    }
    for bd in &bonds {
        match bd.multiplicity {
            1 => {
                single_bond(&mut b, bd.i, bd.j);
                single_bond(&mut b, bd.j, bd.i);
            }
            2 => double_bond(&mut b, bd.i, bd.j),
            _ => triple_bond(&mut b, bd.i, bd.j),
        }
    }
    Ok(Presentation {
        name: t.to_string(),
        root_type: t,
        nodes,
        bonds,
        kappa,
        relations: b.rels,
    })
}

/// A named list of relations expected to follow from a presentation.
#[derive(Clone, Debug)]
pub struct DerivedRelationSet {
    pub name: String,
    pub base: String,
    pub items: Vec<Relation>,
}

fn path_lemmas(p: &Presentation) -> DerivedRelationSet {
    let mut b = Builder { rels: Vec::new() };
    for &i in &p.nodes {
        for &j in &p.nodes {
            if i == j || !p.adjacent(i, j) {
                continue;
            }
            let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
            b.add(
                format!("{ei} {rj} {ri}"),
                format!("{ei} {ej}"),
                0,
                format!("err_to_ee[{i},{j}]"),
            );
            b.add(
                format!("{rj} {ei} {ej}"),
                format!("{ri} {ej}"),
                0,
                format!("ree_to_re[{i},{j}]"),
            );
            b.add(
                format!("{ei} {rj} {ei}"),
                ei.clone(),
                0,
                format!("ere_to_e[{i},{j}]"),
            );
            b.add(
                format!("{ej} {ei} {rj}"),
                format!("{ej} {ri}"),
                0,
                format!("eer_to_er[{i},{j}]"),
            );
            b.add(
                format!("{ei} {ej} {ei}"),
                ei.clone(),
                0,
                format!("eee_to_e[{i},{j}]"),
            );
        }
    }
    for &i in &p.nodes {
        for &j in &p.nodes {
            for &k in &p.nodes {
                if i == k || !p.adjacent(i, j) || !p.adjacent(j, k) || p.adjacent(i, k) {
                    continue;
                }
                let (ri, rk, ei, ej, ek) = (
                    sym('R', i),
                    sym('R', k),
                    sym('E', i),
                    sym('E', j),
                    sym('E', k),
                );
                b.add(
                    format!("{ej} {ei} {rk} {ej}"),
                    format!("{ej} {ri} {ek} {ej}"),
                    0,
                    format!("eere_to_eree[{i},{j},{k}]"),
                );
                b.add(
                    format!("{ej} {ri} {rk} {ej}"),
                    format!("{ej} {ei} {ek} {ej}"),
                    0,
                    format!("erre_to_eeee[{i},{j},{k}]"),
                );
            }
        }
    }
    DerivedRelationSet {
        name: "path lemmas".into(),
        base: p.name.clone(),
        items: b.rels,
    }
}

fn double_bond_lemmas(p: &Presentation, i: usize, j: usize) -> DerivedRelationSet {
    let (ri, rj, ei, ej) = (sym('R', i), sym('R', j), sym('E', i), sym('E', j));
    let mut b = Builder { rels: Vec::new() };
    b.add(
        format!("{rj} {ei} {ej}"),
        format!("{ei} {ej}"),
        0,
        format!("ree_to_ee[{i},{j}]"),
    );
    b.add(
        format!("{ei} {ej} {ei}"),
        format!("{ei} {rj} {ei}"),
        0,
        format!("eee_to_ere[{i},{j}]"),
    );
    b.add(
        format!("{ej} {ri} {rj} {ei}"),
        format!("{ej} {ei}"),
        0,
        format!("erre_to_ee[{i},{j}]"),
    );
    b.add(
        format!("{ri} {rj} {ei} {rj}"),
        format!("{rj} {ei} {rj} {ri}"),
        0,
        format!("rrer_to_rerr[{i},{j}]"),
    );
    b.add(
        format!("{ei} {rj} {ei} {rj}"),
        format!("{ei} {ej} {ei}"),
        0,
        format!("erer_to_eee[{i},{j}]"),
    );
    DerivedRelationSet {
        name: "double bond lemmas".into(),
        base: p.name.clone(),
        items: b.rels,
    }
}

fn g2_lemmas(p: &Presentation) -> DerivedRelationSet {
    let mut b = Builder { rels: Vec::new() };
    b.add(
        "R0 R1 E0".into(),
        "E1 E0".into(),
        0,
        "rre_to_ee[0,1]".into(),
    );
    b.add(
        "E0 R1 R0".into(),
        "E0 E1".into(),
        0,
        "err_to_ee[0,1]".into(),
    );
    b.add("E0 E1 E0".into(), "E0".into(), 2, "eee_delta2[0,1]".into());
    b.add(
        "R1 R0 E1 R0 R1 E0".into(),
        "E0".into(),
        1,
        "rrerre_delta[1,0]".into(),
    );
    DerivedRelationSet {
        name: "G2 lemmas".into(),
        base: p.name.clone(),
        items: b.rels,
    }
}

/// Curated derived relations for a presentation, in proof order.
pub fn derived_sets_for(p: &Presentation) -> Result<Vec<DerivedRelationSet>> {
    Ok(match p.root_type {
        RootType::A(_) | RootType::D(_) => vec![path_lemmas(p)],
        RootType::B(_) | RootType::C(_) | RootType::F4 => {
            let bd = p
                .bonds
                .iter()
                .find(|b| b.multiplicity == 2)
                .ok_or_else(|| Error::Config("no double bond".into()))?;
            vec![double_bond_lemmas(p, bd.i, bd.j)]
        }
        RootType::G2Folded => vec![g2_lemmas(p)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_presentation() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        assert_eq!(p.nodes, vec![0, 1]);
        assert_eq!(p.kappa[&0], 3);
        assert_eq!(p.kappa[&1], 1);
        let b6 = p.relation("braid6[0,1]").unwrap();
        assert_eq!(
            b6.lhs.to_lower_string(),
            "r1 r0 r1 r0 r1 r0 r1 r0 r1 r0 r1 r0"
        );
        assert!(b6.rhs.is_empty());
        assert_eq!(p.relation("ee_quasi[0]").unwrap().delta_shift, 3);
        assert_eq!(
            p.relation("ere_delta2[0,1]").unwrap().display(true),
            "e0 r1 e0 = d^2 e0"
        );
        assert_eq!(
            p.relation("erere_to_e[0,1]").unwrap().display(true),
            "e1 r0 e1 r0 e1 = e1"
        );
        assert_eq!(p.relations.len(), 8 + 7);
    }

    #[test]
    fn d4_presentation() {
        let p = presentation_for(RootType::D(4)).unwrap();
        assert_eq!(p.bonds.len(), 3);
        for (i, j) in [(1, 3), (3, 1)] {
            let r = p.relation(&format!("rre_to_ee[{i},{j}]")).unwrap();
            assert_eq!(r.display(false), format!("R{j} R{i} E{j} = E{i} E{j}"));
        }
        // 4 per node, 4 per non-adjacent pair, 6 per bond
        assert_eq!(p.relations.len(), 16 + 3 * 4 + 3 * 6);
        let sets = derived_sets_for(&p).unwrap();
        assert!(sets[0]
            .items
            .iter()
            .any(|r| r.display(false) == "E1 E3 E1 = E1"));
        assert_eq!(sets[0].items.len(), 6 * 5 + 6 * 2);
    }

    #[test]
    fn double_bond_presentations() {
        let c2 = presentation_for(RootType::C(2)).unwrap();
        assert_eq!((c2.kappa[&0], c2.kappa[&1]), (1, 2));
        let lemmas = derived_sets_for(&c2).unwrap();
        assert!(lemmas[0]
            .items
            .iter()
            .any(|r| r.display(true) == "e0 e1 e0 = e0 r1 e0"));
        let b3 = presentation_for(RootType::B(3)).unwrap();
        assert_eq!(b3.kappa[&0], 2);
        assert!(b3.relation("ere_delta[1,0]").is_some());
        let f4 = presentation_for(RootType::F4).unwrap();
        assert_eq!(
            f4.kappa.values().copied().collect::<Vec<_>>(),
            vec![2, 2, 1, 1]
        );
        assert!(presentation_for(RootType::B(1)).is_err());
    }

    #[test]
    fn json_round_trip() {
        for t in [RootType::G2Folded, RootType::D(4), RootType::C(2)] {
            let p = presentation_for(t).unwrap();
            let q = Presentation::from_json(&p.to_json()).unwrap();
            assert_eq!(q.relations, p.relations);
            assert_eq!(q.bonds, p.bonds);
            assert_eq!(q.kappa, p.kappa);
        }
    }

    #[test]
    fn letters() {
        let p = presentation_for(RootType::D(4)).unwrap();
        let w = MonoidWord::parse("E1 R3").unwrap();
        let l = p.encode(&w).unwrap();
        assert_eq!(l, vec![1, 4]);
        assert_eq!(p.decode(&l), w);
        assert!(p.encode(&MonoidWord::parse("E5").unwrap()).is_err());
    }
}
