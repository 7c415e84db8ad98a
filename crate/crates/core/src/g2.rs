//! The Brauer algebra of type G2 as an explicit 39-dimensional algebra.
//!
//! Basis: the 12 elements of `W(G2)` and the sandwich forms `u e_i v w` with
//! `u ∈ D_i`, `v ∈ K_i`, `w ∈ D_i^op`. `D_i` are the shortlex-least left
//! coset representatives of `N_i`, the stabilizer of `±β_i`, and `D_i^op`
//! their inverses. `K_0 = {1}`, `K_1 = {1, r0r1r0r1r0}`.
//!
//! Products of two sandwiches go through `e_i g e_j = g e_β e_j` with
//! `β = g⁻¹β_i` and the twelve products `e_β e_j` listed in [`CASES`]; each of
//! those is certified from the defining relations by the prover.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{derived_sets_for, presentation_for, Relation};
use crate::prover::{Mode, Prover, SearchBounds};
use crate::roots::{RootSet, RootSystem, RootType, SignedRoot};
use crate::weyl::{Subgroup, WeylGroup};
use crate::word::{GenKind, GenSymbol, MonoidWord};

/// `e_β e_j` for each positive root (by label) and node `j`.
pub const CASES: [(&str, usize, &str); 12] = [
    ("b0", 0, "d^3 e0"),
    ("b0+b1", 0, "d^2 r1 e0"),
    ("2b0+b1", 0, "d^2 r0 r1 e0"),
    ("b1", 0, "r0 r1 e0"),
    ("3b0+b1", 0, "r1 e0"),
    ("3b0+2b1", 0, "d e0"),
    ("b0", 1, "e0 r1 r0"),
    ("b0+b1", 1, "r1 e0 r1 r0"),
    ("2b0+b1", 1, "d r0 r1 e0 r1 r0"),
    ("b1", 1, "d e1"),
    ("3b0+b1", 1, "r1 r0 r1 r0 e1"),
    ("3b0+2b1", 1, "r0 r1 r0 e1"),
];

const KAPPA: [i64; 2] = [3, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum G2NormalForm {
    Group(usize),
    Sandwich {
        u: usize,
        i: usize,
        v: usize,
        w: usize,
    },
}

/// A product `δ^t a1 e_k a2` from the case list.
#[derive(Clone, Copy, Debug)]
struct Case {
    t: i64,
    a1: usize,
    k: usize,
    a2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EBeta {
    pub beta: String,
    pub conjugator: String,
    pub form: String,
    pub basis_index: usize,
}

pub struct G2Algebra {
    w: WeylGroup,
    d: [Vec<usize>; 2],
    dop: [Vec<usize>; 2],
    n: [Subgroup; 2],
    k: [Vec<usize>; 2],
    /// Part of `N_i` absorbed by `e_i` on the right.
    absorbed: [Subgroup; 2],
    basis: Vec<G2NormalForm>,
    index: HashMap<G2NormalForm, usize>,
    /// Per positive root: node of the orbit and conjugator in `D_i`.
    root_data: Vec<(usize, usize)>,
    cases: Vec<[Case; 2]>,
    table: Vec<Vec<(i64, usize)>>,
}

fn parse_case(w: &WeylGroup, text: &str) -> Result<Case> {
    let word = MonoidWord::parse(text)?;
    let (t, free) = word.split_delta();
    let pos = free
        .symbols
        .iter()
        .position(|s| s.kind == GenKind::E)
        .ok_or_else(|| Error::Parse(format!("case `{text}` has no e")))?;
    let gens = |syms: &[GenSymbol]| -> Result<Vec<usize>> {
        syms.iter()
            .map(|s| match (s.kind, s.node) {
                (GenKind::R, Some(n)) if n < 2 => Ok(n),
                _ => Err(Error::Parse(format!(
                    "case `{text}` is not of the form a e b"
                ))),
            })
            .collect()
    };
    Ok(Case {
        t,
        a1: w.from_word(&gens(&free.symbols[..pos])?),
        k: free.symbols[pos].node.unwrap_or(0),
        a2: w.from_word(&gens(&free.symbols[pos + 1..])?),
    })
}

impl G2Algebra {
    pub fn build() -> Result<Self> {
        let rs = RootSystem::build(RootType::G2Folded)?;
        let w = WeylGroup::enumerate(Arc::new(rs), 64)?;
        let rs = w.root_system();
        let simple = [rs.simple_index(0), rs.simple_index(1)];
        let n = [
            w.stabilizer(RootSet::singleton(simple[0])),
            w.stabilizer(RootSet::singleton(simple[1])),
        ];
        let d = [w.left_coset_reps(&n[0]), w.left_coset_reps(&n[1])];
        let dop = [
            d[0].iter().map(|&x| w.inverse(x)).collect(),
            d[1].iter().map(|&x| w.inverse(x)).collect(),
        ];
        let y1 = w.from_word(&[0, 1, 0, 1, 0]);
        let k = [vec![0], vec![0, y1]];
        let absorbed = [n[0].clone(), w.generate(&[w.generator(1)])];
        let mut basis: Vec<G2NormalForm> = (0..w.order()).map(G2NormalForm::Group).collect();
        for i in [1, 0] {
            for &u in &d[i] {
                for &v in &k[i] {
                    for &x in &dop[i] {
                        basis.push(G2NormalForm::Sandwich { u, i, v, w: x });
                    }
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let short = rs.norm2(simple[0]);
        let mut root_data = Vec::new();
        for q in 0..rs.num_positive() {
            let i = if rs.norm2(q) == short { 0 } else { 1 };
            let c = d[i]
                .iter()
                .copied()
                .find(|&c| {
                    w.act_on_root(c, SignedRoot::positive(simple[i])) == SignedRoot::positive(q)
                })
                .ok_or_else(|| Error::Domain(format!("no conjugator for {}", rs.root_label(q))))?;
            root_data.push((i, c));
        }
        let mut cases = vec![
            [Case {
                t: 0,
                a1: 0,
                k: 0,
                a2: 0
            }; 2];
            rs.num_positive()
        ];
        for (label, j, rhs) in CASES {
            let q = rs.parse_root(label)?;
            cases[q][j] = parse_case(&w, rhs)?;
        }
        let mut alg = G2Algebra {
            w,
            d,
            dop,
            n,
            k,
            absorbed,
            basis,
            index,
            root_data,
            cases,
            table: Vec::new(),
        };
        let size = alg.basis.len();
        let mut table = vec![vec![(0, 0); size]; size];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = alg.multiply_forms(alg.basis[a], alg.basis[b]);
            }
        }
        alg.table = table;
        Ok(alg)
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.w
    }

    pub fn basis(&self) -> &[G2NormalForm] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coset_reps(&self, i: usize) -> &[usize] {
        &self.d[i]
    }

    pub fn stabilizer(&self, i: usize) -> &Subgroup {
        &self.n[i]
    }

    pub fn k_group(&self, i: usize) -> &[usize] {
        &self.k[i]
    }

    pub fn index_of(&self, f: G2NormalForm) -> Option<usize> {
        self.index.get(&f).copied()
    }

    /// `(δ exponent, basis index)` of `basis[a]·basis[b]`.
    pub fn product(&self, a: usize, b: usize) -> (i64, usize) {
        self.table[a][b]
    }

    /// Normal form of `x e_k g`.
    fn sandwich(&self, x: usize, k: usize, g: usize) -> G2NormalForm {
        let w = &self.w;
        let u = self.d[k]
            .iter()
            .copied()
            .find(|&a| self.n[k].contains(w.mul(w.inverse(a), x)))
            .expect("coset representatives cover W");
        let h = w.mul(w.mul(w.inverse(u), x), g);
        let c = self.dop[k]
            .iter()
            .copied()
            .find(|&c| self.n[k].contains(w.mul(h, w.inverse(c))))
            .expect("coset representatives cover W");
        let m = w.mul(h, w.inverse(c));
        let v = self.k[k]
            .iter()
            .copied()
            .find(|&v| self.absorbed[k].contains(w.mul(w.inverse(v), m)))
            .expect("N_i = K_i × absorbed part");
        G2NormalForm::Sandwich { u, i: k, v, w: c }
    }

    fn multiply_forms(&self, x: G2NormalForm, y: G2NormalForm) -> (i64, usize) {
        use G2NormalForm::*;
        let w = &self.w;
        let (t, form) = match (x, y) {
            (Group(a), Group(b)) => (0, Group(w.mul(a, b))),
            (Group(a), Sandwich { u, i, v, w: c }) => {
                (0, self.sandwich(w.mul(a, u), i, w.mul(v, c)))
            }
            (Sandwich { u, i, v, w: c }, Group(b)) => {
                (0, self.sandwich(u, i, w.mul(w.mul(v, c), b)))
            }
            (
                Sandwich {
                    u: u1,
                    i,
                    v: v1,
                    w: w1,
                },
                Sandwich {
                    u: u2,
                    i: j,
                    v: v2,
                    w: w2,
                },
            ) => {
                // e_i g e_j = g e_β e_j with β = g⁻¹β_i
                let g = w.mul(w.mul(v1, w1), u2);
                let rs = w.root_system();
                let beta = w
                    .act_on_root(w.inverse(g), SignedRoot::positive(rs.simple_index(i)))
                    .index as usize;
                let case = self.cases[beta][j];
                let left = w.mul(w.mul(u1, g), case.a1);
                let right = w.mul(w.mul(case.a2, v2), w2);
                (case.t, self.sandwich(left, case.k, right))
            }
        };
        (t, self.index[&form])
    }

    pub fn generator(&self, g: GenSymbol) -> Result<(i64, usize)> {
        match (g.kind, g.node) {
            (GenKind::Delta, _) => Ok((1, 0)),
            (GenKind::DeltaInv, _) => Ok((-1, 0)),
            (GenKind::R, Some(n)) if n < 2 => Ok((0, self.w.generator(n))),
            (GenKind::E, Some(n)) if n < 2 => Ok((0, self.index[&self.sandwich(0, n, 0)])),
            _ => Err(Error::Domain(format!(
                "symbol outside the G2 alphabet: {g:?}"
            ))),
        }
    }

    pub fn multiply(&self, x: (i64, usize), y: (i64, usize)) -> (i64, usize) {
        let (t, k) = self.table[x.1][y.1];
        (x.0 + y.0 + t, k)
    }

    pub fn normalize(&self, word: &MonoidWord) -> Result<(i64, usize)> {
        word.symbols
            .iter()
            .try_fold((0, 0), |acc, &g| Ok(self.multiply(acc, self.generator(g)?)))
    }

    pub fn op(&self, k: usize) -> usize {
        let w = &self.w;
        match self.basis[k] {
            G2NormalForm::Group(a) => w.inverse(a),
            G2NormalForm::Sandwich { u, i, v, w: c } => {
                self.index[&self.sandwich(w.inverse(c), i, w.mul(w.inverse(v), w.inverse(u)))]
            }
        }
    }

    pub fn format_form(&self, f: G2NormalForm) -> String {
        let w = &self.w;
        let part = |x: usize| w.format_word(w.word(x), 'r');
        match f {
            G2NormalForm::Group(a) => w.format_element(a, 'r'),
            G2NormalForm::Sandwich { u, i, v, w: c } => {
                let mut parts: Vec<String> = (u != 0).then(|| part(u)).into_iter().collect();
                parts.push(format!("e{i}"));
                parts.extend([v, c].into_iter().filter(|&x| x != 0).map(part));
                parts.join(" ")
            }
        }
    }

    pub fn format_element(&self, x: (i64, usize)) -> String {
        let body = self.format_form(self.basis[x.1]);
        match x.0 {
            0 => body,
            1 => format!("d {body}"),
            t => format!("d^{t} {body}"),
        }
    }

    pub fn e_beta(&self, label: &str) -> Result<EBeta> {
        let rs = self.w.root_system();
        let q = rs
            .parse_root(label)
            .map_err(|_| Error::Domain(format!("`{label}` is not a positive root of G2")))?;
        let (i, c) = self.root_data[q];
        let e = self.index[&self.sandwich(0, i, 0)];
        let x = self.multiply(self.multiply((0, c), (0, e)), (0, self.w.inverse(c)));
        Ok(EBeta {
            beta: rs.root_label(q),
            conjugator: self.w.format_element(c, 'r'),
            form: self.format_element(x),
            basis_index: x.1,
        })
    }

    pub fn table_rows(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (t, k) = self.table[i][j];
                out.push(TableEntry {
                    i,
                    j,
                    delta_exp: t,
                    k,
                });
            }
        }
        out
    }

    pub fn table_csv(&self) -> String {
        let mut out = String::from("i,j,delta_exp,k\n");
        for e in self.table_rows() {
            let _ = writeln!(out, "{},{},{},{}", e.i, e.j, e.delta_exp, e.k);
        }
        out
    }

    pub fn table_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": (0..self.dim()).map(|k| self.format_form(self.basis[k])).collect::<Vec<_>>(),
            "products": self.table_rows(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub delta_exp: i64,
    pub k: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct G2Report {
    pub basis_size: usize,
    pub group_forms: usize,
    pub e1_forms: usize,
    pub e0_forms: usize,
    pub closure_ok: bool,
    pub associativity_triples: usize,
    pub associativity_failures: Vec<String>,
    pub relations: Vec<RelationCheck>,
    pub derived_relations: Vec<RelationCheck>,
    pub op_involution_ok: bool,
    pub op_fixes_generators: bool,
    pub op_anti_automorphism_failures: usize,
    pub ideal_chain_ranks: Vec<usize>,
    pub e_betas: Vec<EBeta>,
    pub e_beta_square_ok: bool,
    pub e_beta_conjugator_independent: bool,
    pub stabilizer_fixes_e: bool,
    pub case_products_certified: Vec<RelationCheck>,
    pub two_path_pairs: usize,
    pub two_path_failures: Vec<String>,
    pub ok: bool,
}

fn check(alg: &G2Algebra, rel: &Relation) -> Result<RelationCheck> {
    let l = alg.normalize(&rel.lhs)?;
    let r = alg.normalize(&rel.rhs)?;
    let r = (r.0 + rel.delta_shift, r.1);
    Ok(RelationCheck {
        relation: format!("{} [{}]", rel.display(true), rel.tag),
        lhs: alg.format_element(l),
        rhs: alg.format_element(r),
        ok: l == r,
    })
}

/// Basis indices of the two-sided ideal generated by `k`, ignoring δ.
fn ideal(alg: &G2Algebra, k: usize) -> Vec<usize> {
    let mut seen = vec![false; alg.dim()];
    seen[k] = true;
    let mut stack = vec![k];
    while let Some(x) = stack.pop() {
        for b in 0..alg.dim() {
            for y in [alg.product(b, x).1, alg.product(x, b).1] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..alg.dim()).filter(|&k| seen[k]).collect()
}

/// All words over `{r0, r1, e0, e1}` up to the given length.
pub fn short_words(max_len: usize) -> Vec<MonoidWord> {
    let gens = [
        GenSymbol::r(0),
        GenSymbol::r(1),
        GenSymbol::e(0),
        GenSymbol::e(1),
    ];
    let mut out = vec![MonoidWord::empty()];
    let mut layer = vec![MonoidWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut s = w.symbols.clone();
                s.push(g);
                next.push(MonoidWord::new(s));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Runs the full verification suite. `certify_cases` also proves the twelve
/// `e_β e_j` products from the defining relations.
pub fn verify(alg: &G2Algebra, certify_cases: bool) -> Result<G2Report> {
    let dim = alg.dim();
    let w = &alg.w;
    let count = |i: usize| {
        alg.basis
            .iter()
            .filter(|f| matches!(f, G2NormalForm::Sandwich { i: x, .. } if *x == i))
            .count()
    };
    let mut associativity_failures = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let ab = alg.product(a, b);
            for c in 0..dim {
                let bc = alg.product(b, c);
                let l = alg.multiply(ab, (0, c));
                let r = alg.multiply((0, a), bc);
                if l != r && associativity_failures.len() < 20 {
                    associativity_failures.push(format!("({a},{b},{c}): {l:?} vs {r:?}"));
                }
            }
        }
    }
    let p = presentation_for(RootType::G2Folded)?;
    let relations = p
        .relations
        .iter()
        .map(|r| check(alg, r))
        .collect::<Result<Vec<_>>>()?;
    let mut derived_relations = Vec::new();
    for set in derived_sets_for(&p)? {
        for r in &set.items {
            derived_relations.push(check(alg, r)?);
        }
    }
    let op_involution_ok = (0..dim).all(|k| alg.op(alg.op(k)) == k);
    let gens = [
        GenSymbol::r(0),
        GenSymbol::r(1),
        GenSymbol::e(0),
        GenSymbol::e(1),
    ];
    let op_fixes_generators = gens.iter().all(|&g| {
        alg.generator(g)
            .map(|(_, k)| alg.op(k) == k)
            .unwrap_or(false)
    });
    let mut op_anti_automorphism_failures = 0;
    for a in 0..dim {
        for b in 0..dim {
            let (t, k) = alg.product(a, b);
            if (t, alg.op(k)) != alg.product(alg.op(b), alg.op(a)) {
                op_anti_automorphism_failures += 1;
            }
        }
    }
    let x1 = alg.normalize(&MonoidWord::parse("r1 r0 e1 r0 r1")?)?.1;
    let x0 = alg.normalize(&MonoidWord::parse("e0 r1 r0 e1 r0 r1")?)?.1;
    let (i1, i0) = (ideal(alg, x1), ideal(alg, x0));
    let ideal_chain_ranks = vec![dim - i1.len(), i1.len() - i0.len(), i0.len()];
    let rs = w.root_system();
    let mut e_betas = Vec::new();
    let mut e_beta_square_ok = true;
    let mut e_beta_conjugator_independent = true;
    for q in 0..rs.num_positive() {
        let eb = alg.e_beta(&rs.root_label(q))?;
        let (i, _) = alg.root_data[q];
        let sq = alg.product(eb.basis_index, eb.basis_index);
        e_beta_square_ok &= sq == (KAPPA[i], eb.basis_index);
        // every g with g·β_i = ±β gives the same conjugate
        let e = alg.generator(GenSymbol::e(i))?.1;
        for g in 0..w.order() {
            if w.act_on_root(g, SignedRoot::positive(rs.simple_index(i)))
                .index as usize
                == q
            {
                let x = alg.multiply(alg.multiply((0, g), (0, e)), (0, w.inverse(g)));
                e_beta_conjugator_independent &= x == (0, eb.basis_index);
            }
        }
        e_betas.push(eb);
    }
    let mut stabilizer_fixes_e = true;
    for i in 0..2 {
        let e = alg.generator(GenSymbol::e(i))?.1;
        for &a in &alg.n[i].elements {
            stabilizer_fixes_e &=
                alg.multiply(alg.multiply((0, a), (0, e)), (0, w.inverse(a))) == (0, e);
        }
    }
    let mut case_products_certified = Vec::new();
    if certify_cases {
        let prover = Prover::new(&p, Mode::Skeleton)?;
        for (label, j, rhs) in CASES {
            let q = rs.parse_root(label)?;
            let (i, c) = alg.root_data[q];
            let cw = w.word(c);
            let mut lhs: Vec<GenSymbol> = cw.iter().map(|&g| GenSymbol::r(g)).collect();
            lhs.push(GenSymbol::e(i));
            lhs.extend(cw.iter().rev().map(|&g| GenSymbol::r(g)));
            lhs.push(GenSymbol::e(j));
            let lhs = MonoidWord::new(lhs);
            let rhs_w = MonoidWord::parse(rhs)?;
            let out = prover.prove(&lhs, &rhs_w, SearchBounds::default())?;
            let ok =
                out.delta() == Some(0) && out.trace().map(|t| prover.replay(t).ok).unwrap_or(false);
            case_products_certified.push(RelationCheck {
                relation: format!("{} = {}", lhs.to_lower_string(), rhs_w.to_lower_string()),
                lhs: lhs.to_lower_string(),
                rhs: rhs_w.to_lower_string(),
                ok,
            });
        }
    }
    let words = short_words(3);
    let mut two_path_failures = Vec::new();
    for a in &words {
        for b in &words {
            let joint = alg.normalize(&a.concat(b))?;
            let split = alg.multiply(alg.normalize(a)?, alg.normalize(b)?);
            if joint != split && two_path_failures.len() < 20 {
                two_path_failures.push(format!(
                    "{} · {}",
                    a.to_lower_string(),
                    b.to_lower_string()
                ));
            }
        }
    }
    let mut report = G2Report {
        basis_size: dim,
        group_forms: w.order(),
        e1_forms: count(1),
        e0_forms: count(0),
        closure_ok: alg
            .table
            .iter()
            .all(|row| row.len() == dim && row.iter().all(|&(_, k)| k < dim)),
        associativity_triples: dim * dim * dim,
        associativity_failures,
        relations,
        derived_relations,
        op_involution_ok,
        op_fixes_generators,
        op_anti_automorphism_failures,
        ideal_chain_ranks,
        e_betas,
        e_beta_square_ok,
        e_beta_conjugator_independent,
        stabilizer_fixes_e,
        case_products_certified,
        two_path_pairs: words.len() * words.len(),
        two_path_failures,
        ok: false,
    };
    report.ok = report.basis_size == 39
        && report.closure_ok
        && report.associativity_failures.is_empty()
        && report.relations.iter().all(|r| r.ok)
        && report.derived_relations.iter().all(|r| r.ok)
        && report.op_involution_ok
        && report.op_fixes_generators
        && report.op_anti_automorphism_failures == 0
        && report.ideal_chain_ranks == [12, 18, 9]
        && report.e_beta_square_ok
        && report.e_beta_conjugator_independent
        && report.stabilizer_fixes_e
        && report.case_products_certified.iter().all(|c| c.ok)
        && report.two_path_failures.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(alg: &G2Algebra, s: &str) -> (i64, usize) {
        alg.normalize(&MonoidWord::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn basis_and_cosets() {
        let alg = G2Algebra::build().unwrap();
        assert_eq!(alg.dim(), 39);
        let w = alg.weyl();
        let fmt = |v: &[usize]| {
            v.iter()
                .map(|&x| w.format_element(x, 'r'))
                .collect::<Vec<_>>()
        };
        assert_eq!(fmt(alg.coset_reps(0)), ["1", "r1", "r0r1"]);
        assert_eq!(fmt(alg.coset_reps(1)), ["1", "r0", "r1r0"]);
        assert_eq!(fmt(alg.k_group(1)), ["1", "r0r1r0r1r0"]);
        assert!(alg
            .k_group(1)
            .iter()
            .all(|&k| alg.stabilizer(1).contains(k)));
    }

    #[test]
    fn normalize_examples() {
        let alg = G2Algebra::build().unwrap();
        let e0 = nf(&alg, "e0");
        assert_eq!(nf(&alg, "e0 e0"), (3, e0.1));
        assert_eq!(nf(&alg, "r1 r0 r1 r0 r1 e0"), e0);
        assert_eq!(nf(&alg, "e0 e1 e0"), (2, e0.1));
        let x = nf(&alg, "r0 e1");
        let w = alg.weyl();
        assert_eq!(
            alg.basis()[x.1],
            G2NormalForm::Sandwich {
                u: w.generator(0),
                i: 1,
                v: 0,
                w: 0
            }
        );
        assert_eq!(alg.format_element(x), "r0 e1");
        assert_eq!(nf(&alg, "d^-1 e1 d"), nf(&alg, "e1"));
    }

    #[test]
    fn multiply_examples() {
        let alg = G2Algebra::build().unwrap();
        assert_eq!(nf(&alg, "e1 e0"), nf(&alg, "r0 r1 e0"));
        // e0 r1 e0 = δ² e0, so the product carries δ², not δ
        let x = alg.multiply(nf(&alg, "r1 e0 r1"), nf(&alg, "e0"));
        assert_eq!(x, (2, nf(&alg, "r1 e0").1));
        for k in 0..alg.dim() {
            assert_eq!(alg.product(0, k), (0, k));
            assert_eq!(alg.product(k, 0), (0, k));
        }
    }

    #[test]
    fn e_beta_examples() {
        let alg = G2Algebra::build().unwrap();
        assert_eq!(alg.e_beta("b0").unwrap().basis_index, nf(&alg, "e0").1);
        assert_eq!(
            alg.e_beta("b0+b1").unwrap().basis_index,
            nf(&alg, "r1 e0 r1").1
        );
        assert!(matches!(alg.e_beta("2b1"), Err(Error::Domain(_))));
    }

    #[test]
    fn full_verification() {
        let alg = G2Algebra::build().unwrap();
        let rep = verify(&alg, true).unwrap();
        assert!(
            rep.associativity_failures.is_empty(),
            "{:?}",
            rep.associativity_failures
        );
        assert_eq!(rep.associativity_triples, 59319);
        assert_eq!(rep.ideal_chain_ranks, [12, 18, 9]);
        assert_eq!((rep.group_forms, rep.e1_forms, rep.e0_forms), (12, 18, 9));
        assert!(rep.relations.iter().all(|r| r.ok), "{:?}", rep.relations);
        assert!(
            rep.derived_relations.iter().all(|r| r.ok),
            "{:?}",
            rep.derived_relations
        );
        assert!(rep.ok, "{rep:#?}");
    }
}
