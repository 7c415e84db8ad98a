//! Root systems in exact ambient coordinates.
//!
//! Types `A_n` and `D_n` are realized in an orthonormal basis `{ε_i}`. The
//! triality automorphism of `D4` is a fixed rational 4×4 matrix, and averaging
//! over its orbit projects `D4` onto the plane carrying the folded `G2`
//! system, whose simple roots are `β0 = (α1+α2+α4)/3` and `β1 = α3`.
//!
//! Some texts write the `G2` simple roots as `α0, α1`; here they are always
//! `β0` (short) and `β1` (long).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, invert_matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    D(usize),
    /// `G2` obtained by folding `D4` along triality.
    G2Folded,
    /// Node 0 short, nodes `1..n` long.
    B(usize),
    /// Node 0 long, nodes `1..n` short.
    C(usize),
    /// Nodes 1, 2 short and 3, 4 long, bonds `1−2⇒3−4`.
    F4,
}

impl RootType {
    pub fn rank(&self) -> usize {
        match self {
            RootType::A(n) | RootType::D(n) | RootType::B(n) | RootType::C(n) => *n,
            RootType::G2Folded => 2,
            RootType::F4 => 4,
        }
    }

    /// Node labels in generator order: `1..=n` for `A`/`D`, `0, 1` for `G2`.
    pub fn node_labels(&self) -> Vec<usize> {
        match self {
            RootType::A(n) | RootType::D(n) => (1..=*n).collect(),
            RootType::B(n) | RootType::C(n) => (0..*n).collect(),
            RootType::G2Folded => vec![0, 1],
            RootType::F4 => (1..=4).collect(),
        }
    }

    /// Letter used when printing simple roots (`a3`, `b0`).
    pub fn root_letter(&self) -> char {
        match self {
            RootType::G2Folded => 'b',
            _ => 'a',
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self, RootType::A(_) | RootType::D(_))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::G2Folded => write!(f, "G2"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::F4 => write!(f, "F4"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if t == "G2" || t == "G2-FOLDED" {
            return Ok(RootType::G2Folded);
        }
        if t == "F4" {
            return Ok(RootType::F4);
        }
        let (head, rank) = t.split_at(1.min(t.len()));
        let rank: usize = rank
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Config(format!("unknown root system `{s}`")))?;
        match head {
            "A" => Ok(RootType::A(rank)),
            "D" => Ok(RootType::D(rank)),
            "B" => Ok(RootType::B(rank)),
            "C" => Ok(RootType::C(rank)),
            _ => Err(Error::Config(format!("unknown root system `{s}`"))),
        }
    }
}

/// A root together with its ambient and simple-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<Rational>,
    pub simple_coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

/// Image of a positive root under a signed permutation: `±β_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: u16,
    pub negative: bool,
}

impl SignedRoot {
    pub fn positive(index: usize) -> Self {
        SignedRoot {
            index: index as u16,
            negative: false,
        }
    }

    pub fn flip(self, flip: bool) -> Self {
        SignedRoot {
            index: self.index,
            negative: self.negative ^ flip,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    root_type: RootType,
    simple: Vec<Root>,
    positive: Vec<Root>,
    simple_index: Vec<usize>,
    by_simple: HashMap<Vec<i64>, usize>,
    by_coords: HashMap<Vec<Rational>, SignedRoot>,
    gram: Vec<Vec<Rational>>,
    /// `reflections[k][m]` is `s_{β_k}(β_m)` as a signed positive root.
    reflections: Vec<Vec<SignedRoot>>,
    /// Inverse of the Gram matrix of the simple roots.
    gram_inverse: Vec<Vec<Rational>>,
}

fn reflect(alpha: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let c = Rational::integer(2) * dot(x, alpha) / dot(alpha, alpha);
    x.iter().zip(alpha).map(|(xi, ai)| *xi - c * *ai).collect()
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; dim];
    v[i] = Rational::integer(sign);
    v
}

fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

fn scale(a: &[Rational], c: Rational) -> Vec<Rational> {
    a.iter().map(|x| *x * c).collect()
}

/// Simple roots of `A_n`, `α_i = ε_{i+1} − ε_i` in `R^{n+1}`.
fn simple_roots_a(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| add(&unit(n + 1, i + 1, 1), &unit(n + 1, i, -1)))
        .collect()
}

/// Simple roots of `D_n`: `α1 = ε1+ε2`, `α_i = ε_i − ε_{i−1}` for `i ≥ 2`.
fn simple_roots_d(n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![add(&unit(n, 0, 1), &unit(n, 1, 1))];
    for i in 1..n {
        out.push(add(&unit(n, i, 1), &unit(n, i - 1, -1)));
    }
    out
}

/// Node 0 is `c·ε1`, node `i ≥ 1` is `ε_{i+1} − ε_i`.
fn simple_roots_bc(n: usize, c: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![unit(n, 0, c)];
    for i in 1..n {
        out.push(add(&unit(n, i, 1), &unit(n, i - 1, -1)));
    }
    out
}

fn simple_roots_f4() -> Vec<Vec<Rational>> {
    let h = Rational::new(1, 2);
    vec![
        vec![h, -h, -h, -h],
        unit(4, 3, 1),
        add(&unit(4, 2, 1), &unit(4, 3, -1)),
        add(&unit(4, 1, 1), &unit(4, 2, -1)),
    ]
}

impl RootSystem {
    /// Builds `A_n` (`1 ≤ n ≤ 8`) or `D_n` (`4 ≤ n ≤ 8`); `G2` goes through
    /// [`build_g2_roots`]. `B_n`, `C_n` (`2 ≤ n ≤ 8`) and `F4` are available
    /// for their Weyl groups.
    pub fn build(root_type: RootType) -> Result<Self> {
        let simple = match root_type {
            RootType::A(n) if (1..=8).contains(&n) => simple_roots_a(n),
            RootType::D(n) if (4..=8).contains(&n) => simple_roots_d(n),
            RootType::B(n) if (2..=8).contains(&n) => simple_roots_bc(n, 1),
            RootType::C(n) if (2..=8).contains(&n) => simple_roots_bc(n, 2),
            RootType::F4 => simple_roots_f4(),
            RootType::G2Folded => return build_g2_roots(&FoldingMap::triality()),
            other => {
                return Err(Error::Config(format!(
                    "unsupported root system {other} (A: 1..8, D: 4..8, B/C: 2..8)"
                )))
            }
        };
        Self::from_simple_roots(root_type, simple)
    }

    /// Enumerates positive roots by closing the simple roots under simple
    /// reflections while tracking simple-basis coordinates.
    pub fn from_simple_roots(root_type: RootType, simple: Vec<Vec<Rational>>) -> Result<Self> {
        let rank = simple.len();
        let simple_gram: Vec<Vec<Rational>> = simple
            .iter()
            .map(|a| simple.iter().map(|b| dot(a, b)).collect())
            .collect();
        let gram_inverse = invert_matrix(&simple_gram)
            .ok_or_else(|| Error::Config("simple roots are linearly dependent".into()))?;

        let mut found: Vec<(Vec<Rational>, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for (i, a) in simple.iter().enumerate() {
            let mut sc = vec![0; rank];
            sc[i] = 1;
            seen.insert(sc.clone(), found.len());
            found.push((a.clone(), sc));
        }
        let mut cursor = 0;
        while cursor < found.len() {
            let (coords, sc) = found[cursor].clone();
            cursor += 1;
            for (i, a) in simple.iter().enumerate() {
                let pairing = Rational::integer(2) * dot(&coords, a) / dot(a, a);
                let c = pairing
                    .to_integer()
                    .ok_or_else(|| Error::Config(format!("{root_type} is not crystallographic")))?;
                if c == 0 {
                    continue;
                }
                let mut nsc = sc.clone();
                nsc[i] -= c;
                if nsc.iter().any(|&x| x < 0) || seen.contains_key(&nsc) {
                    continue;
                }
                let ncoords: Vec<Rational> = coords
                    .iter()
                    .zip(a)
                    .map(|(x, y)| *x - Rational::integer(c) * *y)
                    .collect();
                seen.insert(nsc.clone(), found.len());
                found.push((ncoords, nsc));
            }
        }
        found.sort_by(|(_, x), (_, y)| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });

        let positive: Vec<Root> = found
            .into_iter()
            .map(|(coords, simple_coords)| Root {
                coords,
                simple_coords,
            })
            .collect();
        let by_simple: HashMap<Vec<i64>, usize> = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.simple_coords.clone(), k))
            .collect();
        let mut by_coords = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            by_coords.insert(r.coords.clone(), SignedRoot::positive(k));
            by_coords.insert(
                scale(&r.coords, Rational::integer(-1)),
                SignedRoot {
                    index: k as u16,
                    negative: true,
                },
            );
        }
        let simple_index: Vec<usize> = (0..rank)
            .map(|i| {
                let mut sc = vec![0; rank];
                sc[i] = 1;
                by_simple[&sc]
            })
            .collect();
        let gram: Vec<Vec<Rational>> = positive
            .iter()
            .map(|a| positive.iter().map(|b| dot(&a.coords, &b.coords)).collect())
            .collect();
        let reflections = positive
            .iter()
            .map(|a| {
                positive
                    .iter()
                    .map(|b| {
                        let img = reflect(&a.coords, &b.coords);
                        *by_coords
                            .get(&img)
                            .expect("root system closed under its reflections")
                    })
                    .collect()
            })
            .collect();
        let simple_roots = simple_index.iter().map(|&k| positive[k].clone()).collect();

        Ok(RootSystem {
            root_type,
            simple: simple_roots,
            positive,
            simple_index,
            by_simple,
            by_coords,
            gram,
            reflections,
            gram_inverse,
        })
    }

    pub fn root_type(&self) -> RootType {
        self.root_type
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple[0].coords.len()
    }

    /// Index of the simple root of generator `gen` in the positive-root list.
    pub fn simple_index(&self, gen: usize) -> usize {
        self.simple_index[gen]
    }

    pub fn node_labels(&self) -> Vec<usize> {
        self.root_type.node_labels()
    }

    /// Generator index of a diagram node label.
    pub fn gen_of_node(&self, node: usize) -> Result<usize> {
        self.node_labels()
            .iter()
            .position(|&n| n == node)
            .ok_or_else(|| Error::Domain(format!("{} has no node {node}", self.root_type)))
    }

    pub fn node_of_gen(&self, gen: usize) -> usize {
        self.node_labels()[gen]
    }

    /// Standard Euclidean inner product of two positive roots.
    pub fn inner(&self, i: usize, j: usize) -> Rational {
        self.gram[i][j]
    }

    pub fn norm2(&self, i: usize) -> Rational {
        self.gram[i][i]
    }

    /// `s_{β_k}(β_m)`.
    pub fn reflect(&self, k: usize, m: usize) -> SignedRoot {
        self.reflections[k][m]
    }

    /// The signed permutation of positive roots induced by generator `gen`.
    pub fn simple_reflection(&self, gen: usize) -> &[SignedRoot] {
        &self.reflections[self.simple_index[gen]]
    }

    pub fn root_height(&self, k: usize) -> i64 {
        self.positive[k].height()
    }

    /// Looks up a vector of ambient coordinates among `±Φ⁺`.
    pub fn lookup_coords(&self, coords: &[Rational]) -> Option<SignedRoot> {
        self.by_coords.get(coords).copied()
    }

    /// Looks up a simple-basis coordinate vector (either sign).
    pub fn lookup_simple(&self, simple_coords: &[i64]) -> Option<SignedRoot> {
        if let Some(&k) = self.by_simple.get(simple_coords) {
            return Some(SignedRoot::positive(k));
        }
        let neg: Vec<i64> = simple_coords.iter().map(|x| -x).collect();
        self.by_simple.get(&neg).map(|&k| SignedRoot {
            index: k as u16,
            negative: true,
        })
    }

    /// Coordinates of an ambient vector in the simple-root basis, if it lies in
    /// their span.
    pub fn to_simple_basis(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let pairings: Vec<Rational> = self.simple.iter().map(|a| dot(&a.coords, v)).collect();
        let coeffs: Vec<Rational> = self
            .gram_inverse
            .iter()
            .map(|row| dot(row, &pairings))
            .collect();
        let mut back = vec![Rational::ZERO; v.len()];
        for (c, a) in coeffs.iter().zip(&self.simple) {
            back = add(&back, &scale(&a.coords, *c));
        }
        (back == v).then_some(coeffs)
    }

    /// Height of a root given in ambient coordinates; negative roots have
    /// negative height.
    pub fn height(&self, coords: &[Rational]) -> Result<i64> {
        let s = self.lookup_coords(coords).ok_or_else(|| {
            Error::Domain(format!("{:?} is not a root of {}", coords, self.root_type))
        })?;
        let h = self.root_height(s.index as usize);
        Ok(if s.negative { -h } else { h })
    }

    /// Ambient reflection `s_α(x) = x − 2(x,α)/(α,α) α`.
    pub fn reflect_vector(alpha: &[Rational], x: &[Rational]) -> Vec<Rational> {
        reflect(alpha, x)
    }

    /// `a1+a2+2a3+a4` style label of positive root `k`.
    pub fn root_label(&self, k: usize) -> String {
        let letter = self.root_type.root_letter();
        let labels = self.node_labels();
        let mut parts = Vec::new();
        for (gen, &c) in self.positive[k].simple_coords.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("{letter}{}", labels[gen])),
                c => parts.push(format!("{c}{letter}{}", labels[gen])),
            }
        }
        parts.join("+")
    }

    /// Parses a root given as `aK`/`bK` shorthand, a `+`-separated sum such as
    /// `a1+a2+2a3+a4`, or a bracketed simple-coordinate vector `[1,1,2,1]`.
    pub fn parse_root(&self, token: &str) -> Result<usize> {
        let t = token.trim();
        let coords: Vec<i64> = if t.starts_with('[') || t.starts_with('(') {
            t.trim_matches(|c| matches!(c, '[' | ']' | '(' | ')'))
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad root vector `{t}`")))?
        } else {
            let mut v = vec![0i64; self.rank()];
            for part in t.split('+') {
                let part = part.trim();
                let pos = part
                    .find(|c: char| c.is_ascii_alphabetic())
                    .ok_or_else(|| Error::Parse(format!("bad root `{t}`")))?;
                let coeff: i64 = if pos == 0 {
                    1
                } else {
                    part[..pos]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad root `{t}`")))?
                };
                let node: usize = part[pos + 1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad root `{t}`")))?;
                v[self.gen_of_node(node)?] += coeff;
            }
            v
        };
        if coords.len() != self.rank() {
            return Err(Error::Parse(format!(
                "root `{t}` has {} coordinates, {} expects {}",
                coords.len(),
                self.root_type,
                self.rank()
            )));
        }
        match self.lookup_simple(&coords) {
            Some(s) if !s.negative => Ok(s.index as usize),
            _ => Err(Error::Domain(format!(
                "`{t}` is not a positive root of {}",
                self.root_type
            ))),
        }
    }
}

/// A diagram automorphism realized as an ambient linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingMap {
    sigma: Vec<Vec<Rational>>,
    order: usize,
}

impl FoldingMap {
    /// Triality of `D4`: `σ(α1)=α2`, `σ(α2)=α4`, `σ(α4)=α1`, `σ(α3)=α3`.
    pub fn triality() -> Self {
        let h = Rational::new(1, 2);
        let m = -h;
        FoldingMap {
            sigma: vec![
                vec![m, m, m, h],
                vec![h, h, m, h],
                vec![h, m, h, h],
                vec![m, h, h, h],
            ],
            order: 3,
        }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.sigma.iter().map(|row| dot(row, v)).collect()
    }

    pub fn apply_power(&self, v: &[Rational], power: usize) -> Vec<Rational> {
        (0..power).fold(v.to_vec(), |acc, _| self.apply(&acc))
    }

    /// Averaging projection `x ↦ (x + σx + σ²x)/3` onto the fixed subspace.
    pub fn reynolds(&self, v: &[Rational]) -> Vec<Rational> {
        let mut acc = vec![Rational::ZERO; v.len()];
        let mut cur = v.to_vec();
        for _ in 0..self.order {
            acc = add(&acc, &cur);
            cur = self.apply(&cur);
        }
        scale(&acc, Rational::new(1, self.order as i64))
    }

    /// The permutation `σ` induces on the positive roots of `rs`.
    pub fn root_permutation(&self, rs: &RootSystem) -> Result<Vec<usize>> {
        rs.positive_roots()
            .iter()
            .map(|r| match rs.lookup_coords(&self.apply(&r.coords)) {
                Some(s) if !s.negative => Ok(s.index as usize),
                _ => Err(Error::Domain(
                    "folding map does not preserve positive roots".into(),
                )),
            })
            .collect()
    }
}

pub fn sigma_apply(f: &FoldingMap, r: &Root, rs: &RootSystem) -> Result<Root> {
    let img = f.apply(&r.coords);
    let s = rs
        .lookup_coords(&img)
        .ok_or_else(|| Error::Domain("image is not a root".into()))?;
    let base = &rs.positive_roots()[s.index as usize];
    Ok(if s.negative {
        Root {
            coords: img,
            simple_coords: base.simple_coords.iter().map(|x| -x).collect(),
        }
    } else {
        base.clone()
    })
}

/// The folded `G2` system with simple roots `β0 = p(α1)` and `β1 = p(α3)`.
pub fn build_g2_roots(f: &FoldingMap) -> Result<RootSystem> {
    let d4 = simple_roots_d(4);
    if f.matrix().len() != 4 {
        return Err(Error::Config("G2 folding needs the D4 triality".into()));
    }
    let beta0 = f.reynolds(&d4[0]);
    let beta1 = f.reynolds(&d4[2]);
    RootSystem::from_simple_roots(RootType::G2Folded, vec![beta0, beta1])
}

/// A set of positive roots as a bitmask over positive-root indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(pub u64);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn singleton(k: usize) -> Self {
        RootSet(1 << k)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(RootSet::EMPTY, |s, k| s.with(k))
    }

    pub fn with(self, k: usize) -> Self {
        RootSet(self.0 | (1 << k))
    }

    pub fn without(self, k: usize) -> Self {
        RootSet(self.0 & !(1 << k))
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: RootSet) -> Self {
        RootSet(self.0 | other.0)
    }

    pub fn intersection(self, other: RootSet) -> Self {
        RootSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(k)
        })
    }
}

impl RootSystem {
    /// `{type, simple_roots, positive_roots, heights}` with coordinates as
    /// rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let vecs = |roots: &[Root]| -> Vec<Vec<String>> {
            roots
                .iter()
                .map(|r| r.coords.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        serde_json::json!({
            "type": self.root_type.to_string(),
            "simple_roots": vecs(&self.simple),
            "positive_roots": vecs(&self.positive),
            "heights": self.positive.iter().map(|r| r.height()).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds from the type and simple roots; the positive roots are
    /// regenerated and must match if present.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("root system JSON: {what}"));
        let t: RootType = v["type"]
            .as_str()
            .ok_or_else(|| bad("missing type"))?
            .parse()?;
        let parse_vecs = |key: &str| -> Result<Vec<Vec<Rational>>> {
            v[key]
                .as_array()
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| bad(key))?
                        .iter()
                        .map(|x| x.as_str().ok_or_else(|| bad(key))?.parse())
                        .collect()
                })
                .collect()
        };
        let rs = RootSystem::from_simple_roots(t, parse_vecs("simple_roots")?)?;
        if v.get("positive_roots").is_some() {
            let pos = parse_vecs("positive_roots")?;
            if pos.len() != rs.num_positive()
                || pos.iter().zip(&rs.positive).any(|(a, r)| *a != r.coords)
            {
                return Err(bad("positive roots do not match the simple roots"));
            }
        }
        Ok(rs)
    }
}

impl RootSystem {
    /// `{a1, a2+a3}` style rendering.
    pub fn format_set(&self, set: RootSet) -> String {
        let parts: Vec<String> = set.iter().map(|k| self.root_label(k)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Simple-basis coordinate vectors of the members.
    pub fn set_coords(&self, set: RootSet) -> Vec<Vec<i64>> {
        set.iter()
            .map(|k| self.positive[k].simple_coords.clone())
            .collect()
    }

    /// Parses `a1,a2,[1,1,2,1]`; commas inside brackets belong to the vector.
    pub fn parse_set(&self, text: &str) -> Result<RootSet> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut tokens = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for c in text.chars() {
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                _ => {}
            }
            if c == ',' && depth == 0 {
                tokens.push(std::mem::take(&mut cur));
            } else {
                cur.push(c);
            }
        }
        tokens.push(cur);
        let mut set = RootSet::EMPTY;
        for t in tokens.iter().map(|t| t.trim()).filter(|t| !t.is_empty()) {
            set = set.with(self.parse_root(t)?);
        }
        Ok(set)
    }

    /// True when all members are pairwise orthogonal.
    pub fn is_orthogonal(&self, set: RootSet) -> bool {
        let v: Vec<usize> = set.iter().collect();
        v.iter()
            .enumerate()
            .all(|(a, &i)| v[a + 1..].iter().all(|&j| self.inner(i, j).is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_round_trip() {
        for t in [
            RootType::D(4),
            RootType::G2Folded,
            RootType::B(3),
            RootType::A(2),
        ] {
            let rs = RootSystem::build(t).unwrap();
            let v = rs.to_json();
            let back = RootSystem::from_json(&v).unwrap();
            assert_eq!(back.to_json(), v);
            assert_eq!(back.positive_roots(), rs.positive_roots());
        }
        let mut v = RootSystem::build(RootType::A(2)).unwrap().to_json();
        v["positive_roots"][0][0] = "7".into();
        assert!(RootSystem::from_json(&v).is_err());
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn positive_root_counts() {
        for n in 4..=8 {
            let d = RootSystem::build(RootType::D(n)).unwrap();
            assert_eq!(d.num_positive(), n * (n - 1));
        }
        for n in 1..=8 {
            let a = RootSystem::build(RootType::A(n)).unwrap();
            assert_eq!(a.num_positive(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn d4_realization() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let i = Rational::ONE;
        let o = Rational::ZERO;
        let m = -Rational::ONE;
        let s = d4.simple_roots();
        assert_eq!(s[0].coords, vec![i, i, o, o]);
        assert_eq!(s[1].coords, vec![m, i, o, o]);
        assert_eq!(s[2].coords, vec![o, m, i, o]);
        assert_eq!(s[3].coords, vec![o, o, m, i]);
        // every positive root is ε_j ± ε_i with i < j
        for root in d4.positive_roots() {
            let nz: Vec<_> = root
                .coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            assert_eq!(nz.len(), 2);
            assert_eq!(*nz[1].1, i);
        }
    }

    #[test]
    fn unsupported_ranks() {
        assert!(matches!(
            RootSystem::build(RootType::D(3)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            RootSystem::build(RootType::A(9)),
            Err(Error::Config(_))
        ));
        assert!("E6".parse::<RootType>().is_err());
        assert_eq!(RootSystem::build(RootType::B(3)).unwrap().num_positive(), 9);
        assert_eq!(RootSystem::build(RootType::C(2)).unwrap().num_positive(), 4);
        assert_eq!(RootSystem::build(RootType::F4).unwrap().num_positive(), 24);
    }

    #[test]
    fn heights() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let a3 = d4.simple_roots()[2].coords.clone();
        assert_eq!(d4.height(&a3).unwrap(), 1);
        let k = d4.parse_root("a1+a2+2a3+a4").unwrap();
        assert_eq!(d4.height(&d4.positive_roots()[k].coords).unwrap(), 5);
        let neg: Vec<_> = a3.iter().map(|x| -*x).collect();
        assert_eq!(d4.height(&neg).unwrap(), -1);
        assert!(matches!(d4.height(&[r(1, 1); 4]), Err(Error::Domain(_))));
        // brute-force maximum over all positive roots
        let max = d4.positive_roots().iter().map(Root::height).max().unwrap();
        let brute = (0..d4.num_positive())
            .map(|k| d4.height(&d4.positive_roots()[k].coords).unwrap())
            .fold(i64::MIN, i64::max);
        assert_eq!(max, brute);
        assert_eq!(max, 5);
    }

    #[test]
    fn triality_on_simple_roots() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let f = FoldingMap::triality();
        let s = d4.simple_roots();
        assert_eq!(f.apply(&s[0].coords), s[1].coords);
        assert_eq!(f.apply(&s[1].coords), s[3].coords);
        assert_eq!(f.apply(&s[3].coords), s[0].coords);
        assert_eq!(f.apply(&s[2].coords), s[2].coords);
        assert_eq!(sigma_apply(&f, &s[0], &d4).unwrap(), s[1]);
        for root in d4.positive_roots() {
            for sign in [1, -1] {
                let v: Vec<_> = root
                    .coords
                    .iter()
                    .map(|x| *x * Rational::integer(sign))
                    .collect();
                assert_eq!(f.apply_power(&v, 3), v);
                assert!(d4.lookup_coords(&f.apply(&v)).is_some());
            }
        }
    }

    #[test]
    fn reynolds_images() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let f = FoldingMap::triality();
        let s = d4.simple_roots();
        let b0 = f.reynolds(&s[0].coords);
        let third: Vec<_> = add(&add(&s[0].coords, &s[1].coords), &s[3].coords)
            .iter()
            .map(|x| *x * r(1, 3))
            .collect();
        assert_eq!(b0, third);
        assert_eq!(f.reynolds(&s[2].coords), s[2].coords);
        assert_eq!(dot(&b0, &b0), r(2, 3));
        assert_eq!(dot(&s[2].coords, &s[2].coords), r(2, 1));
    }

    #[test]
    fn folded_g2() {
        let f = FoldingMap::triality();
        let g2 = build_g2_roots(&f).unwrap();
        assert_eq!(g2.num_positive(), 6);
        let labels: Vec<_> = (0..6).map(|k| g2.root_label(k)).collect();
        assert_eq!(labels, ["b0", "b1", "b0+b1", "2b0+b1", "3b0+b1", "3b0+2b1"]);
        for (k, label) in labels.iter().enumerate() {
            let short = ["b0", "b0+b1", "2b0+b1"].contains(&label.as_str());
            assert_eq!(g2.norm2(k), if short { r(2, 3) } else { r(2, 1) });
        }
        let b0 = g2.parse_root("b0").unwrap();
        let top = g2.parse_root("3b0+2b1").unwrap();
        assert_eq!(g2.inner(b0, top), Rational::ZERO);
        // r1 β0 = β0 + β1
        let img = g2.reflect(g2.simple_index(1), b0);
        assert_eq!(g2.root_label(img.index as usize), "b0+b1");
        assert!(!img.negative);
    }

    #[test]
    fn reynolds_maps_positive_roots_onto_g2() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let f = FoldingMap::triality();
        let g2 = build_g2_roots(&f).unwrap();
        let mut image: Vec<usize> = d4
            .positive_roots()
            .iter()
            .map(|root| {
                let s = g2.lookup_coords(&f.reynolds(&root.coords)).unwrap();
                assert!(!s.negative);
                s.index as usize
            })
            .collect();
        image.sort();
        image.dedup();
        assert_eq!(image, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn root_set_parsing() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        let set = d4.parse_set("a1,a2,[1,1,2,1]").unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(d4.format_set(set), "{a1, a2, a1+a2+2a3+a4}");
        assert!(d4.is_orthogonal(set));
        assert!(!d4.is_orthogonal(d4.parse_set("a1,a3").unwrap()));
        assert!(d4.parse_set("a1,a5").is_err());
        assert_eq!(d4.parse_set("").unwrap(), RootSet::EMPTY);
        let s = RootSet::from_indices([3, 0, 7]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 7]);
        assert!(s.without(3).is_subset(s));
    }

    #[test]
    fn simple_basis_solver() {
        let d4 = RootSystem::build(RootType::D(4)).unwrap();
        for root in d4.positive_roots() {
            let c = d4.to_simple_basis(&root.coords).unwrap();
            let ints: Vec<i64> = c.iter().map(|x| x.to_integer().unwrap()).collect();
            assert_eq!(ints, root.simple_coords);
        }
    }

    fn arb_vec4() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-6i64..7, 1i64..4).prop_map(|(n, d)| r(n, d)), 4)
    }

    proptest! {
        #[test]
        fn reflections_are_isometries(k in 0usize..12, x in arb_vec4(), y in arb_vec4()) {
            let d4 = RootSystem::build(RootType::D(4)).unwrap();
            let a = &d4.positive_roots()[k].coords;
            let sx = RootSystem::reflect_vector(a, &x);
            let sy = RootSystem::reflect_vector(a, &y);
            prop_assert_eq!(dot(&sx, &sy), dot(&x, &y));
        }

        #[test]
        fn reynolds_is_invariant_projection(x in arb_vec4()) {
            let f = FoldingMap::triality();
            let p = f.reynolds(&x);
            prop_assert_eq!(f.reynolds(&p), p.clone());
            prop_assert_eq!(f.reynolds(&f.apply(&x)), p.clone());
            prop_assert_eq!(f.apply(&p), p);
        }
    }
}
