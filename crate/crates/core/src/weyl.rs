//! Finite Weyl groups realized by their signed action on positive roots.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{RootSet, RootSystem, SignedRoot};

/// A group element as the signed permutation it induces on `Φ⁺`, together
/// with its shortlex-least reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub image: Vec<SignedRoot>,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, r: SignedRoot) -> SignedRoot {
        self.image[r.index as usize].flip(r.negative)
    }
}

fn compose(a: &[SignedRoot], b: &[SignedRoot]) -> Vec<SignedRoot> {
    b.iter()
        .map(|s| a[s.index as usize].flip(s.negative))
        .collect()
}

/// The full group, indexed in shortlex order of reduced words. Index 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<SignedRoot>, usize>,
    /// `rmul[e][g]` is the index of `e·s_g`.
    rmul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub generators: Vec<usize>,
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.binary_search(&e).is_ok()
    }
}

impl WeylGroup {
    /// Breadth-first closure over right multiplication by simple reflections.
    pub fn enumerate(rs: Arc<RootSystem>, max_size: usize) -> Result<Self> {
        let n = rs.num_positive();
        let rank = rs.rank();
        let gens: Vec<Vec<SignedRoot>> = (0..rank)
            .map(|g| rs.simple_reflection(g).to_vec())
            .collect();
        let identity: Vec<SignedRoot> = (0..n).map(SignedRoot::positive).collect();
        let mut elements = vec![WeylElement {
            image: identity.clone(),
            word: Vec::new(),
        }];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut rmul: Vec<Vec<u32>> = Vec::new();
        let mut cursor = 0;
        while cursor < elements.len() {
            let mut row = Vec::with_capacity(rank);
            for (g, sg) in gens.iter().enumerate() {
                let img = compose(&elements[cursor].image, sg);
                let k = match index.get(&img) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= max_size {
                            return Err(Error::Resource(format!(
                                "W({}) exceeds max_size {max_size}",
                                rs.root_type()
                            )));
                        }
                        let mut word = elements[cursor].word.clone();
                        word.push(g);
                        index.insert(img.clone(), elements.len());
                        elements.push(WeylElement { image: img, word });
                        elements.len() - 1
                    }
                };
                row.push(k as u32);
            }
            rmul.push(row);
            cursor += 1;
        }
        let inverse = elements
            .iter()
            .map(|e| {
                let mut inv = vec![SignedRoot::positive(0); n];
                for (m, s) in e.image.iter().enumerate() {
                    inv[s.index as usize] = SignedRoot {
                        index: m as u16,
                        negative: s.negative,
                    };
                }
                index[&inv] as u32
            })
            .collect();
        Ok(WeylGroup {
            rs,
            elements,
            index,
            rmul,
            inverse,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        self.rs.clone()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn element(&self, e: usize) -> &WeylElement {
        &self.elements[e]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn word(&self, e: usize) -> &[usize] {
        &self.elements[e].word
    }

    pub fn length(&self, e: usize) -> usize {
        self.elements[e].word.len()
    }

    pub fn generator(&self, g: usize) -> usize {
        self.rmul[0][g] as usize
    }

    pub fn rmul_gen(&self, e: usize, g: usize) -> usize {
        self.rmul[e][g] as usize
    }

    pub fn lmul_gen(&self, g: usize, e: usize) -> usize {
        let inv = self.inverse(e);
        self.inverse(self.rmul_gen(inv, g))
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inverse[e] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word
            .iter()
            .fold(a, |acc, &g| self.rmul_gen(acc, g))
    }

    /// Element of a generator word, read as the product `s_{w0} s_{w1} …`.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &g| self.rmul_gen(acc, g))
    }

    pub fn lookup(&self, image: &[SignedRoot]) -> Option<usize> {
        self.index.get(image).copied()
    }

    /// `w·B`: positive representatives of the images.
    pub fn act_on_rootset(&self, e: usize, set: RootSet) -> RootSet {
        let img = &self.elements[e].image;
        RootSet::from_indices(set.iter().map(|k| img[k].index as usize))
    }

    pub fn act_on_root(&self, e: usize, r: SignedRoot) -> SignedRoot {
        self.elements[e].apply(r)
    }

    /// Subgroup generated by `gens`, closed by breadth-first search.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut cursor = 0;
        while cursor < queue.len() {
            let e = queue[cursor];
            cursor += 1;
            for &g in gens {
                let k = self.mul(e, g);
                if !seen[k] {
                    seen[k] = true;
                    queue.push(k);
                }
            }
        }
        queue.sort_unstable();
        Subgroup {
            generators: gens.to_vec(),
            elements: queue,
        }
    }

    /// Subgroup from a membership predicate, with a greedy generating set
    /// taken in shortlex order.
    fn subgroup_where(&self, pred: impl Fn(usize) -> bool) -> Subgroup {
        let elements: Vec<usize> = (0..self.order()).filter(|&e| pred(e)).collect();
        let mut generators = Vec::new();
        let mut span = self.generate(&[]);
        for &e in &elements {
            if !span.contains(e) {
                generators.push(e);
                span = self.generate(&generators);
                if span.order() == elements.len() {
                    break;
                }
            }
        }
        Subgroup {
            generators,
            elements,
        }
    }

    /// Setwise stabilizer of `B` under the positive-representative action.
    pub fn stabilizer(&self, set: RootSet) -> Subgroup {
        self.subgroup_where(|e| self.act_on_rootset(e, set) == set)
    }

    /// Elements fixing every root of `B` (with sign).
    pub fn pointwise_stabilizer(&self, set: RootSet) -> Subgroup {
        self.subgroup_where(|e| {
            set.iter()
                .all(|k| self.elements[e].image[k] == SignedRoot::positive(k))
        })
    }

    /// Left-coset representatives of `aH`, each the shortlex-least member of
    /// its coset.
    pub fn left_coset_reps(&self, sub: &Subgroup) -> Vec<usize> {
        self.coset_reps(sub, |a, h| self.mul(a, h))
    }

    /// Right-coset representatives of `Ha`.
    pub fn right_coset_reps(&self, sub: &Subgroup) -> Vec<usize> {
        self.coset_reps(sub, |a, h| self.mul(h, a))
    }

    fn coset_reps(&self, sub: &Subgroup, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for a in 0..self.order() {
            if covered[a] {
                continue;
            }
            reps.push(a);
            for &h in &sub.elements {
                covered[act(a, h)] = true;
            }
        }
        reps
    }

    /// The `W`-orbit of `B`, with the shortlex-least element reaching each
    /// member.
    pub fn orbit(&self, set: RootSet) -> Vec<(RootSet, usize)> {
        let mut seen: HashMap<RootSet, usize> = HashMap::new();
        let mut out = Vec::new();
        for e in 0..self.order() {
            let img = self.act_on_rootset(e, set);
            if let std::collections::hash_map::Entry::Vacant(v) = seen.entry(img) {
                v.insert(e);
                out.push((img, e));
            }
        }
        out
    }

    /// Renders a word with the given generator letter, e.g. `r0r1` or `R1R3`.
    pub fn format_word(&self, word: &[usize], letter: char) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&g| format!("{letter}{}", self.rs.node_of_gen(g)))
            .collect()
    }

    pub fn format_element(&self, e: usize, letter: char) -> String {
        self.format_word(self.word(e), letter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootType;
    use proptest::prelude::*;

    fn group(t: RootType) -> WeylGroup {
        WeylGroup::enumerate(Arc::new(RootSystem::build(t).unwrap()), 1 << 20).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(RootType::G2Folded).order(), 12);
        assert_eq!(group(RootType::D(4)).order(), 192);
        assert_eq!(group(RootType::D(5)).order(), 16 * 120);
        assert_eq!(group(RootType::A(4)).order(), 120);
        let rs = Arc::new(RootSystem::build(RootType::D(4)).unwrap());
        assert!(matches!(
            WeylGroup::enumerate(rs, 100),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn images_match_words() {
        for t in [RootType::G2Folded, RootType::D(4), RootType::A(3)] {
            let w = group(t);
            let rs = w.root_system();
            for e in w.elements() {
                let mut img: Vec<SignedRoot> =
                    (0..rs.num_positive()).map(SignedRoot::positive).collect();
                for &g in &e.word {
                    img = compose(&img, rs.simple_reflection(g));
                }
                assert_eq!(img, e.image);
            }
        }
    }

    #[test]
    fn g2_dihedral_relation() {
        let w = group(RootType::G2Folded);
        let r0r1 = w.from_word(&[0, 1]);
        let mut p = 0;
        for k in 1..=6 {
            p = w.mul(p, r0r1);
            assert_eq!(p == 0, k == 6);
        }
    }

    #[test]
    fn remark_example_a4() {
        let w = group(RootType::A(4));
        let rs = w.root_system();
        let set = rs.parse_set("a1+a2,a4").unwrap();
        let e = w.from_word(&[3, 0, 1, 0]);
        assert_eq!(w.act_on_rootset(e, set), set);
        assert_eq!(w.act_on_rootset(0, set), set);
    }

    #[test]
    fn g2_stabilizers_and_cosets() {
        let w = group(RootType::G2Folded);
        let rs = w.root_system();
        let b0 = rs.parse_set("b0").unwrap();
        assert_eq!(
            w.act_on_rootset(w.generator(1), b0),
            rs.parse_set("b0+b1").unwrap()
        );
        let n0 = w.stabilizer(b0);
        assert_eq!(n0.order(), 4);
        let z = w.from_word(&[1, 0, 1, 0, 1]);
        assert_eq!(n0, {
            let mut s = w.generate(&[w.generator(0), z]);
            s.generators = n0.generators.clone();
            s
        });
        let d0: Vec<String> = w
            .left_coset_reps(&n0)
            .iter()
            .map(|&e| w.format_element(e, 'r'))
            .collect();
        assert_eq!(d0, ["1", "r1", "r0r1"]);
        let n1 = w.stabilizer(rs.parse_set("b1").unwrap());
        let d1: Vec<String> = w
            .left_coset_reps(&n1)
            .iter()
            .map(|&e| w.format_element(e, 'r'))
            .collect();
        assert_eq!(d1, ["1", "r0", "r1r0"]);
        assert_eq!(w.stabilizer(RootSet::EMPTY).order(), 12);
    }

    #[test]
    fn triality_subgroup_in_d4() {
        let w = group(RootType::D(4));
        let a = w.from_word(&[0, 1, 3]);
        let b = w.generator(2);
        assert_eq!(w.generate(&[a, b]).order(), 12);
    }

    #[test]
    fn orbit_stabilizer_d4() {
        let w = group(RootType::D(4));
        let rs = w.root_system();
        for text in ["", "a3", "a1,a2", "a1,a4", "a1,a2,a4,[1,1,2,1]", "a1,a3+a4"] {
            let set = rs.parse_set(text).unwrap();
            assert_eq!(
                w.orbit(set).len() * w.stabilizer(set).order(),
                w.order(),
                "{text}"
            );
        }
    }

    proptest! {
        #[test]
        fn group_axioms(a in 0usize..192, b in 0usize..192, c in 0usize..192) {
            let w = group(RootType::D(4));
            prop_assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
            prop_assert_eq!(w.mul(a, w.inverse(a)), 0);
            let ab = w.mul(a, b);
            let expected = compose(&w.element(a).image, &w.element(b).image);
            prop_assert_eq!(&w.element(ab).image, &expected);
            prop_assert_eq!(w.lmul_gen(2, a), w.mul(w.generator(2), a));
        }
    }
}
