//! Bounded bidirectional breadth-first search for equalities in a monoid
//! presentation, producing replayable step-by-step proof traces.
//!
//! Two search modes share one frontier engine:
//!
//! * `Plain` rewrites literal words with every relation in both directions.
//! * `Skeleton` treats each maximal `R`-subword as an element of the Weyl
//!   group, so a state is `g0 E_{i1} g1 … E_{ik} gk` with each `g` canonical.
//!   Pure-`R` relations are then implicit and a rule with `E` letters applies
//!   whenever its `E` letters and inner group elements match exactly. Every
//!   abstract step is expanded into primitive relation applications
//!   (braid moves and `R_i R_i = 1`) before the trace is returned, so replay
//!   never trusts the group arithmetic.
//!
//! Words are δ-free. A trace with `total_delta = k` proves `start = δ^k end`.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{DerivedRelationSet, Letter, Presentation, Relation};
use crate::roots::RootSystem;
use crate::weyl::WeylGroup;
use crate::word::MonoidWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    LR,
    RL,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::LR => Direction::RL,
            Direction::RL => Direction::LR,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub position: usize,
    pub tag: String,
    pub direction: Direction,
    pub delta_shift_applied: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofTrace {
    pub start: MonoidWord,
    pub end: MonoidWord,
    pub steps: Vec<ProofStep>,
    pub total_delta: i64,
    /// Number of search steps before expansion into primitive steps.
    pub abstract_depth: usize,
}

impl ProofTrace {
    pub fn to_json(&self, p: &Presentation) -> serde_json::Value {
        let show = |w: &MonoidWord| {
            if p.lowercase() {
                w.to_lower_string()
            } else {
                w.to_string()
            }
        };
        serde_json::json!({
            "start": show(&self.start),
            "end": show(&self.end),
            "total_delta": self.total_delta,
            "abstract_depth": self.abstract_depth,
            "steps": self.steps,
        })
    }

    /// Numbered step list, one line per step, with the intermediate words.
    pub fn render(&self, p: &Presentation, lemmas: &[Relation]) -> String {
        let mut out = String::new();
        let mut word = match p.encode(&self.start) {
            Ok(w) => w,
            Err(_) => return out,
        };
        let mut delta = 0;
        let _ = writeln!(out, "   0. {}", p.render(&word));
        for (n, step) in self.steps.iter().enumerate() {
            match apply_step(&word, step, p, lemmas) {
                Some((w, d)) => {
                    word = w;
                    delta += d;
                }
                None => {
                    let _ = writeln!(
                        out,
                        "{:4}. [{} {:?} @{}]",
                        n + 1,
                        step.tag,
                        step.direction,
                        step.position
                    );
                    continue;
                }
            }
            let _ = writeln!(
                out,
                "{:4}. {}{}    [{} {:?} @{}]",
                n + 1,
                if delta == 0 {
                    String::new()
                } else {
                    format!("d^{delta} ")
                },
                p.render(&word),
                step.tag,
                step.direction,
                step.position
            );
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_depth: usize,
    pub max_word_length: usize,
    pub max_frontier: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_depth: 24,
            max_word_length: 24,
            max_frontier: 400_000,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_depth == 0 || self.max_word_length == 0 || self.max_frontier == 0 {
            return Err(Error::Config("search bounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Plain,
    Skeleton,
}

/// Result of a search. `NotFound` is inconclusive by design.
#[derive(Clone, Debug)]
pub enum ProofOutcome {
    Found {
        trace: ProofTrace,
        /// Overall exponent with `a = δ^delta b`, including δ symbols written
        /// in the input words.
        delta: i64,
    },
    NotFound {
        reason: String,
        states_explored: usize,
    },
}

impl ProofOutcome {
    pub fn trace(&self) -> Option<&ProofTrace> {
        match self {
            ProofOutcome::Found { trace, .. } => Some(trace),
            ProofOutcome::NotFound { .. } => None,
        }
    }

    pub fn delta(&self) -> Option<i64> {
        match self {
            ProofOutcome::Found { delta, .. } => Some(*delta),
            ProofOutcome::NotFound { .. } => None,
        }
    }
}

/// A relation side split at its `E` letters: `p0 E_{j1} p1 … E_{jm} pm`.
#[derive(Clone, Debug)]
struct Skel {
    groups: Vec<u32>,
    es: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Rule {
    tag: String,
    lhs: Vec<Letter>,
    rhs: Vec<Letter>,
    shift: i64,
    skel: Option<(Skel, Skel)>,
}

impl Rule {
    fn sides(&self, dir: Direction) -> (&[Letter], &[Letter], i64) {
        match dir {
            Direction::LR => (&self.lhs, &self.rhs, self.shift),
            Direction::RL => (&self.rhs, &self.lhs, -self.shift),
        }
    }

    fn pure_r(&self) -> bool {
        self.lhs.iter().chain(&self.rhs).all(|l| l % 2 == 0)
    }
}

fn split_segments(letters: &[Letter]) -> (Vec<Vec<Letter>>, Vec<u32>) {
    let mut segs = vec![Vec::new()];
    let mut es = Vec::new();
    for &l in letters {
        if l % 2 == 1 {
            es.push((l / 2) as u32);
            segs.push(Vec::new());
        } else {
            segs.last_mut().unwrap().push(l);
        }
    }
    (segs, es)
}

fn gens_of(letters: &[Letter]) -> Vec<usize> {
    letters.iter().map(|&l| l as usize / 2).collect()
}

fn letters_of(gens: &[usize]) -> Vec<Letter> {
    gens.iter().map(|&g| (2 * g) as Letter).collect()
}

/// Applies one step to a word; shared by trace rendering. Lemma relations are
/// looked up after the presentation's own.
fn apply_step(
    word: &[Letter],
    step: &ProofStep,
    p: &Presentation,
    lemmas: &[Relation],
) -> Option<(Vec<Letter>, i64)> {
    let rel = p
        .relations
        .iter()
        .chain(lemmas)
        .find(|r| r.tag == step.tag)?;
    let lhs = p.encode(&rel.lhs).ok()?;
    let rhs = p.encode(&rel.rhs).ok()?;
    let (from, to, d) = match step.direction {
        Direction::LR => (lhs, rhs, rel.delta_shift),
        Direction::RL => (rhs, lhs, -rel.delta_shift),
    };
    if step.position + from.len() > word.len()
        || word[step.position..step.position + from.len()] != from[..]
    {
        return None;
    }
    let mut out = word[..step.position].to_vec();
    out.extend_from_slice(&to);
    out.extend_from_slice(&word[step.position + from.len()..]);
    Some((out, d))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub ok: bool,
    pub failed_step: Option<usize>,
    pub delta: i64,
    pub message: String,
}

/// Independent replay: every step must find its relation side verbatim at
/// the stated position, and the accumulated δ must equal `total_delta`.
pub fn replay(trace: &ProofTrace, p: &Presentation, lemmas: &[Relation]) -> ReplayReport {
    let fail = |k: Option<usize>, delta: i64, msg: String| ReplayReport {
        ok: false,
        failed_step: k,
        delta,
        message: msg,
    };
    let mut word: Vec<GenSymbolKey> = match key_word(&trace.start) {
        Some(w) => w,
        None => return fail(None, 0, "start word contains δ".into()),
    };
    let mut delta = 0i64;
    for (k, step) in trace.steps.iter().enumerate() {
        let rel = match p.relations.iter().chain(lemmas).find(|r| r.tag == step.tag) {
            Some(r) => r,
            None => return fail(Some(k), delta, format!("unknown relation `{}`", step.tag)),
        };
        let (from, to, d) = match step.direction {
            Direction::LR => (&rel.lhs, &rel.rhs, rel.delta_shift),
            Direction::RL => (&rel.rhs, &rel.lhs, -rel.delta_shift),
        };
        let (from, to) = match (key_word(from), key_word(to)) {
            (Some(f), Some(t)) => (f, t),
            _ => return fail(Some(k), delta, "relation side contains δ".into()),
        };
        if d != step.delta_shift_applied {
            return fail(
                Some(k),
                delta,
                format!("step {k} records the wrong δ shift"),
            );
        }
        let end = step.position + from.len();
        if end > word.len() || word[step.position..end] != from[..] {
            return fail(
                Some(k),
                delta,
                format!(
                    "step {k}: `{}` not found at position {}",
                    step.tag, step.position
                ),
            );
        }
        word.splice(step.position..end, to);
        delta += d;
    }
    match key_word(&trace.end) {
        Some(end) if end == word => {}
        _ => return fail(None, delta, "final word differs from the trace end".into()),
    }
    if delta != trace.total_delta {
        return fail(
            None,
            delta,
            format!(
                "δ total {delta} differs from recorded {}",
                trace.total_delta
            ),
        );
    }
    ReplayReport {
        ok: true,
        failed_step: None,
        delta,
        message: "ok".into(),
    }
}

type GenSymbolKey = (bool, usize);

fn key_word(w: &MonoidWord) -> Option<Vec<GenSymbolKey>> {
    w.symbols
        .iter()
        .map(|s| match s.kind {
            crate::word::GenKind::R => s.node.map(|n| (false, n)),
            crate::word::GenKind::E => s.node.map(|n| (true, n)),
            _ => None,
        })
        .collect()
}

struct Node {
    state: Vec<u32>,
    parent: u32,
    rule: u32,
    dir: Direction,
    pos: u32,
    delta: i64,
}

struct Side {
    nodes: Vec<Node>,
    index: FxHashMap<Vec<u32>, u32>,
    frontier: Vec<u32>,
    depth: usize,
}

impl Side {
    fn new(root: Vec<u32>) -> Self {
        let mut index = FxHashMap::default();
        index.insert(root.clone(), 0);
        Side {
            nodes: vec![Node {
                state: root,
                parent: u32::MAX,
                rule: u32::MAX,
                dir: Direction::LR,
                pos: 0,
                delta: 0,
            }],
            index,
            frontier: vec![0],
            depth: 0,
        }
    }
}

/// Abstract step in a found path: the states before and after and the rule
/// use. `pos` is a letter position (plain) or an E-block index (skeleton).
struct PathStep {
    state: Vec<u32>,
    next: Vec<u32>,
    rule: u32,
    dir: Direction,
    pos: u32,
}

/// A successor: state, rule index, direction, position, δ shift.
type Succ = (Vec<u32>, u32, Direction, u32, i64);

/// Freedom around one `E_i` in skeleton states. Generators in `pass` move
/// through `E_i` unchanged and `r_i` is absorbed on either side, so
/// `g E_i g' = g h E_i h⁻¹ g'` for `h` in the pass subgroup and
/// `r_i E_i = E_i = E_i r_i`.
#[derive(Clone, Debug, Default)]
struct Gauge {
    /// Pass subgroup extended by `r_i` when absorption is available.
    group: Vec<u32>,
    in_pass: Vec<bool>,
    absorb: bool,
    /// `[R_j E_i] → [E_i R_j]`, per `j`.
    pass: Vec<Option<(u32, Direction)>>,
    /// `[R_i E_i] → [E_i]`.
    absorb_l: Option<(u32, Direction)>,
    /// `[E_i R_i] → [E_i]`.
    absorb_r: Option<(u32, Direction)>,
}

#[derive(Clone, Copy, Debug)]
enum GaugeMove {
    /// `E_i g → E_i r_i g` for the segment right of an `E_i`.
    AbsorbLeft { seg: usize },
    /// Segment left of block `block` is `c·p·r_i^e`; `r_i` is absorbed and
    /// `p` moved through the `E_i`.
    Slide {
        block: usize,
        c: u32,
        p: u32,
        e: bool,
    },
    /// `E_a E_b → E_b E_a` at blocks `block`, `block + 1` (empty segment).
    Swap { block: usize },
}

pub struct Prover {
    presentation: Presentation,
    mode: Mode,
    group: Option<Arc<WeylGroup>>,
    rules: Vec<Rule>,
    lemmas: Vec<Relation>,
    /// Rules used for group rewriting: deletion of `ss` per generator and a
    /// braid move per generator pair.
    deletions: Vec<Option<(u32, Direction)>>,
    braids: FxHashMap<(usize, usize), (u32, Direction)>,
    coxeter: Vec<Vec<usize>>,
    gauge: Vec<Gauge>,
    /// `[E_a E_b] → [E_b E_a]` for commuting `E`s, keyed by `(a, b)`.
    swaps: FxHashMap<(u32, u32), (u32, Direction)>,
    /// Rules whose sides are gauge-equivalent; they never change a state.
    trivial: Vec<bool>,
}

impl Prover {
    pub fn new(p: &Presentation, mode: Mode) -> Result<Self> {
        let mut prover = Prover {
            presentation: p.clone(),
            mode,
            group: None,
            rules: Vec::new(),
            lemmas: Vec::new(),
            deletions: Vec::new(),
            braids: FxHashMap::default(),
            coxeter: Vec::new(),
            gauge: Vec::new(),
            swaps: FxHashMap::default(),
            trivial: Vec::new(),
        };
        if mode == Mode::Skeleton {
            let rs = RootSystem::build(p.root_type)?;
            if rs.node_labels() != p.nodes {
                return Err(Error::Config(
                    "presentation nodes do not match the root system".into(),
                ));
            }
            let w = WeylGroup::enumerate(Arc::new(rs), 1 << 20)?;
            let rank = w.rank();
            prover.coxeter = (0..rank)
                .map(|s| {
                    (0..rank)
                        .map(|t| {
                            let st = w.mul(w.generator(s), w.generator(t));
                            let mut e = st;
                            let mut m = 1;
                            while e != 0 {
                                e = w.mul(e, st);
                                m += 1;
                            }
                            m
                        })
                        .collect()
                })
                .collect();
            prover.group = Some(Arc::new(w));
        }
        for rel in &p.relations {
            prover.push_rule(rel)?;
        }
        if mode == Mode::Skeleton {
            prover.index_group_rules();
            prover.derive_missing_braids()?;
        }
        Ok(prover)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Certified lemmas currently in the rule pool (needed for replay).
    pub fn lemmas(&self) -> &[Relation] {
        &self.lemmas
    }

    fn push_rule(&mut self, rel: &Relation) -> Result<()> {
        let lhs = self.presentation.encode(&rel.lhs)?;
        let rhs = self.presentation.encode(&rel.rhs)?;
        let skel = match &self.group {
            Some(w) => {
                let mk = |letters: &[Letter]| {
                    let (lits, es) = split_segments(letters);
                    let groups = lits
                        .iter()
                        .map(|l| w.from_word(&gens_of(l)) as u32)
                        .collect();
                    Skel { groups, es }
                };
                let (a, b) = (mk(&lhs), mk(&rhs));
                if (a.es.is_empty()) != (b.es.is_empty()) {
                    return Err(Error::Config(format!(
                        "relation `{}` equates an E-word with a pure group word",
                        rel.tag
                    )));
                }
                Some((a, b))
            }
            None => None,
        };
        self.rules.push(Rule {
            tag: rel.tag.clone(),
            lhs,
            rhs,
            shift: rel.delta_shift,
            skel,
        });
        Ok(())
    }

    /// Adds a relation to the rule pool. The caller is responsible for it
    /// being certified (see [`certify_lemma_pipeline`]).
    pub fn add_lemma(&mut self, rel: Relation) -> Result<()> {
        if self.rules.iter().any(|r| r.tag == rel.tag) {
            return Err(Error::Config(format!(
                "duplicate relation tag `{}`",
                rel.tag
            )));
        }
        self.push_rule(&rel)?;
        self.lemmas.push(rel);
        if self.mode == Mode::Skeleton {
            self.index_group_rules();
        }
        Ok(())
    }

    fn alternating(s: usize, t: usize, m: usize) -> Vec<Letter> {
        (0..m)
            .map(|k| (2 * if k % 2 == 0 { s } else { t }) as Letter)
            .collect()
    }

    fn index_group_rules(&mut self) {
        let rank = self.presentation.nodes.len();
        self.deletions = vec![None; rank];
        self.braids.clear();
        self.swaps.clear();
        let mut gauge = vec![
            Gauge {
                pass: vec![None; rank],
                ..Gauge::default()
            };
            rank
        ];
        let r = |g: usize| (2 * g) as Letter;
        let e = |g: usize| (2 * g + 1) as Letter;
        for (k, rule) in self.rules.iter().enumerate() {
            for dir in [Direction::LR, Direction::RL] {
                let (from, to, d) = rule.sides(dir);
                let hit = Some((k as u32, dir));
                if d == 0 && from.len() == 2 && to.len() == 2 {
                    for (i, g) in gauge.iter_mut().enumerate() {
                        for j in 0..rank {
                            if j != i && from == [r(j), e(i)] && to == [e(i), r(j)] {
                                g.pass[j].get_or_insert((k as u32, dir));
                            }
                            if j != i && from == [e(i), e(j)] && to == [e(j), e(i)] {
                                self.swaps
                                    .entry((i as u32, j as u32))
                                    .or_insert((k as u32, dir));
                            }
                        }
                    }
                }
                if d == 0 && from.len() == 2 && to.len() == 1 {
                    for (i, g) in gauge.iter_mut().enumerate() {
                        if from == [r(i), e(i)] && to == [e(i)] {
                            g.absorb_l = g.absorb_l.or(hit);
                        }
                        if from == [e(i), r(i)] && to == [e(i)] {
                            g.absorb_r = g.absorb_r.or(hit);
                        }
                    }
                }
                if !rule.pure_r() {
                    continue;
                }
                if to.is_empty() && from.len() == 2 && from[0] == from[1] {
                    let g = from[0] as usize / 2;
                    self.deletions[g].get_or_insert((k as u32, dir));
                }
                for s in 0..rank {
                    for t in 0..rank {
                        let m = self.coxeter[s][t];
                        if s == t || from.len() != m {
                            continue;
                        }
                        if from == Self::alternating(s, t, m) && to == Self::alternating(t, s, m) {
                            self.braids.entry((s, t)).or_insert((k as u32, dir));
                        }
                    }
                }
            }
        }
        let w = self.group.clone().expect("skeleton mode");
        for (i, g) in gauge.iter_mut().enumerate() {
            let gi = w.generator(i);
            let pass: Vec<usize> = (0..rank)
                .filter(|&j| g.pass[j].is_some() && self.coxeter[i][j] == 2)
                .map(|j| w.generator(j))
                .collect();
            let sub = w.generate(&pass);
            g.in_pass = vec![false; w.order()];
            for &x in &sub.elements {
                g.in_pass[x] = true;
            }
            for j in 0..rank {
                if self.coxeter[i][j] != 2 {
                    g.pass[j] = None;
                }
            }
            g.absorb = g.absorb_l.is_some() && g.absorb_r.is_some();
            let mut gens = pass;
            if g.absorb {
                gens.push(gi);
            }
            g.group = w
                .generate(&gens)
                .elements
                .iter()
                .map(|&x| x as u32)
                .collect();
        }
        self.gauge = gauge;
        let trivial: Vec<bool> = self
            .rules
            .iter()
            .map(|rule| match &rule.skel {
                Some((l, r)) if rule.shift == 0 && !l.es.is_empty() => {
                    let mut a = self.skel_state(l);
                    let mut b = self.skel_state(r);
                    self.canon(&mut a, true, None);
                    self.canon(&mut b, true, None);
                    a == b
                }
                _ => false,
            })
            .collect();
        self.trivial = trivial;
    }

    fn skel_state(&self, s: &Skel) -> Vec<u32> {
        let mut out = vec![s.groups[0]];
        for (k, &e) in s.es.iter().enumerate() {
            out.push(e);
            out.push(s.groups[k + 1]);
        }
        out
    }

    /// Certifies braid moves missing from the presentation (the `G2` braid of
    /// length 6 follows from `(r1 r0)^6 = 1`) with a plain search over the
    /// pure group relations, and adds them as lemmas.
    fn derive_missing_braids(&mut self) -> Result<()> {
        let rank = self.presentation.nodes.len();
        for s in 0..rank {
            for t in s + 1..rank {
                if self.braids.contains_key(&(s, t)) && self.braids.contains_key(&(t, s)) {
                    continue;
                }
                let m = self.coxeter[s][t];
                let (ns, nt) = (self.presentation.nodes[s], self.presentation.nodes[t]);
                let lhs = self.presentation.decode(&Self::alternating(s, t, m));
                let rhs = self.presentation.decode(&Self::alternating(t, s, m));
                let pure: Vec<Rule> = self.rules.iter().filter(|r| r.pure_r()).cloned().collect();
                let bounds = SearchBounds {
                    max_depth: 2 * m + 4,
                    max_word_length: 3 * m,
                    max_frontier: 2_000_000,
                };
                let outcome = self.search_plain_with(&pure, &lhs, &rhs, bounds)?;
                let trace = outcome.trace().cloned().ok_or_else(|| {
                    Error::Resource(format!(
                        "could not derive the braid relation for nodes {ns},{nt}"
                    ))
                })?;
                let rel = Relation {
                    lhs,
                    rhs,
                    delta_shift: 0,
                    tag: format!("braid_alt[{ns},{nt}]"),
                };
                let rep = replay(&trace, &self.presentation, &self.lemmas);
                if !rep.ok {
                    return Err(Error::Resource(format!(
                        "braid derivation failed replay: {}",
                        rep.message
                    )));
                }
                self.add_lemma(rel)?;
            }
        }
        Ok(())
    }

    /// `prove_equal` within the prover's current rule pool.
    pub fn prove(
        &self,
        a: &MonoidWord,
        b: &MonoidWord,
        bounds: SearchBounds,
    ) -> Result<ProofOutcome> {
        bounds.validate()?;
        let (da, a0) = a.split_delta();
        let (db, b0) = b.split_delta();
        self.presentation.encode(&a0)?;
        self.presentation.encode(&b0)?;
        let out = match self.mode {
            Mode::Plain => self.search_plain_with(&self.rules, &a0, &b0, bounds)?,
            Mode::Skeleton => self.search_skeleton(&a0, &b0, bounds)?,
        };
        Ok(match out {
            ProofOutcome::Found { trace, .. } => {
                let delta = da + trace.total_delta - db;
                ProofOutcome::Found { trace, delta }
            }
            nf => nf,
        })
    }

    pub fn replay(&self, trace: &ProofTrace) -> ReplayReport {
        replay(trace, &self.presentation, &self.lemmas)
    }

    fn search_plain_with(
        &self,
        rules: &[Rule],
        a: &MonoidWord,
        b: &MonoidWord,
        bounds: SearchBounds,
    ) -> Result<ProofOutcome> {
        let la: Vec<u32> = self
            .presentation
            .encode(a)?
            .into_iter()
            .map(u32::from)
            .collect();
        let lb: Vec<u32> = self
            .presentation
            .encode(b)?
            .into_iter()
            .map(u32::from)
            .collect();
        let succ = |state: &[u32], out: &mut Vec<Succ>| {
            for (k, r) in rules.iter().enumerate() {
                for dir in [Direction::LR, Direction::RL] {
                    let (from, to, d) = r.sides(dir);
                    if from.len() > state.len()
                        || state.len() + to.len() - from.len() > bounds.max_word_length
                    {
                        continue;
                    }
                    for pos in 0..=state.len() - from.len() {
                        if state[pos..pos + from.len()]
                            .iter()
                            .zip(from)
                            .all(|(x, &y)| *x == u32::from(y))
                        {
                            let mut next = state[..pos].to_vec();
                            next.extend(to.iter().map(|&l| u32::from(l)));
                            next.extend_from_slice(&state[pos + from.len()..]);
                            out.push((next, k as u32, dir, pos as u32, d));
                        }
                    }
                }
            }
        };
        let (fwd, bwd, total_delta) = match bidirectional(la, lb, bounds, succ)? {
            Ok(x) => x,
            Err(nf) => return Ok(nf),
        };
        let steps: Vec<ProofStep> = fwd
            .iter()
            .chain(bwd.iter())
            .map(|st| {
                let r = &rules[st.rule as usize];
                ProofStep {
                    position: st.pos as usize,
                    tag: r.tag.clone(),
                    direction: st.dir,
                    delta_shift_applied: r.sides(st.dir).2,
                }
            })
            .collect();
        let trace = ProofTrace {
            start: a.clone(),
            end: b.clone(),
            abstract_depth: steps.len(),
            steps,
            total_delta,
        };
        Ok(ProofOutcome::Found {
            trace,
            delta: total_delta,
        })
    }

    fn skeleton_of(&self, letters: &[Letter]) -> Vec<u32> {
        let w = self.group();
        let (segs, es) = split_segments(letters);
        let mut out = Vec::with_capacity(2 * es.len() + 1);
        for (k, seg) in segs.iter().enumerate() {
            out.push(w.from_word(&gens_of(seg)) as u32);
            if k < es.len() {
                out.push(es[k]);
            }
        }
        out
    }

    fn skel_length(&self, state: &[u32]) -> usize {
        let w = self.group();
        state
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { w.length(x as usize) } else { 1 })
            .sum()
    }

    fn canon_word(&self, state: &[u32]) -> Vec<Letter> {
        let w = self.group();
        let mut out = Vec::new();
        for (k, &x) in state.iter().enumerate() {
            if k % 2 == 0 {
                out.extend(letters_of(w.word(x as usize)));
            } else {
                out.push((2 * x + 1) as Letter);
            }
        }
        out
    }

    /// Least element of `u·G_i` and the `a ∈ G_i` with `u = c·a`.
    fn min_rep(&self, u: u32, i: usize) -> (u32, u32) {
        let w = self.group();
        let c = self.gauge[i]
            .group
            .iter()
            .map(|&a| w.mul(u as usize, a as usize))
            .min()
            .expect("gauge group contains the identity");
        (c as u32, w.mul(w.inverse(c), u as usize) as u32)
    }

    /// Gauge normal form, swept left to right: each segment before an `E_i`
    /// becomes the least element of its `G_i` coset (optionally after
    /// absorbing the preceding `r`), and the pass part moves right.
    fn canon(&self, st: &mut [u32], last_absorb: bool, mut moves: Option<&mut Vec<GaugeMove>>) {
        // commuting E's with nothing between them are sorted; each swap is
        // followed by a fresh sweep, with a cap in case sweeps and swaps
        // keep trading places
        for _ in 0..64 {
            self.sweep(st, last_absorb, moves.as_deref_mut());
            let k = st.len() / 2;
            let swap = (0..k.saturating_sub(1)).find(|&b| {
                let (ea, eb) = (st[2 * b + 1], st[2 * b + 3]);
                st[2 * b + 2] == 0 && ea > eb && self.swaps.contains_key(&(ea, eb))
            });
            match swap {
                Some(b) => {
                    st.swap(2 * b + 1, 2 * b + 3);
                    if let Some(m) = moves.as_deref_mut() {
                        m.push(GaugeMove::Swap { block: b });
                    }
                }
                None => return,
            }
        }
        self.sweep(st, last_absorb, moves);
    }

    fn sweep(&self, st: &mut [u32], last_absorb: bool, mut moves: Option<&mut Vec<GaugeMove>>) {
        let w = self.group();
        let k = st.len() / 2;
        for b in 0..k {
            let i = st[2 * b + 1] as usize;
            let u = st[2 * b];
            let mut best = self.min_rep(u, i);
            let mut absorbed = false;
            if b >= 1 {
                let prev = st[2 * b - 1] as usize;
                if self.gauge[prev].absorb {
                    let cand = self.min_rep(w.lmul_gen(prev, u as usize) as u32, i);
                    if cand.0 < best.0 {
                        best = cand;
                        absorbed = true;
                    }
                }
            }
            if absorbed {
                let prev = st[2 * b - 1] as usize;
                st[2 * b] = w.lmul_gen(prev, u as usize) as u32;
                if let Some(m) = moves.as_deref_mut() {
                    m.push(GaugeMove::AbsorbLeft { seg: b });
                }
            }
            let (c, a) = best;
            if a != 0 {
                let (p, e) = if self.gauge[i].in_pass[a as usize] {
                    (a, false)
                } else {
                    (w.rmul_gen(a as usize, i) as u32, true)
                };
                debug_assert!(self.gauge[i].in_pass[p as usize]);
                st[2 * b] = c;
                st[2 * b + 2] = w.mul(p as usize, st[2 * b + 2] as usize) as u32;
                if let Some(m) = moves.as_deref_mut() {
                    m.push(GaugeMove::Slide { block: b, c, p, e });
                }
            }
        }
        if last_absorb && k >= 1 {
            let prev = st[2 * k - 1] as usize;
            if self.gauge[prev].absorb {
                let v = w.lmul_gen(prev, st[2 * k] as usize) as u32;
                if v < st[2 * k] {
                    st[2 * k] = v;
                    if let Some(m) = moves {
                        m.push(GaugeMove::AbsorbLeft { seg: k });
                    }
                }
            }
        }
    }

    /// Matches a rule side at block `b` of a canonical state up to gauge,
    /// with `a` the gauge element applied at the first `E`. Returns the outer
    /// factors `x`, `y` with `state ≡ … x·side·y …`.
    fn match_at(&self, st: &[u32], from: &Skel, b: usize, a: u32) -> Option<(u32, u32)> {
        let w = self.group();
        let m = from.es.len();
        let gb = st[2 * b];
        let mut win = Vec::with_capacity(2 * m + 1);
        win.push(w.mul(gb as usize, a as usize) as u32);
        for l in 0..m {
            win.push(from.es[l]);
            win.push(from.groups[l + 1]);
        }
        self.canon(&mut win, false, None);
        if win[0] != gb {
            return None;
        }
        for l in 1..m {
            if win[2 * l] != st[2 * (b + l)] {
                return None;
            }
        }
        let x = w.mul(
            w.mul(gb as usize, a as usize),
            w.inverse(from.groups[0] as usize),
        );
        let y = w.mul(w.inverse(win[2 * m] as usize), st[2 * (b + m)] as usize);
        Some((x as u32, y as u32))
    }

    fn rule_sides<'r>(&self, rule: &'r Rule, dir: Direction) -> (&'r Skel, &'r Skel) {
        let (l, r) = rule.skel.as_ref().expect("skeleton rule");
        match dir {
            Direction::LR => (l, r),
            Direction::RL => (r, l),
        }
    }

    /// Replaces the matched window by `x·to·y` and renormalizes.
    fn replace_at(
        &self,
        st: &[u32],
        from_len: usize,
        to: &Skel,
        b: usize,
        x: u32,
        y: u32,
    ) -> Vec<u32> {
        let w = self.group();
        let mut next = st[..2 * b].to_vec();
        let rn = to.es.len();
        if rn == 0 {
            next.push(w.mul(w.mul(x as usize, to.groups[0] as usize), y as usize) as u32);
        } else {
            next.push(w.mul(x as usize, to.groups[0] as usize) as u32);
            for q in 0..rn {
                next.push(to.es[q]);
                if q + 1 < rn {
                    next.push(to.groups[q + 1]);
                }
            }
            next.push(w.mul(to.groups[rn] as usize, y as usize) as u32);
        }
        next.extend_from_slice(&st[2 * (b + from_len) + 1..]);
        self.canon(&mut next, true, None);
        next
    }

    /// Rearrangements of runs of commuting `E`s (empty segments between)
    /// that normalize back to `st`; rules are matched against each.
    fn variants(&self, st: &[u32]) -> Vec<Vec<u32>> {
        let k = st.len() / 2;
        let mut clusters = Vec::new();
        let mut b = 0;
        while b < k {
            let mut end = b;
            while end + 1 < k
                && st[2 * end + 2] == 0
                && (b..=end).all(|q| self.swaps.contains_key(&(st[2 * q + 1], st[2 * end + 3])))
            {
                end += 1;
            }
            if end > b {
                clusters.push((b, end));
            }
            b = end + 1;
        }
        let mut out = vec![st.to_vec()];
        for (b, end) in clusters {
            let letters: Vec<u32> = (b..=end).map(|q| st[2 * q + 1]).collect();
            let mut perms = Vec::new();
            permutations(&letters, &mut Vec::new(), &mut perms);
            let mut next = Vec::new();
            for base in &out {
                for perm in &perms {
                    let mut v = base.clone();
                    for (q, &e) in perm.iter().enumerate() {
                        v[2 * (b + q) + 1] = e;
                    }
                    next.push(v);
                }
                if next.len() > 512 {
                    break;
                }
            }
            out = next;
        }
        out.retain(|v| {
            let mut c = v.clone();
            self.canon(&mut c, true, None);
            c == st
        });
        out
    }

    fn skeleton_successors(&self, st: &[u32], bounds: &SearchBounds, out: &mut Vec<Succ>) {
        for v in self.variants(st) {
            self.successors_of_variant(&v, bounds, out);
        }
    }

    fn successors_of_variant(&self, st: &[u32], bounds: &SearchBounds, out: &mut Vec<Succ>) {
        let k = st.len() / 2;
        for (ri, rule) in self.rules.iter().enumerate() {
            if rule.skel.is_none() || rule.pure_r() || self.trivial[ri] {
                continue;
            }
            for dir in [Direction::LR, Direction::RL] {
                let (from, to) = self.rule_sides(rule, dir);
                let m = from.es.len();
                if m > k {
                    continue;
                }
                for b in 0..=k - m {
                    if (0..m).any(|q| st[2 * (b + q) + 1] != from.es[q]) {
                        continue;
                    }
                    let i = st[2 * b + 1] as usize;
                    for &a in &self.gauge[i].group {
                        if let Some((x, y)) = self.match_at(st, from, b, a) {
                            let next = self.replace_at(st, m, to, b, x, y);
                            if self.skel_length(&next) <= bounds.max_word_length {
                                out.push((next, ri as u32, dir, b as u32, rule.sides(dir).2));
                            }
                        }
                    }
                }
            }
        }
    }

    fn search_skeleton(
        &self,
        a: &MonoidWord,
        b: &MonoidWord,
        bounds: SearchBounds,
    ) -> Result<ProofOutcome> {
        let la = self.presentation.encode(a)?;
        let lb = self.presentation.encode(b)?;
        let mut sa = self.skeleton_of(&la);
        let mut sb = self.skeleton_of(&lb);
        self.canon(&mut sa, true, None);
        self.canon(&mut sb, true, None);
        let succ =
            |state: &[u32], out: &mut Vec<Succ>| self.skeleton_successors(state, &bounds, out);
        let (fwd, bwd, total_delta) = match bidirectional(sa, sb, bounds, succ)? {
            Ok(x) => x,
            Err(nf) => return Ok(nf),
        };
        let abstract_depth = fwd.len() + bwd.len();
        let path: Vec<PathStep> = fwd.into_iter().chain(bwd).collect();
        let steps = self.concretize(&la, &lb, &path)?;
        let trace = ProofTrace {
            start: a.clone(),
            end: b.clone(),
            steps,
            total_delta,
            abstract_depth,
        };
        let rep = self.replay(&trace);
        if !rep.ok {
            return Err(Error::Resource(format!(
                "internal: concretized trace fails replay: {}",
                rep.message
            )));
        }
        Ok(ProofOutcome::Found {
            trace,
            delta: total_delta,
        })
    }

    /// Primitive steps taking a literal word to the canonical word of its
    /// gauge normal form.
    fn steps_to_canonical(&self, literal: &[Letter]) -> Result<(Vec<ProofStep>, Vec<Letter>)> {
        let w = self.group();
        let mut cx = Concretizer {
            prover: self,
            word: literal.to_vec(),
            steps: Vec::new(),
        };
        let mut st = self.skeleton_of(literal);
        let mut moves = Vec::new();
        self.canon(&mut st, true, Some(&mut moves));
        for mv in moves {
            match mv {
                GaugeMove::AbsorbLeft { seg } => {
                    let at = cx.segment_bounds(seg).0 - 1;
                    let i = self.word_gen(cx.word[at]);
                    let (k, dir) = self.gauge[i].absorb_r.expect("absorbing gauge");
                    cx.apply(self.step_for(k, dir.flip(), at))?;
                }
                GaugeMove::Swap { block } => {
                    let at = cx.segment_bounds(block).1;
                    let key = (
                        self.word_gen(cx.word[at]) as u32,
                        self.word_gen(cx.word[at + 1]) as u32,
                    );
                    let (k, dir) = self.swaps[&key];
                    cx.apply(self.step_for(k, dir, at))?;
                }
                GaugeMove::Slide { block, c, p, e } => {
                    let i = self.word_gen(cx.word[cx.segment_bounds(block).1]);
                    let mut target = letters_of(w.word(c as usize));
                    let pw = letters_of(w.word(p as usize));
                    target.extend_from_slice(&pw);
                    if e {
                        target.push((2 * i) as Letter);
                    }
                    cx.rewrite_segment(block, &target)?;
                    if e {
                        let (k, dir) = self.gauge[i].absorb_l.expect("absorbing gauge");
                        let at = cx.segment_bounds(block).1 - 1;
                        cx.apply(self.step_for(k, dir, at))?;
                    }
                    for &l in pw.iter().rev() {
                        let (k, dir) = self.gauge[i].pass[l as usize / 2].expect("pass rule");
                        let at = cx.segment_bounds(block).1 - 1;
                        cx.apply(self.step_for(k, dir, at))?;
                    }
                }
            }
        }
        for seg in 0..=st.len() / 2 {
            cx.rewrite_segment(seg, &letters_of(w.word(st[2 * seg] as usize)))?;
        }
        debug_assert_eq!(cx.word, self.canon_word(&st));
        Ok((cx.steps, cx.word))
    }

    fn word_gen(&self, letter: Letter) -> usize {
        letter as usize / 2
    }

    fn step_for(&self, k: u32, dir: Direction, position: usize) -> ProofStep {
        let r = &self.rules[k as usize];
        ProofStep {
            position,
            tag: r.tag.clone(),
            direction: dir,
            delta_shift_applied: r.sides(dir).2,
        }
    }

    fn concretize(
        &self,
        start: &[Letter],
        goal: &[Letter],
        path: &[PathStep],
    ) -> Result<Vec<ProofStep>> {
        let w = self.group();
        let canon = |g: u32| letters_of(w.word(g as usize));
        let (mut steps, mut current) = self.steps_to_canonical(start)?;
        for st in path {
            let rule = &self.rules[st.rule as usize];
            let b = st.pos as usize;
            let (from, _) = self.rule_sides(rule, st.dir);
            let m = from.es.len();
            let (_, to) = self.rule_sides(rule, st.dir);
            let (state, x, y) = self
                .variants(&st.state)
                .into_iter()
                .find_map(|v| {
                    if (0..m).any(|q| v.get(2 * (b + q) + 1) != Some(&from.es[q])) {
                        return None;
                    }
                    self.gauge[v[2 * b + 1] as usize]
                        .group
                        .iter()
                        .filter_map(|&a| self.match_at(&v, from, b, a))
                        .find(|&(x, y)| self.replace_at(&v, m, to, b, x, y) == st.next)
                        .map(|(x, y)| (v.clone(), x, y))
                })
                .ok_or_else(|| Error::Resource("internal: path step does not match".into()))?;
            // literal word with the rule side spelled out verbatim
            let mut lit = Vec::new();
            for s in 0..b {
                lit.extend(canon(state[2 * s]));
                lit.push((2 * state[2 * s + 1] + 1) as Letter);
            }
            lit.extend(canon(x));
            let at = lit.len();
            let (from_l, _, d) = rule.sides(st.dir);
            lit.extend_from_slice(from_l);
            lit.extend(canon(y));
            for s in b + m..state.len() / 2 {
                lit.push((2 * state[2 * s + 1] + 1) as Letter);
                lit.extend(canon(state[2 * s + 2]));
            }
            let (to_lit, back) = self.steps_to_canonical(&lit)?;
            if back != current {
                return Err(Error::Resource(
                    "internal: gauge normal form mismatch".into(),
                ));
            }
            steps.extend(invert(to_lit));
            let mut cx = Concretizer {
                prover: self,
                word: lit,
                steps: Vec::new(),
            };
            cx.apply(ProofStep {
                position: at,
                tag: rule.tag.clone(),
                direction: st.dir,
                delta_shift_applied: d,
            })?;
            steps.extend(cx.steps);
            let (fwd, word) = self.steps_to_canonical(&cx.word)?;
            steps.extend(fwd);
            current = word;
        }
        let (to_goal, back) = self.steps_to_canonical(goal)?;
        if back != current {
            return Err(Error::Resource(
                "internal: concretization missed the goal word".into(),
            ));
        }
        steps.extend(invert(to_goal));
        Ok(steps)
    }
}

fn permutations(items: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if items.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        prefix.push(x);
        permutations(&rest, prefix, out);
        prefix.pop();
    }
}

fn invert(steps: Vec<ProofStep>) -> impl Iterator<Item = ProofStep> {
    steps.into_iter().rev().map(|st| ProofStep {
        position: st.position,
        tag: st.tag,
        direction: st.direction.flip(),
        delta_shift_applied: -st.delta_shift_applied,
    })
}

struct Concretizer<'a> {
    prover: &'a Prover,
    word: Vec<Letter>,
    steps: Vec<ProofStep>,
}

impl Concretizer<'_> {
    fn segment_bounds(&self, seg: usize) -> (usize, usize) {
        let mut count = 0;
        let mut start = 0;
        for (k, &l) in self.word.iter().enumerate() {
            if l % 2 == 1 {
                if count == seg {
                    return (start, k);
                }
                count += 1;
                start = k + 1;
            }
        }
        (start, self.word.len())
    }

    fn apply(&mut self, step: ProofStep) -> Result<()> {
        let rule = self
            .prover
            .rules
            .iter()
            .find(|r| r.tag == step.tag)
            .ok_or_else(|| Error::Resource("internal: unknown rule".into()))?;
        let (from, to, _) = rule.sides(step.direction);
        let end = step.position + from.len();
        if end > self.word.len() || self.word[step.position..end] != from[..] {
            return Err(Error::Resource(format!(
                "internal: `{}` does not match at {} in {}",
                step.tag,
                step.position,
                self.prover.presentation.render(&self.word)
            )));
        }
        self.word.splice(step.position..end, to.iter().copied());
        self.steps.push(step);
        Ok(())
    }

    fn rewrite_segment(&mut self, seg: usize, target: &[Letter]) -> Result<()> {
        let (s, e) = self.segment_bounds(seg);
        let current = self.word[s..e].to_vec();
        if current == target {
            return Ok(());
        }
        let local = self.prover.group_rewrite(&current, target)?;
        for mut step in local {
            step.position += s;
            self.apply(step)?;
        }
        Ok(())
    }
}

impl Prover {
    fn group(&self) -> &WeylGroup {
        self.group.as_ref().expect("skeleton mode")
    }

    fn braid_step(&self, s: usize, t: usize, position: usize) -> Result<ProofStep> {
        let (k, dir) = self
            .braids
            .get(&(s, t))
            .copied()
            .or_else(|| self.braids.get(&(t, s)).map(|&(k, d)| (k, d.flip())))
            .ok_or_else(|| Error::Config(format!("no braid relation for generators {s},{t}")))?;
        Ok(self.step_for(k, dir, position))
    }

    fn deletion_step(&self, s: usize, position: usize) -> Result<ProofStep> {
        let (k, dir) = self.deletions[s]
            .ok_or_else(|| Error::Config(format!("no involution relation for generator {s}")))?;
        Ok(self.step_for(k, dir, position))
    }

    /// Braid moves turning reduced word `a` into reduced word `b` of the same
    /// element (Matsumoto), positions relative to the word start.
    fn connect(
        &self,
        a: &[usize],
        b: &[usize],
        offset: usize,
        out: &mut Vec<ProofStep>,
    ) -> Result<()> {
        if a == b {
            return Ok(());
        }
        if a[0] == b[0] {
            return self.connect(&a[1..], &b[1..], offset + 1, out);
        }
        let w = self.group();
        let (s, t) = (a[0], b[0]);
        let m = self.coxeter[s][t];
        let delta_s: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { s } else { t }).collect();
        let delta_t: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { t } else { s }).collect();
        let rest = w.mul(w.inverse(w.from_word(&delta_s)), w.from_word(a));
        let tail = w.word(rest).to_vec();
        let mut big_a = delta_s.clone();
        big_a.extend_from_slice(&tail);
        let mut big_b = delta_t;
        big_b.extend_from_slice(&tail);
        self.connect(a, &big_a, offset, out)?;
        out.push(self.braid_step(s, t, offset)?);
        self.connect(&big_b, b, offset, out)
    }

    /// Steps reducing an arbitrary generator word to a reduced word.
    fn reduce(&self, u: &[usize]) -> Result<(Vec<ProofStep>, Vec<usize>)> {
        let w = self.group();
        let mut steps = Vec::new();
        let mut prefix: Vec<usize> = Vec::new();
        let mut elem = 0usize;
        for &s in u {
            let next = w.rmul_gen(elem, s);
            if w.length(next) > w.length(elem) {
                prefix.push(s);
                elem = next;
                continue;
            }
            let mut target = w.word(next).to_vec();
            target.push(s);
            self.connect(&prefix, &target, 0, &mut steps)?;
            steps.push(self.deletion_step(s, target.len() - 1)?);
            prefix = w.word(next).to_vec();
            elem = next;
        }
        Ok((steps, prefix))
    }

    /// Primitive steps rewriting the group word `u` into `v` (equal in `W`).
    fn group_rewrite(&self, u: &[Letter], v: &[Letter]) -> Result<Vec<ProofStep>> {
        let (gu, gv) = (gens_of(u), gens_of(v));
        let w = self.group();
        if w.from_word(&gu) != w.from_word(&gv) {
            return Err(Error::Resource(
                "internal: group rewrite between different elements".into(),
            ));
        }
        let (mut steps, ru) = self.reduce(&gu)?;
        let (back, rv) = self.reduce(&gv)?;
        self.connect(&ru, &rv, 0, &mut steps)?;
        steps.extend(invert(back));
        Ok(steps)
    }
}

type Found = (Vec<PathStep>, Vec<PathStep>, i64);

/// Bidirectional BFS over states; `succ` lists successors of a state.
fn bidirectional<F>(
    start: Vec<u32>,
    goal: Vec<u32>,
    bounds: SearchBounds,
    succ: F,
) -> Result<std::result::Result<Found, ProofOutcome>>
where
    F: Fn(&[u32], &mut Vec<Succ>),
{
    let mut fwd = Side::new(start);
    let mut bwd = Side::new(goal);
    let meet = |fwd: &Side, bwd: &Side, kf: u32, kb: u32| -> Found {
        let mut f_steps = Vec::new();
        let mut k = kf;
        while fwd.nodes[k as usize].parent != u32::MAX {
            let n = &fwd.nodes[k as usize];
            f_steps.push(PathStep {
                state: fwd.nodes[n.parent as usize].state.clone(),
                next: n.state.clone(),
                rule: n.rule,
                dir: n.dir,
                pos: n.pos,
            });
            k = n.parent;
        }
        f_steps.reverse();
        // backward edges parent→child are walked child→parent with the rule
        // flipped, from the meeting point towards the goal
        let mut b_steps = Vec::new();
        let mut k = kb;
        while bwd.nodes[k as usize].parent != u32::MAX {
            let n = &bwd.nodes[k as usize];
            b_steps.push(PathStep {
                state: n.state.clone(),
                next: bwd.nodes[n.parent as usize].state.clone(),
                rule: n.rule,
                dir: n.dir.flip(),
                pos: n.pos,
            });
            k = n.parent;
        }
        let delta = fwd.nodes[kf as usize].delta - bwd.nodes[kb as usize].delta;
        (f_steps, b_steps, delta)
    };
    if let Some(&kb) = bwd.index.get(&fwd.nodes[0].state) {
        return Ok(Ok(meet(&fwd, &bwd, 0, kb)));
    }
    let mut buf = Vec::new();
    while fwd.depth + bwd.depth < bounds.max_depth {
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next_frontier = Vec::new();
        let frontier = std::mem::take(&mut this.frontier);
        let mut hit = None;
        'outer: for &k in &frontier {
            buf.clear();
            succ(&this.nodes[k as usize].state, &mut buf);
            for (state, rule, dir, pos, d) in buf.drain(..) {
                if this.index.contains_key(&state) {
                    continue;
                }
                let id = this.nodes.len() as u32;
                let delta = this.nodes[k as usize].delta + d;
                this.index.insert(state.clone(), id);
                let other_hit = other.index.get(&state).copied();
                this.nodes.push(Node {
                    state,
                    parent: k,
                    rule,
                    dir,
                    pos,
                    delta,
                });
                if let Some(o) = other_hit {
                    hit = Some((id, o));
                    break 'outer;
                }
                next_frontier.push(id);
                if next_frontier.len() > bounds.max_frontier {
                    let explored = fwd.nodes.len() + bwd.nodes.len();
                    return Ok(Err(ProofOutcome::NotFound {
                        reason: format!("frontier exceeded max_frontier = {}", bounds.max_frontier),
                        states_explored: explored,
                    }));
                }
            }
        }
        this.frontier = next_frontier;
        this.depth += 1;
        if let Some((id, o)) = hit {
            return Ok(Ok(if forward {
                meet(&fwd, &bwd, id, o)
            } else {
                meet(&fwd, &bwd, o, id)
            }));
        }
        if this.frontier.is_empty() {
            return Ok(Err(ProofOutcome::NotFound {
                reason: format!(
                    "search space exhausted within max_word_length = {}",
                    bounds.max_word_length
                ),
                states_explored: fwd.nodes.len() + bwd.nodes.len(),
            }));
        }
    }
    Ok(Err(ProofOutcome::NotFound {
        reason: format!("no meeting within max_depth = {}", bounds.max_depth),
        states_explored: fwd.nodes.len() + bwd.nodes.len(),
    }))
}

/// One-shot search with a fresh prover whose pool holds `p`'s relations and
/// the given (already certified) lemmas.
pub fn prove_equal(
    a: &MonoidWord,
    b: &MonoidWord,
    p: &Presentation,
    lemmas: &[Relation],
    bounds: SearchBounds,
) -> Result<ProofOutcome> {
    let mut prover = Prover::new(p, Mode::Skeleton)?;
    for l in lemmas {
        if prover.rules.iter().all(|r| r.tag != l.tag) {
            prover.add_lemma(l.clone())?;
        }
    }
    prover.prove(a, b, bounds)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaResult {
    pub set: String,
    pub tag: String,
    pub relation: String,
    pub proved: bool,
    pub abstract_depth: Option<usize>,
    pub trace_length: Option<usize>,
    pub replay_ok: bool,
    pub delta_ok: bool,
    pub millis: u128,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub presentation: String,
    pub bounds: SearchBounds,
    pub items: Vec<LemmaResult>,
    pub all_proved: bool,
}

/// Proves each set's items in order; proved items join the rule pool before
/// the next item. The prover keeps every certified lemma.
pub fn certify_lemma_pipeline(
    prover: &mut Prover,
    sets: &[DerivedRelationSet],
    bounds: SearchBounds,
) -> Result<PipelineReport> {
    let lower = prover.presentation.lowercase();
    let mut items = Vec::new();
    for set in sets {
        for rel in &set.items {
            let t0 = Instant::now();
            let outcome = prover.prove(&rel.lhs, &rel.rhs, bounds)?;
            let millis = t0.elapsed().as_millis();
            let mut res = LemmaResult {
                set: set.name.clone(),
                tag: rel.tag.clone(),
                relation: rel.display(lower),
                proved: false,
                abstract_depth: None,
                trace_length: None,
                replay_ok: false,
                delta_ok: false,
                millis,
                note: String::new(),
            };
            match outcome {
                ProofOutcome::Found { trace, delta } => {
                    res.abstract_depth = Some(trace.abstract_depth);
                    res.trace_length = Some(trace.steps.len());
                    res.replay_ok = prover.replay(&trace).ok;
                    res.delta_ok = delta == rel.delta_shift;
                    res.proved = res.replay_ok && res.delta_ok;
                    if !res.delta_ok {
                        res.note = format!("found δ^{delta}, expected δ^{}", rel.delta_shift);
                    }
                }
                ProofOutcome::NotFound {
                    reason,
                    states_explored,
                } => {
                    res.note = format!("{reason} ({states_explored} states)");
                }
            }
            if res.proved && prover.rules.iter().all(|r| r.tag != rel.tag) {
                prover.add_lemma(rel.clone())?;
            }
            items.push(res);
        }
    }
    let all_proved = items.iter().all(|i| i.proved);
    Ok(PipelineReport {
        presentation: prover.presentation.name.clone(),
        bounds,
        items,
        all_proved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{derived_sets_for, presentation_for};
    use crate::roots::RootType;

    fn w(s: &str) -> MonoidWord {
        MonoidWord::parse(s).unwrap()
    }

    #[test]
    fn reflexivity_is_empty_trace() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        let prover = Prover::new(&p, Mode::Plain).unwrap();
        let out = prover
            .prove(&w("e1 r0"), &w("e1 r0"), SearchBounds::default())
            .unwrap();
        let t = out.trace().unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(out.delta(), Some(0));
    }

    #[test]
    fn g2_lemma_plain_and_skeleton() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        for mode in [Mode::Plain, Mode::Skeleton] {
            let prover = Prover::new(&p, mode).unwrap();
            let out = prover
                .prove(&w("e1 e0"), &w("r0 r1 e0"), SearchBounds::default())
                .unwrap();
            let t = out.trace().expect("found");
            assert!(prover.replay(t).ok);
            assert_eq!(out.delta(), Some(0));
        }
    }

    #[test]
    fn d4_path_lemma() {
        let p = presentation_for(RootType::D(4)).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        let out = prover
            .prove(&w("E1 E3 E1"), &w("E1"), SearchBounds::default())
            .unwrap();
        let t = out.trace().expect("found");
        let rep = prover.replay(t);
        assert!(rep.ok, "{}", rep.message);
    }

    #[test]
    fn corrupted_trace_fails_replay() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        let out = prover
            .prove(&w("e0 e1 e0"), &w("e0"), SearchBounds::default())
            .unwrap();
        let mut t = out.trace().unwrap().clone();
        assert_eq!(t.total_delta, 2);
        let rep = prover.replay(&t);
        assert!(rep.ok);
        assert_eq!(rep.delta, 2);
        t.steps[0].position += 1;
        assert!(!prover.replay(&t).ok);
    }

    #[test]
    fn pure_group_identity_via_braids() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        assert!(prover.lemmas().iter().any(|l| l.tag == "braid_alt[0,1]"));
        let out = prover
            .prove(&w("(r0 r1)^6"), &w("1"), SearchBounds::default())
            .unwrap();
        let t = out.trace().expect("found");
        assert!(prover.replay(t).ok);
        assert_eq!(t.abstract_depth, 0);
    }

    #[test]
    fn c2_pipeline() {
        let p = presentation_for(RootType::C(2)).unwrap();
        let mut prover = Prover::new(&p, Mode::Skeleton).unwrap();
        let sets = derived_sets_for(&p).unwrap();
        let rep = certify_lemma_pipeline(&mut prover, &sets, SearchBounds::default()).unwrap();
        assert!(rep.all_proved, "{:#?}", rep.items);
    }

    #[test]
    fn symmetric_search() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        let a = w("r1 r0 e1 r0 r1 e0");
        let b = w("e0");
        let ab = prover.prove(&a, &b, SearchBounds::default()).unwrap();
        let ba = prover.prove(&b, &a, SearchBounds::default()).unwrap();
        assert_eq!(ab.delta(), Some(1));
        assert_eq!(ba.delta(), Some(-1));
    }

    #[test]
    fn malformed_word_is_domain_error() {
        let p = presentation_for(RootType::G2Folded).unwrap();
        let prover = Prover::new(&p, Mode::Skeleton).unwrap();
        assert!(matches!(
            prover.prove(&w("e3"), &w("e0"), SearchBounds::default()),
            Err(Error::Domain(_))
        ));
    }
}
