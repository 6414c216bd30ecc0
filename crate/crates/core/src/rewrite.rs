//! The quantic monoid of `(C, <=)`: defining relations, straightening to
//! normal form, parametrizations by directed partitions, and a brute-force
//! congruence oracle that does not depend on any rewriting strategy.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::roots::{CartanDatum, DirectedPartition, MultFn, RootError, RootSystem};

/// Default cap on straightening steps for one normal-form computation.
pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

/// Default cap on the number of words materialized by the congruence oracle
/// for a single weight.
pub const DEFAULT_WORD_LIMIT: u64 = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("no relation list for a_ij = {a_ij}, a_ji = {a_ji}")]
    UnsupportedCartanEntry { a_ij: i64, a_ji: i64 },
    #[error("straightening did not finish within {0} steps")]
    IterationLimitExceeded(usize),
    #[error("operands belong to different root systems")]
    SystemMismatch,
    #[error("weight {weight:?} has {words} words, more than the limit {limit}")]
    BoundExceeded { weight: Vec<i64>, words: u64, limit: u64 },
    #[error("relation {0} is not weight-homogeneous")]
    Inhomogeneous(String),
}

pub type Result<T> = std::result::Result<T, RewriteError>;

/// A word in the generators, stored as generator indices. The empty word is
/// the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Parses labels separated by whitespace and/or commas. A single token
    /// that is not itself a label is split into characters when every label
    /// of the datum is one character long, so `"2232"` also works for B3.
    pub fn parse(datum: &CartanDatum, text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let single_chars = datum.labels().iter().all(|l| l.chars().count() == 1);
        let mut letters = Vec::new();
        for tok in tokens {
            if let Ok(i) = datum.label_index(tok) {
                letters.push(i);
            } else if single_chars {
                for ch in tok.chars() {
                    let s = ch.to_string();
                    letters.push(
                        datum
                            .label_index(&s)
                            .map_err(|_| RewriteError::UnknownLetter(s.clone()))?,
                    );
                }
            } else {
                return Err(RewriteError::UnknownLetter(tok.to_string()));
            }
        }
        Ok(Self(letters))
    }

    /// Parses a list of label strings, one letter each.
    pub fn from_labels<S: AsRef<str>>(datum: &CartanDatum, labels: &[S]) -> Result<Self> {
        labels
            .iter()
            .map(|l| {
                datum
                    .label_index(l.as_ref())
                    .map_err(|_| RewriteError::UnknownLetter(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letter-count vector.
    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0; rank];
        for &l in &self.0 {
            w[l] += 1;
        }
        w
    }

    pub fn labels(&self, datum: &CartanDatum) -> Vec<String> {
        self.0.iter().map(|&i| datum.labels()[i].clone()).collect()
    }

    /// Juxtaposed labels for one-character alphabets, space-separated
    /// otherwise.
    pub fn display(&self, datum: &CartanDatum) -> String {
        let labels = self.labels(datum);
        if datum.labels().iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            labels.join(" ")
        }
    }
}

/// `i^p j^q` for generator indices `i`, `j`.
fn power_word(i: usize, p: u32, j: usize, q: u32) -> Vec<usize> {
    let mut v = vec![i; p as usize];
    v.extend(std::iter::repeat_n(j, q as usize));
    v
}

/// The list `L_ij` selected by `(a_ij, a_ji)`, as pairs `(p, q)`.
pub fn relation_list(a_ij: i64, a_ji: i64) -> Option<&'static [(u32, u32)]> {
    Some(match (a_ij, a_ji) {
        (0, 0) => &[(0, 1), (1, 0)],
        (-1, -1) => &[(0, 1), (1, 1), (1, 0)],
        (-1, -2) => &[(0, 1), (1, 2), (1, 1), (1, 0)],
        (-2, -1) => &[(0, 1), (1, 1), (2, 1), (1, 0)],
        (-1, -3) => &[(0, 1), (1, 3), (1, 2), (1, 2), (2, 3), (1, 1), (1, 0)],
        (-3, -1) => &[(0, 1), (1, 1), (3, 2), (2, 1), (2, 1), (3, 1), (1, 0)],
        _ => return None,
    })
}

/// A finite list of word equations `lhs = rhs`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationSet {
    relations: Vec<(Word, Word)>,
}

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(relations: Vec<(Word, Word)>) -> Self {
        Self { relations }
    }

    pub fn push(&mut self, lhs: Word, rhs: Word) {
        self.relations.push((lhs, rhs));
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// The set without the relation equal (as an unordered pair) to
    /// `lhs = rhs`.
    pub fn without(&self, lhs: &Word, rhs: &Word) -> Self {
        Self {
            relations: self
                .relations
                .iter()
                .filter(|(l, r)| !((l == lhs && r == rhs) || (l == rhs && r == lhs)))
                .cloned()
                .collect(),
        }
    }

    fn check_homogeneous(&self, datum: &CartanDatum) -> Result<()> {
        for (l, r) in &self.relations {
            if l.weight(datum.rank()) != r.weight(datum.rank()) {
                return Err(RewriteError::Inhomogeneous(format!(
                    "{} = {}",
                    l.display(datum),
                    r.display(datum)
                )));
            }
        }
        Ok(())
    }

    /// Framed commutator relations `u[i,j]v = 0` for one pair `i < j`,
    /// i.e. `u i j v = u j i v`.
    pub fn framed_commutators(i: usize, j: usize, a_ij: i64, a_ji: i64) -> Result<Self> {
        // (prefix, suffix) as (p, q) exponent pairs: i^p j^q [i,j] i^r j^s
        type Frame = ((u32, u32), (u32, u32));
        let frames: &[Frame] = match (a_ij, a_ji) {
            (0, 0) => &[((0, 0), (0, 0))],
            (-1, -1) => &[((1, 0), (0, 0)), ((0, 0), (0, 1))],
            (-1, -2) => &[((1, 0), (0, 0)), ((1, 1), (0, 1)), ((0, 0), (0, 2))],
            (-1, -3) => &[
                ((1, 0), (0, 0)),
                ((2, 2), (0, 1)),
                ((1, 1), (0, 2)),
                ((1, 2), (0, 2)),
                ((0, 0), (0, 3)),
                ((1, 1), (1, 3)),
            ],
            (-2, -1) | (-3, -1) => {
                return Ok(Self::framed_commutators(i, j, a_ji, a_ij)?.dual(i, j));
            }
            _ => return Err(RewriteError::UnsupportedCartanEntry { a_ij, a_ji }),
        };
        let mut set = Self::new();
        for &((p, q), (r, s)) in frames {
            let pre = power_word(i, p, j, q);
            let post = power_word(i, r, j, s);
            let mut lhs = pre.clone();
            lhs.extend([i, j]);
            lhs.extend(&post);
            let mut rhs = pre;
            rhs.extend([j, i]);
            rhs.extend(&post);
            set.push(Word(lhs), Word(rhs));
        }
        Ok(set)
    }

    /// Commutation relations `[i^p j^q, i^r j^s] = 0` for consecutive entries
    /// of `L_ij`, plus the extra relation needed in the `G2` cases.
    pub fn commutation_relations(i: usize, j: usize, a_ij: i64, a_ji: i64) -> Result<Self> {
        let list = relation_list(a_ij, a_ji).ok_or(RewriteError::UnsupportedCartanEntry { a_ij, a_ji })?;
        let mut set = Self::new();
        for w in list.windows(2) {
            let (p, q) = w[0];
            let (r, s) = w[1];
            let mut lhs = power_word(i, p, j, q);
            lhs.extend(power_word(i, r, j, s));
            let mut rhs = power_word(i, r, j, s);
            rhs.extend(power_word(i, p, j, q));
            set.push(Word(lhs), Word(rhs));
        }
        match (a_ij, a_ji) {
            (-1, -3) => set.push(Word(vec![i, j, i, j, j, j]), Word(vec![i, j, j, i, j, j])),
            (-3, -1) => set.push(Word(vec![i, i, i, j, i, j]), Word(vec![i, i, j, i, i, j])),
            _ => {}
        }
        Ok(set)
    }

    /// Image under the anti-automorphism that reverses words and swaps the
    /// letters `i` and `j`.
    pub fn dual(&self, i: usize, j: usize) -> Self {
        let flip = |w: &Word| {
            Word(
                w.0.iter()
                    .rev()
                    .map(|&l| {
                        if l == i {
                            j
                        } else if l == j {
                            i
                        } else {
                            l
                        }
                    })
                    .collect(),
            )
        };
        Self {
            relations: self.relations.iter().map(|(l, r)| (flip(l), flip(r))).collect(),
        }
    }
}

/// All relations `i^p j^q i^r j^s = i^(p+r) j^(q+s)` for `i < j` and
/// consecutive `(p,q), (r,s)` in `L_ij`.
pub fn defining_relations(system: &RootSystem) -> Result<RelationSet> {
    defining_relations_for(system.datum())
}

pub fn defining_relations_for(datum: &CartanDatum) -> Result<RelationSet> {
    let n = datum.rank();
    let mut set = RelationSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a_ij, a_ji) = (datum.entry(i, j), datum.entry(j, i));
            let list = relation_list(a_ij, a_ji).ok_or(RewriteError::UnsupportedCartanEntry { a_ij, a_ji })?;
            for w in list.windows(2) {
                let (p, q) = w[0];
                let (r, s) = w[1];
                let mut lhs = power_word(i, p, j, q);
                lhs.extend(power_word(i, r, j, s));
                set.push(Word(lhs), Word(power_word(i, p + r, j, q + s)));
            }
        }
    }
    Ok(set)
}

/// The word `i_1^{d_1} ... i_n^{d_n}` in increasing generator order.
pub fn root_element(system: &RootSystem, d: &[i64]) -> Result<Word> {
    if d.len() != system.rank() {
        return Err(RootError::DimensionMismatch {
            expected: system.rank(),
            found: d.len(),
        }
        .into());
    }
    if d.iter().any(|&v| v < 0) {
        return Err(RootError::NegativeWeight(d.to_vec()).into());
    }
    Ok(Word(
        d.iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect(),
    ))
}

/// An element of the quantic monoid, held as its normal form: the
/// multiplicity function read against the system's directed enumeration.
#[derive(Debug, Clone)]
pub struct MonoidElem {
    system: Arc<RootSystem>,
    nf: MultFn,
}

impl PartialEq for MonoidElem {
    fn eq(&self, other: &Self) -> bool {
        self.nf == other.nf && same_system(&self.system, &other.system)
    }
}

impl Eq for MonoidElem {}

impl Hash for MonoidElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nf.hash(state);
    }
}

pub(crate) fn same_system(a: &Arc<RootSystem>, b: &Arc<RootSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MonoidElem {
    pub fn unit(system: Arc<RootSystem>) -> Self {
        Self {
            system,
            nf: MultFn::new(),
        }
    }

    /// Wraps a multiplicity function, which is its own normal form.
    pub fn from_nf(system: Arc<RootSystem>, nf: MultFn) -> Self {
        Self { system, nf }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn nf(&self) -> &MultFn {
        &self.nf
    }

    pub fn into_nf(self) -> MultFn {
        self.nf
    }

    pub fn weight(&self) -> Vec<i64> {
        self.system.weight(&self.nf)
    }

    pub fn is_unit(&self) -> bool {
        self.nf.is_empty()
    }

    /// The normal-form word: root elements in enumeration order.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for r in self.nf.expand() {
            letters.extend(root_element(&self.system, self.system.root(r)).unwrap().0);
        }
        Word(letters)
    }
}

impl fmt::Display for MonoidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_nf(&self.system, &self.nf))
    }
}

/// Renders a normal form as root elements joined by `·`, e.g. `3·(23)^2`.
pub fn format_nf(system: &RootSystem, nf: &MultFn) -> String {
    if nf.is_empty() {
        return "unit".to_string();
    }
    let datum = system.datum();
    let single = datum.labels().iter().all(|l| l.chars().count() == 1);
    nf.iter()
        .map(|(r, m)| {
            let w = root_element(system, system.root(r)).unwrap();
            let text = w.display(datum);
            let grouped = if w.len() > 1 && (m > 1 || !single) {
                format!("({text})")
            } else {
                text
            };
            if m > 1 {
                format!("{grouped}^{m}")
            } else {
                grouped
            }
        })
        .collect::<Vec<_>>()
        .join("·")
}

/// Runs the straightening loop on a sequence of root blocks (root indices):
/// while some adjacent pair is out of enumeration order, replace it by the
/// canonical decomposition of its total weight laid out in order.
pub fn straighten(system: &RootSystem, mut blocks: Vec<usize>, step_limit: usize) -> Result<MultFn> {
    let mut cache: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut steps = 0usize;
    let mut start = 0usize;
    loop {
        let pos = (start..blocks.len().saturating_sub(1)).find(|&k| blocks[k] > blocks[k + 1]);
        let Some(k) = pos else { break };
        steps += 1;
        if steps > step_limit {
            return Err(RewriteError::IterationLimitExceeded(step_limit));
        }
        let key = (blocks[k], blocks[k + 1]);
        let replacement = match cache.get(&key) {
            Some(r) => r.clone(),
            None => {
                let sum: Vec<i64> = system
                    .root(key.0)
                    .iter()
                    .zip(system.root(key.1))
                    .map(|(a, b)| a + b)
                    .collect();
                let r = system.canonical_decomposition(&sum)?.expand();
                cache.insert(key, r.clone());
                r
            }
        };
        blocks.splice(k..k + 2, replacement);
        // everything before k - 1 is still sorted
        start = k.saturating_sub(1);
    }
    Ok(blocks.into_iter().map(|r| (r, 1)).collect())
}

pub fn normal_form(system: &Arc<RootSystem>, w: &Word) -> Result<MonoidElem> {
    normal_form_with_limit(system, w, DEFAULT_STEP_LIMIT)
}

pub fn normal_form_with_limit(system: &Arc<RootSystem>, w: &Word, step_limit: usize) -> Result<MonoidElem> {
    if let Some(&bad) = w.letters().iter().find(|&&l| l >= system.rank()) {
        return Err(RewriteError::UnknownLetter(bad.to_string()));
    }
    let blocks = w.letters().iter().map(|&i| system.simple_root(i)).collect();
    let nf = straighten(system, blocks, step_limit)?;
    Ok(MonoidElem {
        system: Arc::clone(system),
        nf,
    })
}

/// Product in the monoid. Two single root blocks that already satisfy the
/// straightening hypothesis go straight to the canonical decomposition of
/// their total weight.
pub fn multiply(a: &MonoidElem, b: &MonoidElem) -> Result<MonoidElem> {
    if !same_system(&a.system, &b.system) {
        return Err(RewriteError::SystemMismatch);
    }
    let system = &a.system;
    let single = |m: &MultFn| {
        let mut it = m.iter();
        match (it.next(), it.next()) {
            (Some((r, 1)), None) => Some(r),
            _ => None,
        }
    };
    if let (Some(alpha), Some(beta)) = (single(&a.nf), single(&b.nf)) {
        if system.pairing(beta, alpha) >= 0 {
            let sum: Vec<i64> = system
                .root(alpha)
                .iter()
                .zip(system.root(beta))
                .map(|(x, y)| x + y)
                .collect();
            return Ok(MonoidElem {
                system: Arc::clone(system),
                nf: system.canonical_decomposition(&sum)?,
            });
        }
    }
    let mut blocks = a.nf.expand();
    blocks.extend(b.nf.expand());
    let nf = straighten(system, blocks, DEFAULT_STEP_LIMIT)?;
    Ok(MonoidElem {
        system: Arc::clone(system),
        nf,
    })
}

/// Block weights `sum_{alpha in I_s} a(alpha) alpha` for each block.
pub fn block_weights(system: &RootSystem, partition: &DirectedPartition, a: &MultFn) -> Vec<Vec<i64>> {
    partition
        .blocks()
        .iter()
        .map(|block| {
            let part: MultFn = block.iter().map(|&r| (r, a.get(r))).collect();
            system.weight(&part)
        })
        .collect()
}

/// The element `(sum_{I_1} a(alpha) alpha) ... (sum_{I_k} a(alpha) alpha)`.
pub fn parametrize(system: &Arc<RootSystem>, partition: &DirectedPartition, a: &MultFn) -> Result<MonoidElem> {
    if let Some(r) = a.support().find(|&r| r >= system.num_roots()) {
        return Err(RootError::NotAPartition(format!("root index {r} out of range")).into());
    }
    let mut word = Word::empty();
    for w in block_weights(system, partition, a) {
        word = word.concat(&root_element(system, &w)?);
    }
    normal_form(system, &word)
}

/// Number of distinct words of weight `d` (a multinomial coefficient),
/// saturating at `u64::MAX`.
pub fn word_count(d: &[i64]) -> u64 {
    let mut total: u128 = 1;
    let mut n: u128 = 0;
    for &k in d {
        for t in 1..=k as u128 {
            n += 1;
            total = total * n / t;
            if total > u64::MAX as u128 {
                return u64::MAX;
            }
        }
    }
    total as u64
}

/// All words with letter-count vector `d`, in lexicographic order.
pub fn words_of_weight(d: &[i64]) -> Vec<Word> {
    fn rec(rest: &mut [i64], prefix: &mut Vec<usize>, out: &mut Vec<Word>) {
        if rest.iter().all(|&v| v == 0) {
            out.push(Word(prefix.clone()));
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                prefix.push(i);
                rec(rest, prefix, out);
                prefix.pop();
                rest[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut d.to_vec(), &mut Vec::new(), &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller index (lexicographically smaller word) stays the root
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// For each word of weight `d` (in lexicographic order), the index of the
/// smallest word in its congruence class under `relations`.
fn class_representatives(words: &[Word], relations: &RelationSet) -> Vec<usize> {
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(k, w)| (w.letters(), k)).collect();
    let mut uf = UnionFind::new(words.len());
    let mut buf = Vec::new();
    for (k, w) in words.iter().enumerate() {
        let letters = w.letters();
        for (l, r) in relations.relations() {
            for (from, to) in [(l, r), (r, l)] {
                let (from, to) = (from.letters(), to.letters());
                if from.is_empty() || from.len() > letters.len() {
                    continue;
                }
                for p in 0..=letters.len() - from.len() {
                    if &letters[p..p + from.len()] == from {
                        buf.clear();
                        buf.extend_from_slice(&letters[..p]);
                        buf.extend_from_slice(to);
                        buf.extend_from_slice(&letters[p + from.len()..]);
                        if let Some(&other) = index.get(buf.as_slice()) {
                            uf.union(k, other);
                        }
                    }
                }
            }
        }
    }
    (0..words.len()).map(|k| uf.find(k)).collect()
}

fn check_word_limit(d: &[i64], limit: u64) -> Result<()> {
    let words = word_count(d);
    if words > limit {
        return Err(RewriteError::BoundExceeded {
            weight: d.to_vec(),
            words,
            limit,
        });
    }
    Ok(())
}

/// The congruence classes of all words of weight `d` under the defining
/// relations, found by closure under single relation applications in both
/// directions. Classes are sorted internally and by their smallest word.
pub fn congruence_classes(system: &RootSystem, d: &[i64]) -> Result<Vec<Vec<Word>>> {
    congruence_classes_under(system, &defining_relations(system)?, d, DEFAULT_WORD_LIMIT)
}

pub fn congruence_classes_under(
    system: &RootSystem,
    relations: &RelationSet,
    d: &[i64],
    word_limit: u64,
) -> Result<Vec<Vec<Word>>> {
    if d.len() != system.rank() {
        return Err(RootError::DimensionMismatch {
            expected: system.rank(),
            found: d.len(),
        }
        .into());
    }
    if d.iter().any(|&v| v < 0) {
        return Err(RootError::NegativeWeight(d.to_vec()).into());
    }
    check_word_limit(d, word_limit)?;
    let words = words_of_weight(d);
    let reps = class_representatives(&words, relations);
    let mut classes: Vec<Vec<Word>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (k, rep) in reps.into_iter().enumerate() {
        let c = *slot.entry(rep).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(words[k].clone());
    }
    Ok(classes)
}

/// Outcome of comparing two presentations on all short words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub max_len: usize,
    pub weights_checked: usize,
    /// First weight (in graded lexicographic order) where the congruence
    /// partitions differ, with the class counts under each presentation.
    pub first_difference: Option<(Vec<i64>, usize, usize)>,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Compares the congruences generated by the defining relations and by
/// `alt` on every weight with coordinate sum at most `max_len`.
pub fn check_relation_equivalence(system: &RootSystem, alt: &RelationSet, max_len: usize) -> Result<EquivalenceReport> {
    let base = defining_relations(system)?;
    compare_presentations(system, &base, alt, max_len)
}

pub fn compare_presentations(
    system: &RootSystem,
    left: &RelationSet,
    right: &RelationSet,
    max_len: usize,
) -> Result<EquivalenceReport> {
    left.check_homogeneous(system.datum())?;
    right.check_homogeneous(system.datum())?;
    let weights = system.weights_up_to(max_len as i64);
    for d in &weights {
        check_word_limit(d, DEFAULT_WORD_LIMIT)?;
    }
    let mut checked = 0;
    for d in weights {
        let words = words_of_weight(&d);
        let a = class_representatives(&words, left);
        let b = class_representatives(&words, right);
        checked += 1;
        if a != b {
            let count = |reps: &[usize]| reps.iter().enumerate().filter(|(k, r)| k == *r).count();
            return Ok(EquivalenceReport {
                max_len,
                weights_checked: checked,
                first_difference: Some((d, count(&a), count(&b))),
            });
        }
    }
    Ok(EquivalenceReport {
        max_len,
        weights_checked: checked,
        first_difference: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sys(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(CartanDatum::named(name).unwrap()).unwrap())
    }

    fn w(s: &RootSystem, text: &str) -> Word {
        Word::parse(s.datum(), text).unwrap()
    }

    fn unordered(set: &RelationSet, s: &RootSystem) -> HashSet<(String, String)> {
        set.relations()
            .iter()
            .map(|(l, r)| {
                let (a, b) = (l.display(s.datum()), r.display(s.datum()));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    #[test]
    fn b3_relations() {
        let s = sys("B3");
        let got = unordered(&defining_relations(&s).unwrap(), &s);
        let expected: HashSet<(String, String)> = [
            ("112", "121"),
            ("122", "212"),
            ("13", "31"),
            ("233", "323"),
            ("22233", "23223"),
            ("2223", "2232"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn a1_and_g2_relations() {
        assert!(defining_relations(&sys("A1")).unwrap().is_empty());
        let g2 = sys("G2");
        let rels = defining_relations(&g2).unwrap();
        assert_eq!(rels.len(), 6);
        assert!(rels.relations().contains(&(w(&g2, "122122"), w(&g2, "112222"))));
    }

    #[test]
    fn root_elements() {
        let s = sys("B3");
        assert_eq!(root_element(&s, &[0, 2, 1]).unwrap(), w(&s, "223"));
        assert_eq!(root_element(&s, &[0, 0, 0]).unwrap(), Word::empty());
        assert_eq!(root_element(&s, &[1, 1, 2]).unwrap(), w(&s, "1233"));
        assert!(root_element(&s, &[1, 1]).is_err());
    }

    #[test]
    fn normal_forms() {
        let s = sys("B3");
        let idx = |v: &[i64]| s.root_index(v).unwrap();
        let nf = normal_form(&s, &w(&s, "2232")).unwrap();
        let expected: MultFn = [(idx(&[0, 2, 1]), 1), (idx(&[0, 1, 0]), 1)].into_iter().collect();
        assert_eq!(nf.nf(), &expected);
        assert_eq!(nf.to_string(), "223·2");
        assert!(normal_form(&s, &Word::empty()).unwrap().is_unit());
        let nf = normal_form(&s, &w(&s, "121")).unwrap();
        assert_eq!(nf.to_string(), "12·1");
        let word = w(&s, "2 3 2 2 3");
        let nf = normal_form(&s, &word).unwrap();
        assert_eq!(nf.weight(), vec![0, 3, 2]);
        // the normal-form word lies in the congruence class of the input
        let classes = congruence_classes(&s, &[0, 3, 2]).unwrap();
        let class = classes.iter().find(|c| c.contains(&word)).unwrap();
        assert!(class.contains(&nf.to_word()));
    }

    #[test]
    fn step_limit_is_enforced() {
        let s = sys("B3");
        assert_eq!(
            normal_form_with_limit(&s, &w(&s, "2232"), 0),
            Err(RewriteError::IterationLimitExceeded(0))
        );
    }

    #[test]
    fn products() {
        let s = sys("B3");
        let e = |t: &str| normal_form(&s, &w(&s, t)).unwrap();
        let p = multiply(&e("223"), &e("3")).unwrap();
        assert_eq!(p.to_string(), "(23)^2");
        assert_eq!(multiply(&e("2"), &e("3")).unwrap().to_string(), "23");
        let x = e("2 3 1 2");
        assert_eq!(multiply(&x, &MonoidElem::unit(s.clone())).unwrap(), x);
        let other = sys("A2");
        assert_eq!(
            multiply(&x, &MonoidElem::unit(other)),
            Err(RewriteError::SystemMismatch)
        );
    }

    #[test]
    fn congruence_small() {
        let s = sys("B3");
        assert_eq!(congruence_classes(&s, &[0, 1, 1]).unwrap().len(), 2);
        assert_eq!(congruence_classes(&s, &[0, 1, 0]).unwrap().len(), 1);
        let a2 = sys("A2");
        assert_eq!(congruence_classes(&a2, &[1, 1]).unwrap().len(), 2);
        assert!(matches!(
            congruence_classes_under(&s, &RelationSet::new(), &[3, 3, 3], 10),
            Err(RewriteError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn word_counts() {
        assert_eq!(word_count(&[2, 1, 1]), 12);
        assert_eq!(words_of_weight(&[2, 1, 1]).len(), 12);
        assert_eq!(word_count(&[]), 1);
    }

    #[test]
    fn presentations() {
        let s = sys("B3");
        let base = defining_relations(&s).unwrap();
        assert!(check_relation_equivalence(&s, &base, 6).unwrap().equivalent());
        let weaker = base.without(&w(&s, "2232"), &w(&s, "2223"));
        assert_eq!(weaker.len(), 5);
        let report = check_relation_equivalence(&s, &weaker, 6).unwrap();
        assert!(!report.equivalent());
    }

    #[test]
    fn dual_of_b2_list_is_c2_list() {
        // reversing words and swapping letters maps L(-1,-2) relations onto
        // L(-2,-1) relations
        let c = RelationSet::from_pairs(
            defining_relations_for(&CartanDatum::named("C2").unwrap())
                .unwrap()
                .relations()
                .to_vec(),
        );
        let b = defining_relations_for(&CartanDatum::named("B2").unwrap()).unwrap();
        let norm = |r: &RelationSet| {
            let mut v: Vec<(Word, Word)> = r
                .relations()
                .iter()
                .map(|(l, r)| {
                    if l <= r {
                        (l.clone(), r.clone())
                    } else {
                        (r.clone(), l.clone())
                    }
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(norm(&c.dual(0, 1)), norm(&b));
    }
}
