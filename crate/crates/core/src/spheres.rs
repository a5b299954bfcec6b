//! Monomial presentations of coordinate quotients: relation sets read off
//! partitions, signed congruence tables on words, parametrization of a
//! quotient by the partition families it satisfies, and the translations
//! between group presentations, sphere relation sets, and cube presentations.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::categories::{shape_words, CategorySpec};
use crate::error::{Error, Result};
use crate::groups::{GroupPresentation, Word};
use crate::partition::{enumerate, signature_of_sequence, Partition, Sign};
use crate::tensor::{checked_pow, for_each_assignment};

/// Right-hand side of a monomial relation: a signed word, or collapse to zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MonomialRhs {
    Zero,
    Word { word: Word, sign: Sign },
}

/// A length-preserving identity `lhs = sign * rhs` between monomials in the
/// generators, or an annihilation `lhs = 0`.  Construction normalizes the
/// orientation so the lexicographically smaller side is the lhs; the sign
/// stays on the rhs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialRelation {
    pub lhs: Word,
    pub rhs: MonomialRhs,
}

fn check_letters(w: &Word) -> Result<()> {
    if w.0.contains(&0) {
        return Err(Error::InvalidWord("letters are numbered from 1".into()));
    }
    Ok(())
}

impl MonomialRelation {
    pub fn equality(lhs: Word, rhs: Word, sign: Sign) -> Result<Self> {
        check_letters(&lhs)?;
        check_letters(&rhs)?;
        if lhs.len() != rhs.len() {
            return Err(Error::InvalidWord(format!(
                "monomial relation sides must have equal length, got {} and {}",
                lhs.len(),
                rhs.len()
            )));
        }
        let (lhs, rhs) = if rhs < lhs { (rhs, lhs) } else { (lhs, rhs) };
        Ok(MonomialRelation { lhs, rhs: MonomialRhs::Word { word: rhs, sign } })
    }

    pub fn zero(word: Word) -> Result<Self> {
        check_letters(&word)?;
        Ok(MonomialRelation { lhs: word, rhs: MonomialRhs::Zero })
    }

    /// Holds in the free algebra already.
    pub fn is_trivial(&self) -> bool {
        matches!(&self.rhs, MonomialRhs::Word { word, sign: Sign::Plus } if *word == self.lhs)
    }

    pub fn max_letter(&self) -> u32 {
        let r = match &self.rhs {
            MonomialRhs::Zero => 0,
            MonomialRhs::Word { word, .. } => word.max_letter(),
        };
        self.lhs.max_letter().max(r)
    }
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    lhs: Vec<u32>,
    rhs: RhsRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RhsRepr {
    Tag(String),
    Word(Vec<u32>),
}

impl Serialize for MonomialRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.rhs {
            MonomialRhs::Zero => RelationRepr {
                lhs: self.lhs.0.clone(),
                rhs: RhsRepr::Tag("ZERO".into()),
                sign: None,
            },
            MonomialRhs::Word { word, sign } => RelationRepr {
                lhs: self.lhs.0.clone(),
                rhs: RhsRepr::Word(word.0.clone()),
                sign: Some(sign.as_i64()),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialRelation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RelationRepr::deserialize(deserializer)?;
        match repr.rhs {
            RhsRepr::Tag(tag) => {
                if tag != "ZERO" {
                    return Err(D::Error::custom(format!("unknown rhs tag {tag:?}")));
                }
                MonomialRelation::zero(Word(repr.lhs)).map_err(D::Error::custom)
            }
            RhsRepr::Word(word) => {
                let sign = Sign::from_i64(repr.sign.unwrap_or(1)).map_err(D::Error::custom)?;
                MonomialRelation::equality(Word(repr.lhs), Word(word), sign)
                    .map_err(D::Error::custom)
            }
        }
    }
}

fn vertical_pre(pi: &Partition) -> Result<()> {
    if !pi.is_vertical() {
        return Err(Error::NotVertical);
    }
    Ok(())
}

/// All nontrivial instances `x_upper = x_lower` of a vertical partition over
/// an alphabet of n letters.  One instance per assignment of letters to the
/// blocks, deduplicated through the canonical orientation.
pub fn relations_untwisted(pi: &Partition, n: usize) -> Result<BTreeSet<MonomialRelation>> {
    vertical_pre(pi)?;
    if n == 0 {
        return Err(Error::SizeGuard("alphabet must have at least one letter".into()));
    }
    checked_pow(n, pi.block_count())?;
    let mut out = BTreeSet::new();
    for_each_assignment(pi.block_count(), n, |vals| {
        let letters: Vec<u32> = vals.iter().map(|&v| v as u32 + 1).collect();
        let (lhs, rhs) = shape_words(pi, &letters);
        if lhs != rhs {
            out.insert(MonomialRelation::equality(lhs, rhs, Sign::Plus).expect("equal lengths"));
        }
    });
    Ok(out)
}

/// Signed variant: each instance carries the signature of the kernel the
/// letters induce on the legs.  Instances that are word-for-word trivial with
/// positive sign are dropped; a negative sign on equal words is kept, since it
/// forces the monomial to vanish.
pub fn relations_twisted(pi: &Partition, n: usize) -> Result<BTreeSet<MonomialRelation>> {
    vertical_pre(pi)?;
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    if n == 0 {
        return Err(Error::SizeGuard("alphabet must have at least one letter".into()));
    }
    checked_pow(n, pi.block_count())?;
    let legs = pi.leg_count();
    let mut out = BTreeSet::new();
    for_each_assignment(pi.block_count(), n, |vals| {
        let letters: Vec<u32> = vals.iter().map(|&v| v as u32 + 1).collect();
        let (lhs, rhs) = shape_words(pi, &letters);
        let merged: Vec<u32> = (0..legs).map(|t| vals[pi.label_at(t) as usize] as u32).collect();
        let sign = signature_of_sequence(&merged);
        if lhs != rhs || sign == Sign::Minus {
            let rel = MonomialRelation::equality(lhs, rhs, sign).expect("equal lengths");
            out.insert(rel);
        }
    });
    Ok(out)
}

/// Annihilation of every word of length d+1 in pairwise distinct letters.
pub fn truncation_relations(n: usize, d: usize) -> Result<BTreeSet<MonomialRelation>> {
    if d == 0 || d > n {
        return Err(Error::SizeGuard(format!(
            "truncation degree must satisfy 1 <= d <= n, got d={d}, n={n}"
        )));
    }
    let mut out = BTreeSet::new();
    for tuple in (1..=n as u32).permutations(d + 1) {
        out.insert(MonomialRelation::zero(Word(tuple))?);
    }
    Ok(out)
}

/// A quotient of the free algebra on n self-adjoint generators, presented by
/// the plain relations of the partitions in `untwisted_parts`, the signed
/// relations of those in `twisted_parts`, and an optional annihilation degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereSpec {
    pub n: usize,
    pub untwisted_parts: BTreeSet<Partition>,
    pub twisted_parts: BTreeSet<Partition>,
    pub zero_degree: Option<usize>,
}

impl SphereSpec {
    pub fn new(
        n: usize,
        untwisted_parts: BTreeSet<Partition>,
        twisted_parts: BTreeSet<Partition>,
        zero_degree: Option<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeGuard("alphabet must have at least one letter".into()));
        }
        for pi in &untwisted_parts {
            vertical_pre(pi)?;
        }
        for pi in &twisted_parts {
            vertical_pre(pi)?;
            if !pi.is_even() {
                return Err(Error::NotEven);
            }
        }
        if let Some(d) = zero_degree {
            if d == 0 || d > n {
                return Err(Error::SizeGuard(format!(
                    "truncation degree must satisfy 1 <= d <= n, got d={d}, n={n}"
                )));
            }
        }
        Ok(SphereSpec { n, untwisted_parts, twisted_parts, zero_degree })
    }

    /// No relations at all.
    pub fn free(n: usize) -> Self {
        SphereSpec {
            n,
            untwisted_parts: BTreeSet::new(),
            twisted_parts: BTreeSet::new(),
            zero_degree: None,
        }
    }

    /// Generators commute.
    pub fn commutative(n: usize) -> Self {
        let mut untwisted_parts = BTreeSet::new();
        untwisted_parts.insert(Partition::crossing());
        SphereSpec { n, untwisted_parts, twisted_parts: BTreeSet::new(), zero_degree: None }
    }

    /// Triples reverse: products of any three generators commute with
    /// reversal, the relation of the three-leg crossing.
    pub fn half(n: usize) -> Self {
        let mut untwisted_parts = BTreeSet::new();
        untwisted_parts.insert(Partition::kernel_words("abc", "cba"));
        SphereSpec { n, untwisted_parts, twisted_parts: BTreeSet::new(), zero_degree: None }
    }

    pub fn with_zero_degree(mut self, d: usize) -> Result<Self> {
        if d == 0 || d > self.n {
            return Err(Error::SizeGuard(format!(
                "truncation degree must satisfy 1 <= d <= n, got d={d}, n={}",
                self.n
            )));
        }
        self.zero_degree = Some(d);
        Ok(self)
    }

    /// The full relation set of the presentation.
    pub fn relations(&self) -> Result<BTreeSet<MonomialRelation>> {
        let mut out = BTreeSet::new();
        for pi in &self.untwisted_parts {
            out.extend(relations_untwisted(pi, self.n)?);
        }
        for pi in &self.twisted_parts {
            out.extend(relations_twisted(pi, self.n)?);
        }
        if let Some(d) = self.zero_degree {
            out.extend(truncation_relations(self.n, d)?);
        }
        Ok(out)
    }
}

/// Where a word landed in a congruence table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordClass {
    Zero,
    Class { length: usize, id: usize, sign: Sign },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Zero,
    Class { id: usize, sign: Sign },
}

/// Quotient of the words of each length up to a bound by the least signed
/// congruence generated by a relation set.  Classes are numbered per length in
/// the order of their smallest word; each word carries its sign relative to
/// that smallest representative.  Words that meet an annihilation pattern, or
/// whose class relates a word to minus itself, land in the zero class.
#[derive(Debug, Clone)]
pub struct CongruenceTable {
    n: usize,
    max_len: usize,
    slots: Vec<Vec<Slot>>,
    class_counts: Vec<usize>,
}

struct SignedDsu {
    parent: Vec<usize>,
    sign: Vec<Sign>,
    size: Vec<u32>,
    zero: Vec<bool>,
}

impl SignedDsu {
    fn new(n: usize) -> Self {
        SignedDsu {
            parent: (0..n).collect(),
            sign: vec![Sign::Plus; n],
            size: vec![1; n],
            zero: vec![false; n],
        }
    }

    /// Root of x and the sign of x relative to it, with path compression.
    fn find(&mut self, x: usize) -> (usize, Sign) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        let mut acc = Sign::Plus;
        for &node in path.iter().rev() {
            acc = self.sign[node] * acc;
            self.parent[node] = root;
            self.sign[node] = acc;
        }
        let s = if x == root { Sign::Plus } else { self.sign[x] };
        (root, s)
    }

    /// Record val(a) = s * val(b).  A sign clash inside one class zeroes it.
    fn union(&mut self, a: usize, b: usize, s: Sign) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            if sa != s * sb {
                self.zero[ra] = true;
            }
            return;
        }
        let (keep, drop) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        // val(drop) relative to val(keep); the product is symmetric in ra, rb.
        self.parent[drop] = keep;
        self.sign[drop] = sa * s * sb;
        self.size[keep] += self.size[drop];
        self.zero[keep] |= self.zero[drop];
    }

    fn mark_zero(&mut self, x: usize) {
        let (root, _) = self.find(x);
        self.zero[root] = true;
    }
}

fn word_index(n: usize, letters: &[u32]) -> usize {
    letters.iter().fold(0usize, |acc, &c| acc * n + (c as usize - 1))
}

/// Build the congruence table for all word lengths up to `max_len`.  With
/// `cube_mode` set, adjacent equal pairs additionally float to the front and
/// trade their letter freely, which makes squares of generators behave as one
/// central scalar.
pub fn congruence_close<'a, I>(
    relations: I,
    n: usize,
    max_len: usize,
    cube_mode: bool,
) -> Result<CongruenceTable>
where
    I: IntoIterator<Item = &'a MonomialRelation>,
{
    if n == 0 {
        return Err(Error::SizeGuard("alphabet must have at least one letter".into()));
    }
    let rels: Vec<&MonomialRelation> = relations.into_iter().collect();
    for rel in &rels {
        if rel.max_letter() as usize > n {
            return Err(Error::InvalidWord(format!(
                "relation uses letter {} beyond alphabet size {n}",
                rel.max_letter()
            )));
        }
    }
    let mut slots = Vec::with_capacity(max_len + 1);
    let mut class_counts = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let total = checked_pow(n, len)?;
        let mut dsu = SignedDsu::new(total);
        let mut letters = vec![1u32; len];
        for idx in 0..total {
            for rel in &rels {
                let m = rel.lhs.len();
                if m > len {
                    continue;
                }
                match &rel.rhs {
                    MonomialRhs::Zero => {
                        if (0..=len - m).any(|t| letters[t..t + m] == rel.lhs.0[..]) {
                            dsu.mark_zero(idx);
                        }
                    }
                    MonomialRhs::Word { word, sign } => {
                        for t in 0..=len - m {
                            if letters[t..t + m] == rel.lhs.0[..] {
                                let mut other = letters.clone();
                                other[t..t + m].copy_from_slice(&word.0);
                                dsu.union(idx, word_index(n, &other), *sign);
                            }
                        }
                    }
                }
            }
            if cube_mode && len >= 2 {
                for t in 0..len - 1 {
                    if letters[t] != letters[t + 1] {
                        continue;
                    }
                    let c = letters[t];
                    if t > 0 {
                        let mut moved = Vec::with_capacity(len);
                        moved.push(c);
                        moved.push(c);
                        moved.extend_from_slice(&letters[..t]);
                        moved.extend_from_slice(&letters[t + 2..]);
                        dsu.union(idx, word_index(n, &moved), Sign::Plus);
                    }
                    for c2 in 1..=n as u32 {
                        if c2 != c {
                            let mut swapped = letters.clone();
                            swapped[t] = c2;
                            swapped[t + 1] = c2;
                            dsu.union(idx, word_index(n, &swapped), Sign::Plus);
                        }
                    }
                }
            }
            // Odometer over 1..=n, last position fastest; indexes stay aligned.
            let mut i = len;
            while i > 0 {
                i -= 1;
                letters[i] += 1;
                if letters[i] <= n as u32 {
                    break;
                }
                letters[i] = 1;
            }
        }
        let mut level = Vec::with_capacity(total);
        let mut reps: HashMap<usize, (usize, Sign)> = HashMap::new();
        let mut next_id = 0usize;
        for idx in 0..total {
            let (root, s) = dsu.find(idx);
            if dsu.zero[root] {
                level.push(Slot::Zero);
                continue;
            }
            let (id, offset) = *reps.entry(root).or_insert_with(|| {
                let entry = (next_id, s);
                next_id += 1;
                entry
            });
            level.push(Slot::Class { id, sign: s * offset });
        }
        class_counts.push(next_id);
        slots.push(level);
    }
    Ok(CongruenceTable { n, max_len, slots, class_counts })
}

impl CongruenceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn level(&self, len: usize) -> Result<&[Slot]> {
        self.slots
            .get(len)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::SizeGuard(format!("length {len} beyond table bound {}", self.max_len)))
    }

    pub fn lookup(&self, w: &Word) -> Result<WordClass> {
        check_letters(w)?;
        if w.max_letter() as usize > self.n {
            return Err(Error::InvalidWord(format!(
                "letter {} beyond alphabet size {}",
                w.max_letter(),
                self.n
            )));
        }
        let len = w.len();
        let level = self.level(len)?;
        Ok(match level[word_index(self.n, &w.0)] {
            Slot::Zero => WordClass::Zero,
            Slot::Class { id, sign } => WordClass::Class { length: len, id, sign },
        })
    }

    /// Number of nonzero classes at one length.
    pub fn class_count(&self, len: usize) -> Result<usize> {
        self.level(len)?;
        Ok(self.class_counts[len])
    }

    pub fn zero_word_count(&self, len: usize) -> Result<usize> {
        Ok(self.level(len)?.iter().filter(|s| matches!(s, Slot::Zero)).count())
    }

    /// The nonzero classes at one length, each as signed words in index order.
    pub fn classes(&self, len: usize) -> Result<Vec<Vec<(Word, Sign)>>> {
        let level = self.level(len)?;
        let mut out: Vec<Vec<(Word, Sign)>> = vec![Vec::new(); self.class_counts[len]];
        let mut letters = vec![1u32; len];
        for slot in level {
            if let Slot::Class { id, sign } = slot {
                out[*id].push((Word(letters.clone()), *sign));
            }
            let mut i = len;
            while i > 0 {
                i -= 1;
                letters[i] += 1;
                if letters[i] <= self.n as u32 {
                    break;
                }
                letters[i] = 1;
            }
        }
        Ok(out)
    }

    /// Does the relation hold in this quotient?
    pub fn holds(&self, rel: &MonomialRelation) -> Result<bool> {
        match &rel.rhs {
            MonomialRhs::Zero => Ok(self.lookup(&rel.lhs)? == WordClass::Zero),
            MonomialRhs::Word { word, sign } => {
                match (self.lookup(&rel.lhs)?, self.lookup(word)?) {
                    (WordClass::Zero, WordClass::Zero) => Ok(true),
                    (WordClass::Zero, _) | (_, WordClass::Zero) => Ok(false),
                    (
                        WordClass::Class { id: li, sign: ls, .. },
                        WordClass::Class { id: ri, sign: rs, .. },
                    ) => Ok(li == ri && ls == *sign * rs),
                }
            }
        }
    }
}

/// Does every instance of the partition's relation hold in the quotient
/// presented by `spec`?  The congruence is taken on monomials alone; for
/// alphabets with at least twice as many letters as the word length this
/// agrees with the full coordinate quotient, below that it answers for the
/// monomial quotient itself.
pub fn relation_holds(
    spec: &SphereSpec,
    pi: &Partition,
    twisted: bool,
    length_bound: usize,
) -> Result<bool> {
    let instances =
        if twisted { relations_twisted(pi, spec.n)? } else { relations_untwisted(pi, spec.n)? };
    let k = pi.upper_count();
    if k > length_bound {
        return Err(Error::SizeGuard(format!("word length {k} beyond bound {length_bound}")));
    }
    if instances.is_empty() {
        return Ok(true);
    }
    let table = congruence_close(&spec.relations()?, spec.n, k, false)?;
    for rel in &instances {
        if !table.holds(rel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each word length k up to k_max, the vertical partitions whose plain
/// respectively signed relations hold in the quotient.  `faithful[k-1]` marks
/// the lengths where the alphabet is large enough (n >= 2k) for the monomial
/// congruence to pin down the answer independently of n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereParametrization {
    pub k_max: usize,
    pub untwisted: Vec<Vec<Partition>>,
    pub twisted: Vec<Vec<Partition>>,
    pub faithful: Vec<bool>,
}

pub fn standard_parametrization(spec: &SphereSpec, k_max: usize) -> Result<SphereParametrization> {
    if k_max == 0 || k_max > 4 {
        return Err(Error::SizeGuard(format!("k_max must lie in 1..=4, got {k_max}")));
    }
    let rels = spec.relations()?;
    let mut untwisted = Vec::with_capacity(k_max);
    let mut twisted = Vec::with_capacity(k_max);
    let mut faithful = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let table = congruence_close(&rels, spec.n, k, false)?;
        let mut plain = Vec::new();
        let mut signed = Vec::new();
        for pi in enumerate(k, k)?.filter(|pi| pi.is_vertical()) {
            let mut plain_ok = true;
            for rel in &relations_untwisted(&pi, spec.n)? {
                if !table.holds(rel)? {
                    plain_ok = false;
                    break;
                }
            }
            if plain_ok {
                plain.push(pi.clone());
            }
            let mut signed_ok = true;
            for rel in &relations_twisted(&pi, spec.n)? {
                if !table.holds(rel)? {
                    signed_ok = false;
                    break;
                }
            }
            if signed_ok {
                signed.push(pi);
            }
        }
        untwisted.push(plain);
        twisted.push(signed);
        faithful.push(spec.n >= 2 * k);
    }
    Ok(SphereParametrization { k_max, untwisted, twisted, faithful })
}

/// Union of the plain relations of every vertical member of a family, over
/// square shapes with at most k_max upper legs.
pub fn sphere_of_category(
    spec: &CategorySpec,
    n: usize,
    k_max: usize,
) -> Result<BTreeSet<MonomialRelation>> {
    let mut out = BTreeSet::new();
    for k in 1..=k_max {
        for pi in spec.members_of_shape(k, k)? {
            if pi.is_vertical() {
                out.extend(relations_untwisted(&pi, n)?);
            }
        }
    }
    Ok(out)
}

/// The plain and signed monomial relation sets read off a group presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpherePresentation {
    pub untwisted: BTreeSet<MonomialRelation>,
    pub twisted: BTreeSet<MonomialRelation>,
}

fn degree_balanced(lhs: &Word, rhs: &Word) -> bool {
    let mut counts: HashMap<u32, i64> = HashMap::new();
    for &c in &lhs.0 {
        *counts.entry(c).or_default() += 1;
    }
    for &c in &rhs.0 {
        *counts.entry(c).or_default() -= 1;
    }
    counts.values().all(|&v| v == 0)
}

/// Reread each group relation as a monomial identity; the twisted variant
/// signs it by the signature of the kernel of its two sides.  Requires every
/// relation to use each generator equally often on both sides, which also
/// makes the kernels even.
pub fn sphere_presentation_from_group(pres: &GroupPresentation) -> Result<SpherePresentation> {
    pres.validate()?;
    let mut untwisted = BTreeSet::new();
    let mut twisted = BTreeSet::new();
    for (lhs, rhs) in &pres.relations {
        if !degree_balanced(lhs, rhs) {
            return Err(Error::InvalidPresentation(format!(
                "relation {lhs} = {rhs} is not degree-balanced; normalize the presentation first"
            )));
        }
        let plain = MonomialRelation::equality(lhs.clone(), rhs.clone(), Sign::Plus)?;
        if !plain.is_trivial() {
            untwisted.insert(plain);
        }
        let sign = Partition::kernel(&lhs.0, &rhs.0).signature()?;
        let signed = MonomialRelation::equality(lhs.clone(), rhs.clone(), sign)?;
        if !signed.is_trivial() {
            twisted.insert(signed);
        }
    }
    Ok(SpherePresentation { untwisted, twisted })
}

/// Inverse direction: plain positive relations become group relations.
pub fn group_presentation_from_sphere(
    relations: &BTreeSet<MonomialRelation>,
    generators: usize,
) -> Result<GroupPresentation> {
    let mut out = Vec::with_capacity(relations.len());
    for rel in relations {
        match &rel.rhs {
            MonomialRhs::Word { word, sign: Sign::Plus } => {
                out.push((rel.lhs.clone(), word.clone()));
            }
            MonomialRhs::Word { .. } => {
                return Err(Error::InvalidPresentation(
                    "a signed relation has no group counterpart".into(),
                ));
            }
            MonomialRhs::Zero => {
                return Err(Error::InvalidPresentation(
                    "an annihilation relation has no group counterpart".into(),
                ));
            }
        }
    }
    GroupPresentation::new(generators, out)
}

/// A sphere relation set with squares of generators marked as one central
/// scalar.  Congruence tables for a cube presentation run in cube mode; the
/// marking carries no relations of its own and is dropped when reading the
/// sphere relations back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubePresentation {
    pub n: usize,
    pub relations: BTreeSet<MonomialRelation>,
    pub scalar_squares: bool,
}

pub fn cube_presentation_from_sphere(
    relations: &BTreeSet<MonomialRelation>,
    n: usize,
) -> CubePresentation {
    CubePresentation { n, relations: relations.clone(), scalar_squares: true }
}

impl CubePresentation {
    pub fn sphere_relations(&self) -> &BTreeSet<MonomialRelation> {
        &self.relations
    }

    pub fn table(&self, max_len: usize) -> Result<CongruenceTable> {
        congruence_close(&self.relations, self.n, max_len, self.scalar_squares)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::NamedCategory;

    fn kw(upper: &str, lower: &str) -> Partition {
        Partition::kernel_words(upper, lower)
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn eq_rel(lhs: &str, rhs: &str, sign: i64) -> MonomialRelation {
        MonomialRelation::equality(w(lhs), w(rhs), Sign::from_i64(sign).unwrap()).unwrap()
    }

    fn zero_rel(word: &str) -> MonomialRelation {
        MonomialRelation::zero(w(word)).unwrap()
    }

    #[test]
    fn untwisted_relations_pinned() {
        let eta = kw("aab", "baa");
        let got = relations_untwisted(&eta, 2).unwrap();
        let expected: BTreeSet<_> =
            [eq_rel("1,1,2", "2,1,1", 1), eq_rel("1,2,2", "2,2,1", 1)].into_iter().collect();
        assert_eq!(got, expected);

        assert!(relations_untwisted(&kw("aba", "aba"), 3).unwrap().is_empty());
        assert!(relations_untwisted(&Partition::identity_pair(), 4).unwrap().is_empty());

        let got = relations_untwisted(&Partition::crossing(), 2).unwrap();
        let expected: BTreeSet<_> = [eq_rel("1,2", "2,1", 1)].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn untwisted_rejects_nonvertical() {
        assert!(matches!(relations_untwisted(&Partition::cap(), 2), Err(Error::NotVertical)));
        assert!(matches!(relations_untwisted(&kw("ab", "aa"), 2), Err(Error::NotVertical)));
    }

    #[test]
    fn twisted_relations_pinned() {
        let got = relations_twisted(&Partition::crossing(), 2).unwrap();
        let expected: BTreeSet<_> = [eq_rel("1,2", "2,1", -1)].into_iter().collect();
        assert_eq!(got, expected);

        let rho = kw("aab", "aba");
        let got = relations_twisted(&rho, 2).unwrap();
        let expected: BTreeSet<_> =
            [eq_rel("1,1,2", "1,2,1", -1), eq_rel("2,1,2", "2,2,1", -1)].into_iter().collect();
        assert_eq!(got, expected);

        let eta = kw("aab", "baa");
        assert_eq!(relations_twisted(&eta, 3).unwrap(), relations_untwisted(&eta, 3).unwrap());
    }

    #[test]
    fn truncation_relations_pinned() {
        let got = truncation_relations(2, 1).unwrap();
        let expected: BTreeSet<_> = [zero_rel("1,2"), zero_rel("2,1")].into_iter().collect();
        assert_eq!(got, expected);
        assert!(truncation_relations(2, 2).unwrap().is_empty());
        assert_eq!(truncation_relations(3, 2).unwrap().len(), 6);
        assert!(truncation_relations(3, 0).is_err());
        assert!(truncation_relations(2, 3).is_err());
    }

    #[test]
    fn relation_json_round_trip() {
        let rel = eq_rel("1,1,2", "2,1,1", 1);
        let json = serde_json::to_string(&rel).unwrap();
        assert_eq!(json, r#"{"lhs":[1,1,2],"rhs":[2,1,1],"sign":1}"#);
        assert_eq!(serde_json::from_str::<MonomialRelation>(&json).unwrap(), rel);

        let rel = zero_rel("1,2");
        let json = serde_json::to_string(&rel).unwrap();
        assert_eq!(json, r#"{"lhs":[1,2],"rhs":"ZERO"}"#);
        assert_eq!(serde_json::from_str::<MonomialRelation>(&json).unwrap(), rel);

        let signed: MonomialRelation =
            serde_json::from_str(r#"{"lhs":[1,2],"rhs":[2,1],"sign":-1}"#).unwrap();
        assert_eq!(signed, eq_rel("1,2", "2,1", -1));

        assert!(serde_json::from_str::<MonomialRelation>(r#"{"lhs":[1],"rhs":[1,2],"sign":1}"#)
            .is_err());
        assert!(serde_json::from_str::<MonomialRelation>(r#"{"lhs":[1,2],"rhs":[2,1],"sign":3}"#)
            .is_err());
        assert!(serde_json::from_str::<MonomialRelation>(r#"{"lhs":[1,2],"rhs":"ZERRO"}"#)
            .is_err());
    }

    #[test]
    fn commutative_congruence_counts_multisets() {
        let rels = SphereSpec::commutative(2).relations().unwrap();
        let table = congruence_close(&rels, 2, 3, false).unwrap();
        // Classes of length three are the four letter multisets.
        assert_eq!(table.class_count(3).unwrap(), 4);
        assert_eq!(table.lookup(&w("1,2,1")).unwrap(), table.lookup(&w("1,1,2")).unwrap());
        assert_eq!(table.zero_word_count(3).unwrap(), 0);
    }

    #[test]
    fn anticommutation_tracks_signs() {
        let rels: BTreeSet<_> = [eq_rel("1,2", "2,1", -1)].into_iter().collect();
        let table = congruence_close(&rels, 2, 2, false).unwrap();
        assert_eq!(table.class_count(2).unwrap(), 3);
        let a = table.lookup(&w("1,2")).unwrap();
        let b = table.lookup(&w("2,1")).unwrap();
        match (a, b) {
            (
                WordClass::Class { id: ia, sign: sa, .. },
                WordClass::Class { id: ib, sign: sb, .. },
            ) => {
                assert_eq!(ia, ib);
                assert_ne!(sa, sb);
            }
            other => panic!("expected two classes, got {other:?}"),
        }
        assert!(table.holds(&eq_rel("1,2", "2,1", -1)).unwrap());
        assert!(!table.holds(&eq_rel("1,2", "2,1", 1)).unwrap());
    }

    #[test]
    fn sign_conflict_collapses_to_zero() {
        let rels: BTreeSet<_> =
            [eq_rel("1,2", "2,1", -1), eq_rel("1,2", "2,1", 1)].into_iter().collect();
        let table = congruence_close(&rels, 2, 2, false).unwrap();
        assert_eq!(table.lookup(&w("1,2")).unwrap(), WordClass::Zero);
        assert_eq!(table.lookup(&w("2,1")).unwrap(), WordClass::Zero);
        assert_eq!(table.class_count(2).unwrap(), 2);
        assert_eq!(table.zero_word_count(2).unwrap(), 2);
    }

    #[test]
    fn zero_patterns_absorb_longer_words() {
        let rels = truncation_relations(2, 1).unwrap();
        let table = congruence_close(&rels, 2, 3, false).unwrap();
        assert_eq!(table.lookup(&w("1,2")).unwrap(), WordClass::Zero);
        // Only the two constant words survive at length three.
        assert_eq!(table.class_count(3).unwrap(), 2);
        assert_eq!(table.zero_word_count(3).unwrap(), 6);
    }

    #[test]
    fn cube_mode_identifies_squares() {
        let table = congruence_close(&BTreeSet::new(), 2, 4, true).unwrap();
        assert_eq!(table.class_count(2).unwrap(), 3);
        assert_eq!(table.lookup(&w("1,1")).unwrap(), table.lookup(&w("2,2")).unwrap());
        assert_ne!(table.lookup(&w("1,2")).unwrap(), table.lookup(&w("1,1")).unwrap());
        // Words of length four that cancel to the empty word form one class.
        let c = table.lookup(&w("1,1,1,1")).unwrap();
        for v in ["1,1,2,2", "2,2,1,1", "1,2,2,1", "2,1,1,2", "2,2,2,2"] {
            assert_eq!(table.lookup(&w(v)).unwrap(), c, "{v}");
        }
        assert_ne!(table.lookup(&w("1,2,1,2")).unwrap(), c);
    }

    #[test]
    fn cube_of_commutative_counts_parity_classes() {
        let rels = SphereSpec::commutative(2).relations().unwrap();
        let cube = cube_presentation_from_sphere(&rels, 2);
        let table = cube.table(2).unwrap();
        let mut parities = BTreeSet::new();
        for len in 0..=2usize {
            for class in table.classes(len).unwrap() {
                let mut seen = BTreeSet::new();
                for (word, _) in &class {
                    let mut parity = [0u32; 2];
                    for &c in &word.0 {
                        parity[c as usize - 1] ^= 1;
                    }
                    seen.insert(parity);
                }
                // Every word in a class carries the same exponent parity.
                assert_eq!(seen.len(), 1);
                parities.extend(seen);
            }
        }
        assert_eq!(parities.len(), 4);
    }

    #[test]
    fn half_cube_separates_reversed_triples() {
        let rels = SphereSpec::half(2).relations().unwrap();
        let cube = cube_presentation_from_sphere(&rels, 2);
        let table = cube.table(3).unwrap();
        assert_eq!(table.class_count(2).unwrap(), 3);
        assert_eq!(table.class_count(3).unwrap(), 4);
        assert_eq!(table.lookup(&w("1,1,2")).unwrap(), table.lookup(&w("2,2,2")).unwrap());
        assert_eq!(table.lookup(&w("1,1,1")).unwrap(), table.lookup(&w("1,2,2")).unwrap());
        assert_ne!(table.lookup(&w("1,2,1")).unwrap(), table.lookup(&w("1,1,1")).unwrap());
        assert_ne!(table.lookup(&w("1,2")).unwrap(), table.lookup(&w("2,1")).unwrap());
    }

    #[test]
    fn group_sphere_round_trip() {
        let abelian = GroupPresentation::abelian(3);
        let sphere = sphere_presentation_from_group(&abelian).unwrap();
        assert_eq!(sphere.untwisted.len(), 3);
        assert!(sphere.twisted.iter().all(|rel| matches!(
            rel.rhs,
            MonomialRhs::Word { sign: Sign::Minus, .. }
        )));
        let back = group_presentation_from_sphere(&sphere.untwisted, 3).unwrap();
        let got: BTreeSet<_> = back.relations.into_iter().collect();
        let expected: BTreeSet<_> = abelian.relations.iter().cloned().collect();
        assert_eq!(got, expected);

        let half = GroupPresentation::half(2);
        let sphere = sphere_presentation_from_group(&half).unwrap();
        assert_eq!(sphere.untwisted, relations_untwisted(&kw("aab", "baa"), 2).unwrap());

        let free = GroupPresentation::free(3);
        let sphere = sphere_presentation_from_group(&free).unwrap();
        assert!(sphere.untwisted.is_empty() && sphere.twisted.is_empty());
    }

    #[test]
    fn group_sphere_twisted_signs_follow_kernels() {
        let half = GroupPresentation::half(3);
        let sphere = sphere_presentation_from_group(&half).unwrap();
        for rel in &sphere.twisted {
            let MonomialRhs::Word { word, sign } = &rel.rhs else {
                panic!("unexpected zero relation")
            };
            let expected = Partition::kernel(&rel.lhs.0, &word.0).signature().unwrap();
            assert_eq!(*sign, expected);
        }
        // The all-distinct reversal is signed, the repeated-letter ones not.
        assert!(sphere.twisted.contains(&eq_rel("1,2,3", "3,2,1", -1)));
        assert!(sphere.twisted.contains(&eq_rel("1,1,2", "2,1,1", 1)));
    }

    #[test]
    fn unbalanced_presentation_is_rejected() {
        let pres = GroupPresentation::new(2, vec![(w("1,2,1"), w("2"))]).unwrap();
        assert!(matches!(
            sphere_presentation_from_group(&pres),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn sphere_to_group_rejects_signed_and_zero() {
        let signed: BTreeSet<_> = [eq_rel("1,2", "2,1", -1)].into_iter().collect();
        assert!(group_presentation_from_sphere(&signed, 2).is_err());
        let zero: BTreeSet<_> = [zero_rel("1,2")].into_iter().collect();
        assert!(group_presentation_from_sphere(&zero, 2).is_err());
    }

    #[test]
    fn cube_round_trip_drops_annotation() {
        let rels = SphereSpec::commutative(3).relations().unwrap();
        let cube = cube_presentation_from_sphere(&rels, 3);
        assert!(cube.scalar_squares);
        assert_eq!(cube.sphere_relations(), &rels);
    }

    #[test]
    fn relation_holds_pinned() {
        let commutative = SphereSpec::commutative(3);
        assert!(relation_holds(&commutative, &Partition::crossing(), false, 4).unwrap());
        assert!(!relation_holds(&commutative, &Partition::crossing(), true, 4).unwrap());
        assert!(relation_holds(&commutative, &kw("aab", "baa"), false, 4).unwrap());
        let three = kw("abc", "cba");
        assert!(relation_holds(&commutative, &three, false, 4).unwrap());
        assert!(!relation_holds(&commutative, &three, true, 4).unwrap());

        let free = SphereSpec::free(3);
        assert!(!relation_holds(&free, &Partition::crossing(), false, 4).unwrap());
        assert!(relation_holds(&free, &Partition::identity_pair(), false, 4).unwrap());

        // With degree-two truncation the all-distinct instances vanish and the
        // signed three-letter reversal holds.
        let truncated = SphereSpec::commutative(3).with_zero_degree(2).unwrap();
        assert!(relation_holds(&truncated, &three, true, 4).unwrap());
        assert!(!relation_holds(&commutative, &three, true, 4).unwrap());

        assert!(matches!(
            relation_holds(&commutative, &three, false, 2),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn parametrization_tiny_cases() {
        let par = standard_parametrization(&SphereSpec::commutative(2), 1).unwrap();
        assert_eq!(par.untwisted[0], vec![Partition::identity_pair()]);
        assert_eq!(par.twisted[0], vec![Partition::identity_pair()]);
        assert_eq!(par.faithful, vec![true]);

        // With no relations, exactly the mirror-symmetric partitions hold.
        let par = standard_parametrization(&SphereSpec::free(4), 2).unwrap();
        for k in 1..=2usize {
            let mirror: Vec<Partition> = enumerate(k, k)
                .unwrap()
                .filter(|pi| {
                    pi.is_vertical() && {
                        let letters: Vec<u32> = (0..pi.block_count() as u32).collect();
                        let (u, l) = shape_words(pi, &letters);
                        u == l
                    }
                })
                .collect();
            assert_eq!(par.untwisted[k - 1], mirror);
        }
        assert_eq!(par.faithful, vec![true, true]);

        assert!(standard_parametrization(&SphereSpec::free(2), 5).is_err());
    }

    #[test]
    fn sphere_of_category_pinned() {
        let pairings = CategorySpec::named(NamedCategory::P2);
        let got = sphere_of_category(&pairings, 2, 2).unwrap();
        let expected: BTreeSet<_> = [eq_rel("1,2", "2,1", 1)].into_iter().collect();
        assert_eq!(got, expected);

        let nc_even = CategorySpec::named(NamedCategory::NCEven);
        assert!(sphere_of_category(&nc_even, 3, 2).unwrap().is_empty());
    }

    #[test]
    fn spec_validation() {
        assert!(SphereSpec::new(0, BTreeSet::new(), BTreeSet::new(), None).is_err());
        let mut bad = BTreeSet::new();
        bad.insert(Partition::cap());
        assert!(SphereSpec::new(2, bad, BTreeSet::new(), None).is_err());
        assert!(SphereSpec::free(2).with_zero_degree(3).is_err());
        let spec = SphereSpec::commutative(2).with_zero_degree(1).unwrap();
        let rels = spec.relations().unwrap();
        assert!(rels.contains(&zero_rel("1,2")));
        assert!(rels.contains(&eq_rel("1,2", "2,1", 1)));
        assert_eq!(rels.len(), 3);
    }
}
