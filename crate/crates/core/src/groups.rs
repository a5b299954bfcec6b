//! Word problems in reflection groups: quotients of the free product of
//! order-two generators, given by presentations or by fast built-in oracles.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on BFS states before a search gives up.
pub const DEFAULT_NODE_CAP: usize = 2_000_000;

/// A word in the generators, letters numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Parse "1,2,1"; the empty string is the empty word.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&x| x > 0)
                    .ok_or_else(|| Error::InvalidWord(format!("bad letter {part:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Word(letters))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Three-valued answer of a bounded decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Decision::Yes => write!(f, "yes"),
            Decision::No => write!(f, "no"),
            Decision::Undecided => write!(f, "undecided"),
        }
    }
}

/// Presentation on generators g_1..g_N; every generator squares to the
/// identity implicitly, the listed relations come on top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relations: Vec<(Word, Word)>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relations: Vec<(Word, Word)>) -> Result<Self> {
        let pres = GroupPresentation { generators, relations };
        pres.validate()?;
        Ok(pres)
    }

    pub fn validate(&self) -> Result<()> {
        for (lhs, rhs) in &self.relations {
            for w in [lhs, rhs] {
                if w.0.iter().any(|&x| x == 0 || x as usize > self.generators) {
                    return Err(Error::InvalidPresentation(format!(
                        "letter out of range in relation {lhs} = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// No relations: the free product of N order-two groups.
    pub fn free(generators: usize) -> Self {
        GroupPresentation { generators, relations: Vec::new() }
    }

    /// All generators commute.
    pub fn abelian(generators: usize) -> Self {
        let mut relations = Vec::new();
        for i in 1..=generators as u32 {
            for j in (i + 1)..=generators as u32 {
                relations.push((Word(vec![i, j]), Word(vec![j, i])));
            }
        }
        GroupPresentation { generators, relations }
    }

    /// Every length-three product can be reversed.
    pub fn half(generators: usize) -> Self {
        let mut relations = Vec::new();
        for a in 1..=generators as u32 {
            for c in (a + 1)..=generators as u32 {
                for b in 1..=generators as u32 {
                    relations.push((Word(vec![a, b, c]), Word(vec![c, b, a])));
                }
            }
        }
        GroupPresentation { generators, relations }
    }

    /// Every relation keeps each generator's letter count mod 2.
    pub fn parity_preserving(&self) -> bool {
        self.relations.iter().all(|(l, r)| parity_vector(l) == parity_vector(r))
    }

    /// True when the relation set, as a set of word pairs, is fixed by every
    /// transposition of generator indices.  A purely syntactic test: it can
    /// miss semantic symmetry but never claims it falsely.
    pub fn symmetric_under_transpositions(&self) -> bool {
        let canon = |rels: &[(Word, Word)]| -> HashSet<(Word, Word)> {
            rels.iter()
                .map(|(l, r)| {
                    if l <= r {
                        (l.clone(), r.clone())
                    } else {
                        (r.clone(), l.clone())
                    }
                })
                .collect()
        };
        let base = canon(&self.relations);
        for i in 1..=self.generators as u32 {
            for j in (i + 1)..=self.generators as u32 {
                let swap = |w: &Word| {
                    Word(
                        w.0.iter()
                            .map(|&x| if x == i { j } else if x == j { i } else { x })
                            .collect(),
                    )
                };
                let image: Vec<(Word, Word)> =
                    self.relations.iter().map(|(l, r)| (swap(l), swap(r))).collect();
                if canon(&image) != base {
                    return false;
                }
            }
        }
        true
    }
}

fn parity_vector(w: &Word) -> HashMap<u32, bool> {
    let mut par: HashMap<u32, bool> = HashMap::new();
    for &x in &w.0 {
        let e = par.entry(x).or_insert(false);
        *e = !*e;
    }
    par.retain(|_, odd| *odd);
    par
}

/// Delete adjacent equal letters until none remain; the result is unique.
pub fn reduce_free(w: &Word) -> Word {
    let mut stack: Vec<u32> = Vec::with_capacity(w.len());
    for &x in &w.0 {
        if stack.last() == Some(&x) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    Word(stack)
}

pub fn equal_free(w: &Word, v: &Word) -> bool {
    reduce_free(w) == reduce_free(v)
}

/// Equality in the product of N copies of the order-two group.
pub fn equal_abelian(w: &Word, v: &Word) -> bool {
    parity_vector(w) == parity_vector(v)
}

enum BfsOutcome {
    Met,
    Closed,
    Capped,
}

/// Grow both equivalence classes breadth-first under `expand`, up to the
/// node cap.  Met: the classes intersect.  Closed: one class is fully
/// explored and the other word is not in it.  A fully explored class that
/// misses the other word already certifies disjointness, since the meeting
/// word would have been generated on that side.
fn bidirectional_search(
    w: &Word,
    v: &Word,
    cap: usize,
    mut expand: impl FnMut(&[u32], &mut Vec<Vec<u32>>),
) -> BfsOutcome {
    if w == v {
        return BfsOutcome::Met;
    }
    let mut seen: [HashSet<Vec<u32>>; 2] = [HashSet::new(), HashSet::new()];
    let mut queue: [VecDeque<Vec<u32>>; 2] = [VecDeque::new(), VecDeque::new()];
    for (side, word) in [w, v].into_iter().enumerate() {
        seen[side].insert(word.0.clone());
        queue[side].push_back(word.0.clone());
    }
    let mut nodes = 2usize;
    let mut children = Vec::new();
    loop {
        // Expand the smaller frontier to keep the search balanced.
        let side = usize::from(queue[1].len() < queue[0].len());
        let Some(cur) = queue[side].pop_front() else {
            return BfsOutcome::Closed;
        };
        children.clear();
        expand(&cur, &mut children);
        for child in children.drain(..) {
            if seen[1 - side].contains(&child) {
                return BfsOutcome::Met;
            }
            if seen[side].insert(child.clone()) {
                nodes += 1;
                if nodes > cap {
                    return BfsOutcome::Capped;
                }
                queue[side].push_back(child);
            }
        }
    }
}

fn push_cancellations(cur: &[u32], out: &mut Vec<Vec<u32>>) {
    for t in 1..cur.len() {
        if cur[t - 1] == cur[t] {
            let mut next = Vec::with_capacity(cur.len() - 2);
            next.extend_from_slice(&cur[..t - 1]);
            next.extend_from_slice(&cur[t + 1..]);
            out.push(next);
        }
    }
}

fn push_pair_insertions(cur: &[u32], alphabet: &[u32], budget: usize, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 2 > budget {
        return;
    }
    for t in 0..=cur.len() {
        for &g in alphabet {
            let mut next = Vec::with_capacity(cur.len() + 2);
            next.extend_from_slice(&cur[..t]);
            next.push(g);
            next.push(g);
            next.extend_from_slice(&cur[t..]);
            out.push(next);
        }
    }
}

/// Equality in the quotient where every length-three product reverses.
/// Bounded rewriting: adjacent cancellations and insertions plus reversal of
/// any three consecutive letters, within length budget max(|w|,|v|)+4.
/// Insertions only use letters of the endpoint words; a derivation through a
/// foreign letter retracts onto one without it by identifying that letter
/// with any endpoint letter, the move set being stable under such
/// identifications.
pub fn equal_half(w: &Word, v: &Word) -> Decision {
    equal_half_capped(w, v, DEFAULT_NODE_CAP)
}

pub fn equal_half_capped(w: &Word, v: &Word, cap: usize) -> Decision {
    let budget = w.len().max(v.len()) + 4;
    let mut alphabet: Vec<u32> = w.0.iter().chain(&v.0).copied().collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let outcome = bidirectional_search(w, v, cap, |cur, out| {
        push_cancellations(cur, out);
        push_pair_insertions(cur, &alphabet, budget, out);
        for t in 0..cur.len().saturating_sub(2) {
            if cur[t] != cur[t + 2] {
                let mut next = cur.to_vec();
                next.swap(t, t + 2);
                out.push(next);
            }
        }
    });
    match outcome {
        BfsOutcome::Met => Decision::Yes,
        BfsOutcome::Closed => Decision::No,
        BfsOutcome::Capped => Decision::Undecided,
    }
}

/// Bounded word problem for an arbitrary presentation: breadth-first closure
/// under relation applications (both directions), adjacent cancellations and
/// pair insertions over the full generator alphabet, capped at the length
/// budget.  Yes when the classes meet, No when either class is exhausted
/// without meeting the other, Undecided past the node cap.
pub fn bounded_equal(pres: &GroupPresentation, w: &Word, v: &Word, budget: usize) -> Decision {
    bounded_equal_capped(pres, w, v, budget, DEFAULT_NODE_CAP)
}

pub fn bounded_equal_capped(
    pres: &GroupPresentation,
    w: &Word,
    v: &Word,
    budget: usize,
    cap: usize,
) -> Decision {
    let budget = budget.max(w.len()).max(v.len());
    // When every move preserves per-generator parity, differing parities
    // settle the question outright.
    if pres.parity_preserving() && parity_vector(w) != parity_vector(v) {
        return Decision::No;
    }
    let alphabet: Vec<u32> = (1..=pres.generators as u32).collect();
    // Substring rewrites in both directions, indexed by the matched side so
    // each node costs O(len * max pattern length) lookups however large the
    // relation list is.  Relations with an empty side act as insertions.
    let mut rules: HashMap<Vec<u32>, Vec<Vec<u32>>> = HashMap::new();
    let mut empty_rules: Vec<Vec<u32>> = Vec::new();
    let mut max_from = 0usize;
    for (l, r) in &pres.relations {
        if l == r {
            continue;
        }
        for (from, to) in [(l, r), (r, l)] {
            if from.is_empty() {
                empty_rules.push(to.0.clone());
            } else {
                max_from = max_from.max(from.len());
                rules.entry(from.0.clone()).or_default().push(to.0.clone());
            }
        }
    }
    for tos in rules.values_mut() {
        tos.sort_unstable();
        tos.dedup();
    }
    empty_rules.sort_unstable();
    empty_rules.dedup();
    let splice = |cur: &[u32], t: usize, flen: usize, to: &[u32]| {
        let mut next = Vec::with_capacity(cur.len() - flen + to.len());
        next.extend_from_slice(&cur[..t]);
        next.extend_from_slice(to);
        next.extend_from_slice(&cur[t + flen..]);
        next
    };
    let outcome = bidirectional_search(w, v, cap, |cur, out| {
        push_cancellations(cur, out);
        push_pair_insertions(cur, &alphabet, budget, out);
        for t in 0..cur.len() {
            for flen in 1..=max_from.min(cur.len() - t) {
                let Some(tos) = rules.get(&cur[t..t + flen]) else {
                    continue;
                };
                for to in tos {
                    if cur.len() - flen + to.len() <= budget {
                        out.push(splice(cur, t, flen, to));
                    }
                }
            }
        }
        for to in &empty_rules {
            if cur.len() + to.len() <= budget {
                for t in 0..=cur.len() {
                    out.push(splice(cur, t, 0, to));
                }
            }
        }
    });
    match outcome {
        BfsOutcome::Met => Decision::Yes,
        BfsOutcome::Closed => Decision::No,
        BfsOutcome::Capped => Decision::Undecided,
    }
}

/// A word-problem decision procedure: three fast built-ins plus the generic
/// bounded search over an explicit presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum GroupOracle {
    Free,
    Abelian,
    Half,
    Bounded {
        presentation: GroupPresentation,
        /// Added to the longer word's length to form each call's budget.
        slack: usize,
    },
}

impl GroupOracle {
    pub fn bounded(presentation: GroupPresentation, slack: usize) -> Self {
        GroupOracle::Bounded { presentation, slack }
    }

    pub fn equal(&self, w: &Word, v: &Word) -> Decision {
        match self {
            GroupOracle::Free => Decision::from_bool(equal_free(w, v)),
            GroupOracle::Abelian => Decision::from_bool(equal_abelian(w, v)),
            GroupOracle::Half => equal_half(w, v),
            GroupOracle::Bounded { presentation, slack } => {
                bounded_equal(presentation, w, v, w.len().max(v.len()) + slack)
            }
        }
    }

    /// Whether verdicts are invariant under renaming generators, so that one
    /// representative instance decides a whole relabeling orbit.
    pub fn invariant_under_relabeling(&self) -> bool {
        match self {
            GroupOracle::Free | GroupOracle::Abelian | GroupOracle::Half => true,
            GroupOracle::Bounded { presentation, .. } => {
                presentation.symmetric_under_transpositions()
            }
        }
    }
}

/// Pad relations with generator squares until both sides have the same
/// degree in every generator; the group is unchanged.  A relation whose
/// sides differ in some generator's parity cannot be evened out.
pub fn normalize_presentation(pres: &GroupPresentation) -> Result<GroupPresentation> {
    pres.validate()?;
    let mut relations = Vec::with_capacity(pres.relations.len());
    for (lhs, rhs) in &pres.relations {
        let mut counts: HashMap<u32, (i64, i64)> = HashMap::new();
        for &x in &lhs.0 {
            counts.entry(x).or_default().0 += 1;
        }
        for &x in &rhs.0 {
            counts.entry(x).or_default().1 += 1;
        }
        let mut pad_l: Vec<u32> = Vec::new();
        let mut pad_r: Vec<u32> = Vec::new();
        let mut gens: Vec<u32> = counts.keys().copied().collect();
        gens.sort_unstable();
        for g in gens {
            let (cl, cr) = counts[&g];
            let diff = cl - cr;
            if diff.rem_euclid(2) != 0 {
                return Err(Error::InvalidPresentation(format!(
                    "relation {lhs} = {rhs} has odd degree mismatch in generator {g}"
                )));
            }
            let pad = if diff < 0 { &mut pad_l } else { &mut pad_r };
            for _ in 0..diff.abs() {
                pad.push(g);
            }
        }
        let padded = |pad: &[u32], w: &Word| {
            let mut letters = pad.to_vec();
            letters.extend_from_slice(&w.0);
            Word(letters)
        };
        let (new_l, new_r) = (padded(&pad_l, lhs), padded(&pad_r, rhs));
        debug_assert!(equal_free(&new_l, lhs) && equal_free(&new_r, rhs));
        relations.push((new_l, new_r));
    }
    Ok(GroupPresentation { generators: pres.generators, relations })
}

/// Whether every transposition of generator indices maps each relation to a
/// consequence of the presentation, per the bounded word problem.  A single
/// failing image answers No; an exhausted search leaves Undecided.
pub fn is_uniform(pres: &GroupPresentation, budget: usize) -> Decision {
    let mut verdict = Decision::Yes;
    for i in 1..=pres.generators as u32 {
        for j in (i + 1)..=pres.generators as u32 {
            let swap = |w: &Word| {
                Word(w.0.iter().map(|&x| if x == i { j } else if x == j { i } else { x }).collect())
            };
            for (lhs, rhs) in &pres.relations {
                let (il, ir) = (swap(lhs), swap(rhs));
                match bounded_equal(pres, &il, &ir, budget.max(il.len()).max(ir.len())) {
                    Decision::Yes => {}
                    Decision::No => return Decision::No,
                    Decision::Undecided => verdict = Decision::Undecided,
                }
            }
        }
    }
    verdict
}
