//! Named families of partitions, membership predicates, generator closure,
//! and the two-way passage between partition families and reflection groups.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{reduce_free, Decision, GroupOracle, GroupPresentation, Word};
use crate::partition::{enumerate, Partition, Sign};

/// Hard ceiling for generator closures.
pub const CLOSURE_LEG_BOUND: usize = 10;

/// The built-in families, each a membership predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedCategory {
    P,
    P2,
    PEven,
    NC,
    NC2,
    NCEven,
    PEvenStar,
    PEvenInf,
    PVert,
    PVertStar,
    PVertInf,
    SInf,
    SInfStar,
}

pub const NAMED_CATEGORIES: [NamedCategory; 13] = [
    NamedCategory::P,
    NamedCategory::P2,
    NamedCategory::PEven,
    NamedCategory::NC,
    NamedCategory::NC2,
    NamedCategory::NCEven,
    NamedCategory::PEvenStar,
    NamedCategory::PEvenInf,
    NamedCategory::PVert,
    NamedCategory::PVertStar,
    NamedCategory::PVertInf,
    NamedCategory::SInf,
    NamedCategory::SInfStar,
];

impl NamedCategory {
    pub fn token(self) -> &'static str {
        match self {
            NamedCategory::P => "P",
            NamedCategory::P2 => "P_2",
            NamedCategory::PEven => "P_even",
            NamedCategory::NC => "NC",
            NamedCategory::NC2 => "NC_2",
            NamedCategory::NCEven => "NC_even",
            NamedCategory::PEvenStar => "P_even_star",
            NamedCategory::PEvenInf => "P_even_inf",
            NamedCategory::PVert => "P_vert",
            NamedCategory::PVertStar => "P_vert_star",
            NamedCategory::PVertInf => "P_vert_inf",
            NamedCategory::SInf => "S_inf",
            NamedCategory::SInfStar => "S_inf_star",
        }
    }
}

impl std::fmt::Display for NamedCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.token())
    }
}

impl FromStr for NamedCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NAMED_CATEGORIES
            .iter()
            .copied()
            .find(|c| c.token() == s)
            .ok_or_else(|| Error::InvalidPartition(format!("unknown category name {s:?}")))
    }
}

/// Every coarsening with exactly two blocks carries positive signature.
/// Vacuously true below two blocks.
///
/// Agrees with `is_balanced` through seven legs but overshoots from eight:
/// the one-row kernel of abababab has positive signature on both of its
/// coarsenings yet is unbalanced.  Membership tests use the word forms; this
/// survives as an independent cross-check.
pub fn two_block_coarsenings_positive(pi: &Partition) -> bool {
    let b = pi.block_count();
    if b < 2 {
        return true;
    }
    // Choose the subset of blocks merged with block 0; the rest form the
    // second block.  2^(b-1)-1 proper splits.
    let labels = pi.linearize().0;
    let mut merged = vec![0u32; pi.leg_count()];
    for mask in 0..(1u32 << (b - 1)) {
        if mask == (1 << (b - 1)) - 1 {
            continue;
        }
        for (slot, &lab) in merged.iter_mut().zip(&labels) {
            let joined = lab == 0 || (lab >= 1 && mask >> (lab - 1) & 1 == 1);
            *slot = u32::from(!joined);
        }
        if crate::partition::signature_of_sequence(&merged) != Sign::Plus {
            return false;
        }
    }
    true
}

/// Positive signature on every coarsening.  Same caveat as the two-block
/// variant: cross-check only, not the membership test.
pub fn all_coarsenings_positive(pi: &Partition) -> bool {
    pi.coarsenings()
        .iter()
        .all(|tau| tau.signature().map(|s| s == Sign::Plus).unwrap_or(false))
}

/// The linearized block word reduces to nothing by repeatedly cancelling
/// adjacent legs of the same block.  Such cancellation survives any merging
/// of blocks, so membership passes to every coarsening.
fn cancels_freely(pi: &Partition) -> bool {
    let mut stack: Vec<u32> = Vec::with_capacity(pi.leg_count());
    for t in 0..pi.leg_count() {
        let lab = pi.label_at(t);
        if stack.last() == Some(&lab) {
            stack.pop();
        } else {
            stack.push(lab);
        }
    }
    stack.is_empty()
}

fn named_member(name: NamedCategory, pi: &Partition) -> bool {
    match name {
        NamedCategory::P => true,
        NamedCategory::P2 => pi.is_pairing(),
        NamedCategory::PEven => pi.is_even(),
        NamedCategory::NC => pi.is_noncrossing(),
        NamedCategory::NC2 => pi.is_pairing() && pi.is_noncrossing(),
        NamedCategory::NCEven => pi.is_even() && pi.is_noncrossing(),
        // Balance forces even block sizes; free cancellation forces balance.
        NamedCategory::PEvenStar => pi.is_balanced(),
        NamedCategory::PEvenInf => cancels_freely(pi),
        NamedCategory::PVert => pi.is_vertical(),
        NamedCategory::PVertStar => {
            pi.is_vertical() && named_member(NamedCategory::PEvenStar, pi)
        }
        NamedCategory::PVertInf => pi.is_vertical() && named_member(NamedCategory::PEvenInf, pi),
        NamedCategory::SInf => pi.is_pairing() && pi.is_vertical(),
        NamedCategory::SInfStar => {
            named_member(NamedCategory::SInf, pi) && named_member(NamedCategory::PEvenStar, pi)
        }
    }
}

/// A family of partitions: a named predicate, an explicitly generated finite
/// closure, or an intersection.
#[derive(Debug, Clone)]
pub enum CategorySpec {
    Named(NamedCategory),
    Generated { members: BTreeSet<Partition>, leg_bound: usize },
    Intersection(Box<CategorySpec>, Box<CategorySpec>),
}

impl CategorySpec {
    pub fn named(name: NamedCategory) -> Self {
        CategorySpec::Named(name)
    }

    /// Close the generators and remember the result.
    pub fn generated(generators: &[Partition], leg_bound: usize) -> Result<Self> {
        Ok(CategorySpec::Generated { members: closure(generators, leg_bound)?, leg_bound })
    }

    pub fn member(&self, pi: &Partition) -> Result<bool> {
        match self {
            CategorySpec::Named(name) => Ok(named_member(*name, pi)),
            CategorySpec::Generated { members, leg_bound } => {
                if pi.leg_count() > *leg_bound {
                    return Err(Error::BoundExceeded(format!(
                        "{} legs outside the generated bound {leg_bound}",
                        pi.leg_count()
                    )));
                }
                Ok(members.contains(pi))
            }
            CategorySpec::Intersection(a, b) => Ok(a.member(pi)? && b.member(pi)?),
        }
    }

    /// All members of shape (k, l).
    pub fn members_of_shape(&self, k: usize, l: usize) -> Result<Vec<Partition>> {
        match self {
            CategorySpec::Named(name) => {
                Ok(enumerate(k, l)?.filter(|pi| named_member(*name, pi)).collect())
            }
            CategorySpec::Generated { members, leg_bound } => {
                if k + l > *leg_bound {
                    return Err(Error::BoundExceeded(format!(
                        "shape ({k},{l}) outside the generated bound {leg_bound}"
                    )));
                }
                Ok(members.iter().filter(|pi| pi.shape() == (k, l)).cloned().collect())
            }
            CategorySpec::Intersection(a, b) => {
                let right = b.members_of_shape(k, l)?;
                Ok(a.members_of_shape(k, l)?
                    .into_iter()
                    .filter(|pi| right.contains(pi))
                    .collect())
            }
        }
    }
}

/// Predicate conjunction; two explicit closures intersect as sets up to the
/// smaller bound.
pub fn intersect(a: &CategorySpec, b: &CategorySpec) -> CategorySpec {
    if let (
        CategorySpec::Generated { members: ma, leg_bound: ba },
        CategorySpec::Generated { members: mb, leg_bound: bb },
    ) = (a, b)
    {
        let bound = *ba.min(bb);
        let members = ma
            .intersection(mb)
            .filter(|pi| pi.leg_count() <= bound)
            .cloned()
            .collect();
        return CategorySpec::Generated { members, leg_bound: bound };
    }
    CategorySpec::Intersection(Box::new(a.clone()), Box::new(b.clone()))
}

/// The partition joining mirrored pairs of positions: the kernel of the word
/// 1..k k..1 over itself, on (2k, 2k) legs.
pub fn pi_k(k: usize) -> Partition {
    assert!(k >= 1, "pi_k needs k >= 1");
    let mut word: Vec<u32> = (1..=k as u32).collect();
    word.extend((1..=k as u32).rev());
    Partition::kernel(&word, &word)
}

/// Smallest family containing the generators, the identity pair, cap and
/// cup, closed under tensor, composition, involution and all rotations,
/// truncated at leg_bound legs.  Deterministic fixed-point iteration.
pub fn closure(generators: &[Partition], leg_bound: usize) -> Result<BTreeSet<Partition>> {
    if leg_bound > CLOSURE_LEG_BOUND {
        return Err(Error::BoundExceeded(format!(
            "closure leg bound {leg_bound} exceeds {CLOSURE_LEG_BOUND}"
        )));
    }
    for g in generators {
        if g.leg_count() > leg_bound {
            return Err(Error::BoundExceeded(format!(
                "generator with {} legs exceeds bound {leg_bound}",
                g.leg_count()
            )));
        }
    }
    let mut members: BTreeSet<Partition> = generators.iter().cloned().collect();
    for base in [Partition::identity_pair(), Partition::cap(), Partition::cup()] {
        if base.leg_count() <= leg_bound {
            members.insert(base);
        }
    }
    let mut frontier: Vec<Partition> = members.iter().cloned().collect();
    while !frontier.is_empty() {
        let member_vec: Vec<Partition> = members.iter().cloned().collect();
        let found: Vec<Partition> = frontier
            .par_iter()
            .flat_map_iter(|f| {
                let mut out: Vec<Partition> = Vec::new();
                out.push(f.involution());
                out.extend(f.rotate().ok());
                out.extend(f.unrotate().ok());
                out.extend(f.rotate_right_down().ok());
                out.extend(f.rotate_right_up().ok());
                for m in &member_vec {
                    if f.leg_count() + m.leg_count() <= leg_bound {
                        out.push(f.tensor(m));
                        out.push(m.tensor(f));
                    }
                    for (top, bottom) in [(f, m), (m, f)] {
                        if top.lower_count() == bottom.upper_count()
                            && top.upper_count() + bottom.lower_count() <= leg_bound
                        {
                            if let Ok((composite, _)) = top.compose(bottom) {
                                out.push(composite);
                            }
                        }
                    }
                }
                out.retain(|p| p.leg_count() <= leg_bound);
                out
            })
            .collect();
        let mut next = Vec::new();
        for cand in found {
            if members.insert(cand.clone()) {
                next.push(cand);
            }
        }
        frontier = next;
    }
    Ok(members)
}

/// Result of reading a family off a group's word problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupCategory {
    pub members: Vec<Partition>,
    /// Partitions whose defining word comparisons did not all decide.
    pub undecided: Vec<Partition>,
    /// True when every block-count pattern is realizable: index_bound ≥ k+l.
    pub stable: bool,
}

pub(crate) fn shape_words(tau: &Partition, letters: &[u32]) -> (Word, Word) {
    let (k, l) = tau.shape();
    let upper: Vec<u32> = (0..k).map(|t| letters[tau.label_at(t) as usize]).collect();
    let lower: Vec<u32> = (1..=l).map(|p| letters[tau.label_at(k + l - p) as usize]).collect();
    (Word(upper), Word(lower))
}

/// The family read off a group: a partition belongs iff every index tuple
/// whose kernel refines into it yields equal generator words.  Verdicts are
/// computed once per kernel and shared across partitions; a relabeling-
/// invariant oracle is asked one representative instance per kernel,
/// otherwise every injective letter assignment within index_bound is tried.
pub fn category_of_group(
    oracle: &GroupOracle,
    k: usize,
    l: usize,
    index_bound: usize,
) -> Result<GroupCategory> {
    let all: Vec<Partition> = enumerate(k, l)?.collect();
    let relabeling_invariant = oracle.invariant_under_relabeling();
    let verdicts: HashMap<Partition, Decision> = all
        .par_iter()
        .filter(|tau| tau.block_count() <= index_bound)
        .map(|tau| {
            let b = tau.block_count();
            let verdict = if relabeling_invariant {
                let letters: Vec<u32> = (1..=b as u32).collect();
                let (wu, wl) = shape_words(tau, &letters);
                oracle.equal(&wu, &wl)
            } else {
                let mut verdict = Decision::Yes;
                for letters in (1..=index_bound as u32).permutations(b) {
                    let (wu, wl) = shape_words(tau, &letters);
                    match oracle.equal(&wu, &wl) {
                        Decision::Yes => {}
                        Decision::No => {
                            verdict = Decision::No;
                            break;
                        }
                        Decision::Undecided => verdict = Decision::Undecided,
                    }
                }
                verdict
            };
            (tau.clone(), verdict)
        })
        .collect();
    let mut members = Vec::new();
    let mut undecided = Vec::new();
    for pi in &all {
        let mut overall = Decision::Yes;
        for tau in pi.coarsenings() {
            match verdicts.get(&tau) {
                Some(Decision::Yes) | None => {}
                Some(Decision::No) => {
                    overall = Decision::No;
                    break;
                }
                Some(Decision::Undecided) => overall = Decision::Undecided,
            }
        }
        match overall {
            Decision::Yes => members.push(pi.clone()),
            Decision::No => {}
            Decision::Undecided => undecided.push(pi.clone()),
        }
    }
    Ok(GroupCategory { members, undecided, stable: index_bound >= k + l })
}

/// The presentation generated by a family: one relation per index tuple
/// whose kernel is a member, sides free-reduced, trivial relations dropped,
/// the list deduplicated and ordered canonically.
pub fn group_of_category(
    spec: &CategorySpec,
    n: usize,
    leg_bound: usize,
) -> Result<GroupPresentation> {
    let mut relations: BTreeSet<(Word, Word)> = BTreeSet::new();
    for k in 0..=leg_bound {
        for l in 0..=(leg_bound - k) {
            for pi in spec.members_of_shape(k, l)? {
                let b = pi.block_count();
                if b > n {
                    continue;
                }
                for letters in (1..=n as u32).permutations(b) {
                    let (wu, wl) = shape_words(&pi, &letters);
                    let (ru, rl) = (reduce_free(&wu), reduce_free(&wl));
                    if ru == rl {
                        continue;
                    }
                    let rel = if ru <= rl { (ru, rl) } else { (rl, ru) };
                    relations.insert(rel);
                }
            }
        }
    }
    Ok(GroupPresentation { generators: n, relations: relations.into_iter().collect() })
}
