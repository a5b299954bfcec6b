//! Two-row set partitions: k upper legs, l lower legs, grouped into blocks.
//!
//! Everything downstream (tensor maps, categories, group and sphere
//! correspondences) reduces to the combinatorics in this module.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap for exhaustive enumeration; Bell(12) is ~4.2M partitions.
pub const ENUMERATE_LEG_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// One leg of a two-row partition; positions are 1-based within each row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegId {
    pub side: Side,
    pub pos: usize,
}

impl LegId {
    pub fn upper(pos: usize) -> Self {
        LegId { side: Side::Upper, pos }
    }

    pub fn lower(pos: usize) -> Self {
        LegId { side: Side::Lower, pos }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (side, digits) = match s.split_at_checked(1) {
            Some(("u", d)) => (Side::Upper, d),
            Some(("l", d)) => (Side::Lower, d),
            _ => return Err(Error::InvalidPartition(format!("bad leg name {s:?}"))),
        };
        let pos: usize = digits
            .parse()
            .map_err(|_| Error::InvalidPartition(format!("bad leg name {s:?}")))?;
        if pos == 0 {
            return Err(Error::InvalidPartition(format!("leg positions are 1-based, got {s:?}")));
        }
        Ok(LegId { side, pos })
    }
}

impl fmt::Display for LegId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Upper => write!(f, "u{}", self.pos),
            Side::Lower => write!(f, "l{}", self.pos),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_swap_count(swaps: u64) -> Self {
        if swaps % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidWord(format!("sign must be +1 or -1, got {v}"))),
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

// On the wire a sign is the integer 1 or -1.
impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).map_err(serde::de::Error::custom)
    }
}

/// Block labels of the legs read in linearization order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSequence(pub Vec<u32>);

impl fmt::Display for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .0
            .iter()
            .map(|&b| {
                if b < 26 {
                    ((b'A' + b as u8) as char).to_string()
                } else {
                    format!("#{b}")
                }
            })
            .collect();
        write!(f, "{}", names.join(","))
    }
}

/// A set partition of k upper and l lower legs.
///
/// Internally the legs are kept in linearization order: upper row left to
/// right, then lower row right to left.  This traversal is the one under
/// which the alternating leg coloring and the switch-counting signature
/// behave correctly (the basic crossing comes out odd, the three-leg
/// half-commutation crossing comes out balanced).  `labels` is the
/// restricted-growth labelling of the blocks along that traversal, which is
/// a canonical form: two values are equal iff they are the same partition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<u32>,
}

fn normalize_labels(raw: &[u32]) -> Vec<u32> {
    let mut map: HashMap<u32, u32> = HashMap::new();
    let mut next = 0u32;
    raw.iter()
        .map(|&r| {
            *map.entry(r).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        })
        .collect()
}

impl Partition {
    pub fn from_labels(upper: usize, lower: usize, raw: &[u32]) -> Result<Self> {
        if raw.len() != upper + lower {
            return Err(Error::InvalidPartition(format!(
                "{} labels for shape ({upper},{lower})",
                raw.len()
            )));
        }
        Ok(Partition { upper, lower, labels: normalize_labels(raw) })
    }

    pub fn empty() -> Self {
        Partition { upper: 0, lower: 0, labels: Vec::new() }
    }

    /// The identity pair: one string joining u1 to l1.
    pub fn identity_pair() -> Self {
        Partition { upper: 1, lower: 1, labels: vec![0, 0] }
    }

    /// Single two-leg block in the lower row.
    pub fn cap() -> Self {
        Partition { upper: 0, lower: 2, labels: vec![0, 0] }
    }

    /// Single two-leg block in the upper row.
    pub fn cup() -> Self {
        Partition { upper: 2, lower: 0, labels: vec![0, 0] }
    }

    /// ker(ab/ba): the basic crossing.
    pub fn crossing() -> Self {
        Partition::kernel(&[1, 2], &[2, 1])
    }

    /// Identity on k strings.
    pub fn identity(k: usize) -> Self {
        let mut p = Partition::empty();
        for _ in 0..k {
            p = p.tensor(&Partition::identity_pair());
        }
        p
    }

    /// Finest partition joining equal values: legs share a block iff their
    /// entries agree.
    pub fn kernel<T: Eq + Hash>(upper: &[T], lower: &[T]) -> Self {
        let k = upper.len();
        let l = lower.len();
        let mut map: HashMap<&T, u32> = HashMap::new();
        let mut next = 0u32;
        let mut labels = Vec::with_capacity(k + l);
        let mut push = |v: &mut Vec<u32>, t| {
            v.push(*map.entry(t).or_insert_with(|| {
                let x = next;
                next += 1;
                x
            }));
        };
        for t in upper {
            push(&mut labels, t);
        }
        for t in lower.iter().rev() {
            push(&mut labels, t);
        }
        Partition { upper: k, lower: l, labels }
    }

    /// Kernel of two letter strings, e.g. `kernel_words("aab", "baa")`.
    pub fn kernel_words(upper: &str, lower: &str) -> Self {
        let u: Vec<char> = upper.chars().collect();
        let l: Vec<char> = lower.chars().collect();
        Partition::kernel(&u, &l)
    }

    pub fn from_blocks(upper: usize, lower: usize, blocks: &[Vec<LegId>]) -> Result<Self> {
        let n = upper + lower;
        let mut raw = vec![u32::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for leg in block {
                let limit = match leg.side {
                    Side::Upper => upper,
                    Side::Lower => lower,
                };
                if leg.pos == 0 || leg.pos > limit {
                    return Err(Error::InvalidPartition(format!(
                        "leg {leg} out of range for shape ({upper},{lower})"
                    )));
                }
                let idx = lin_index(upper, lower, *leg);
                if raw[idx] != u32::MAX {
                    return Err(Error::InvalidPartition(format!("leg {leg} listed twice")));
                }
                raw[idx] = b as u32;
            }
        }
        if raw.iter().any(|&x| x == u32::MAX) {
            return Err(Error::InvalidPartition("blocks do not cover every leg".into()));
        }
        Ok(Partition { upper, lower, labels: normalize_labels(&raw) })
    }

    pub fn upper_count(&self) -> usize {
        self.upper
    }

    pub fn lower_count(&self) -> usize {
        self.lower
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn leg_count(&self) -> usize {
        self.upper + self.lower
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn label_at(&self, lin_idx: usize) -> u32 {
        self.labels[lin_idx]
    }

    pub fn block_of(&self, leg: LegId) -> u32 {
        self.labels[lin_index(self.upper, self.lower, leg)]
    }

    /// Block labels in linearization order.
    pub fn linearize(&self) -> BlockSequence {
        BlockSequence(self.labels.clone())
    }

    /// Blocks in canonical order (by first leg along the linearization);
    /// within a block, upper legs first, each row ascending.
    pub fn blocks(&self) -> Vec<Vec<LegId>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (idx, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(leg_of_lin_index(self.upper, self.lower, idx));
        }
        for block in &mut out {
            block.sort();
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.block_sizes().iter().all(|&s| s % 2 == 0)
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// Every block has as many upper as lower legs.
    pub fn is_vertical(&self) -> bool {
        let mut diff = vec![0i64; self.block_count()];
        for (idx, &b) in self.labels.iter().enumerate() {
            if idx < self.upper {
                diff[b as usize] += 1;
            } else {
                diff[b as usize] -= 1;
            }
        }
        diff.iter().all(|&d| d == 0)
    }

    /// Color the linearized legs alternately and ask every block to pick up
    /// as many of one color as the other.
    pub fn is_balanced(&self) -> bool {
        let mut diff = vec![0i64; self.block_count()];
        for (idx, &b) in self.labels.iter().enumerate() {
            diff[b as usize] += if idx % 2 == 0 { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }

    /// No two blocks interlace along the linearization.
    pub fn is_noncrossing(&self) -> bool {
        let b = self.block_count();
        for p in 0..b as u32 {
            for q in (p + 1)..b as u32 {
                // Collapse the merged label trace of the two blocks; four or
                // more alternations means they interlace.
                let mut runs = 0u32;
                let mut last = u32::MAX;
                for &x in &self.labels {
                    if (x == p || x == q) && x != last {
                        runs += 1;
                        last = x;
                    }
                }
                if runs >= 4 {
                    return false;
                }
            }
        }
        true
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.block_count()];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }

    /// True iff `self` is coarser than (or equal to) `pi`: every block of
    /// `pi` sits inside a block of `self`.  This is a partial order with the
    /// all-in-one-block partition at the bottom.
    pub fn coarsens(&self, pi: &Partition) -> bool {
        if self.shape() != pi.shape() {
            return false;
        }
        let mut seen: Vec<u32> = vec![u32::MAX; pi.block_count()];
        for (idx, &pb) in pi.labels.iter().enumerate() {
            let tb = self.labels[idx];
            if seen[pb as usize] == u32::MAX {
                seen[pb as usize] = tb;
            } else if seen[pb as usize] != tb {
                return false;
            }
        }
        true
    }

    /// All partitions coarser than or equal to `self`: one for every way of
    /// merging its blocks, Bell(block_count) in total, deterministic order.
    pub fn coarsenings(&self) -> Vec<Partition> {
        let b = self.block_count();
        let mut out = Vec::new();
        let mut groups = vec![0u32; b];
        loop {
            let raw: Vec<u32> = self.labels.iter().map(|&x| groups[x as usize]).collect();
            out.push(Partition {
                upper: self.upper,
                lower: self.lower,
                labels: normalize_labels(&raw),
            });
            if !advance_rgs(&mut groups) {
                break;
            }
        }
        out
    }

    /// Switch-counting signature, defined on partitions with even blocks:
    /// (-1)^(number of neighbor switches needed to reach a noncrossing
    /// arrangement).  Computed by repeatedly deleting an adjacent same-block
    /// pair when one exists, else walking the nearest later mate of the
    /// leftmost leg over to it; each switch costs one.
    pub fn signature(&self) -> Result<Sign> {
        if !self.is_even() {
            return Err(Error::NotEven);
        }
        Ok(signature_of_sequence(&self.labels))
    }

    /// Signature via an arbitrary reduction strategy.  `pick` sees every
    /// same-block leg pair (as index pairs into the current sequence) and
    /// chooses one; the resulting sign must not depend on the strategy.
    pub fn signature_with_picker(
        &self,
        mut pick: impl FnMut(&[(usize, usize)]) -> usize,
    ) -> Result<Sign> {
        if !self.is_even() {
            return Err(Error::NotEven);
        }
        let mut seq = self.labels.clone();
        let mut swaps = 0u64;
        while !seq.is_empty() {
            let pairs = same_block_pairs(&seq);
            let (i, j) = pairs[pick(&pairs).min(pairs.len() - 1)];
            // Walking leg j left to i+1 costs one switch per leg of another
            // block in between; legs of the same block are interchangeable,
            // so passing one is free.
            swaps += seq[i + 1..j].iter().filter(|&&x| x != seq[i]).count() as u64;
            seq.remove(j);
            seq.remove(i);
        }
        Ok(Sign::from_swap_count(swaps))
    }

    /// Move the leftmost upper leg down to the lower-left corner.
    pub fn rotate(&self) -> Result<Partition> {
        if self.upper == 0 {
            return Err(Error::ShapeMismatch("rotate needs an upper leg".into()));
        }
        let mut labels = self.labels.clone();
        labels.rotate_left(1);
        Ok(Partition {
            upper: self.upper - 1,
            lower: self.lower + 1,
            labels: normalize_labels(&labels),
        })
    }

    /// Inverse of `rotate`: lower-left leg back up to the upper-left corner.
    pub fn unrotate(&self) -> Result<Partition> {
        if self.lower == 0 {
            return Err(Error::ShapeMismatch("unrotate needs a lower leg".into()));
        }
        let mut labels = self.labels.clone();
        labels.rotate_right(1);
        Ok(Partition {
            upper: self.upper + 1,
            lower: self.lower - 1,
            labels: normalize_labels(&labels),
        })
    }

    /// Move the rightmost upper leg down to the lower-right corner.
    pub fn rotate_right_down(&self) -> Result<Partition> {
        if self.upper == 0 {
            return Err(Error::ShapeMismatch("rotation needs an upper leg".into()));
        }
        // The linearization passes the upper-right corner directly into the
        // lower-right corner, so only the row split moves.
        Ok(Partition {
            upper: self.upper - 1,
            lower: self.lower + 1,
            labels: self.labels.clone(),
        })
    }

    /// Inverse of `rotate_right_down`.
    pub fn rotate_right_up(&self) -> Result<Partition> {
        if self.lower == 0 {
            return Err(Error::ShapeMismatch("rotation needs a lower leg".into()));
        }
        Ok(Partition {
            upper: self.upper + 1,
            lower: self.lower - 1,
            labels: self.labels.clone(),
        })
    }

    /// Upside-down reflection: P(k,l) -> P(l,k).
    pub fn involution(&self) -> Partition {
        let mut labels = self.labels.clone();
        labels.reverse();
        Partition {
            upper: self.lower,
            lower: self.upper,
            labels: normalize_labels(&labels),
        }
    }

    /// Horizontal concatenation.
    pub fn tensor(&self, other: &Partition) -> Partition {
        let upper = self.upper + other.upper;
        let lower = self.lower + other.lower;
        let shift = self.block_count() as u32;
        let mut raw = Vec::with_capacity(upper + lower);
        // Upper rows left to right: self then other.
        raw.extend(self.labels[..self.upper].iter().copied());
        raw.extend(other.labels[..other.upper].iter().map(|&x| x + shift));
        // Lower row right to left: other's legs come first.
        raw.extend(other.labels[other.upper..].iter().map(|&x| x + shift));
        raw.extend(self.labels[self.upper..].iter().copied());
        Partition { upper, lower, labels: normalize_labels(&raw) }
    }

    /// Vertical gluing: `self`'s lower row meets `other`'s upper row.
    /// Returns the composite in P(self.upper, other.lower) together with the
    /// number of closed loops removed from the middle.
    pub fn compose(&self, other: &Partition) -> Result<(Partition, usize)> {
        if self.lower != other.upper {
            return Err(Error::ShapeMismatch(format!(
                "cannot glue ({},{}) onto ({},{})",
                self.upper, self.lower, other.upper, other.lower
            )));
        }
        let mid = self.lower;
        // Union-find over self's legs followed by other's legs.
        let total = self.leg_count() + other.leg_count();
        let mut dsu = Dsu::new(total);
        let off = self.leg_count();
        for (idx, &b) in self.labels.iter().enumerate() {
            // Join each leg to the first leg of its block.
            let first = self.labels.iter().position(|&x| x == b).unwrap();
            dsu.union(idx, first);
        }
        for (idx, &b) in other.labels.iter().enumerate() {
            let first = other.labels.iter().position(|&x| x == b).unwrap();
            dsu.union(off + idx, off + first);
        }
        for p in 1..=mid {
            let self_leg = lin_index(self.upper, self.lower, LegId::lower(p));
            let other_leg = lin_index(other.upper, other.lower, LegId::upper(p));
            dsu.union(self_leg, off + other_leg);
        }
        // Result legs in linearization order: self's upper row, then other's
        // lower row right to left (which is its own linearization tail).
        let mut raw = Vec::with_capacity(self.upper + other.lower);
        for idx in 0..self.upper {
            raw.push(dsu.find(idx) as u32);
        }
        for idx in other.upper..other.leg_count() {
            raw.push(dsu.find(off + idx) as u32);
        }
        let result = Partition {
            upper: self.upper,
            lower: other.lower,
            labels: normalize_labels(&raw),
        };
        // Loops: components made of middle legs only.
        let mut middle_roots: Vec<usize> = (1..=mid)
            .map(|p| dsu.find(lin_index(self.upper, self.lower, LegId::lower(p))))
            .collect();
        middle_roots.sort_unstable();
        middle_roots.dedup();
        let mut outer_roots: Vec<usize> = Vec::with_capacity(self.upper + other.lower);
        for idx in 0..self.upper {
            outer_roots.push(dsu.find(idx));
        }
        for idx in other.upper..other.leg_count() {
            outer_roots.push(dsu.find(off + idx));
        }
        outer_roots.sort_unstable();
        outer_roots.dedup();
        let loops = middle_roots.iter().filter(|r| !outer_roots.contains(r)).count();
        Ok((result, loops))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.upper, self.lower)?;
        for block in self.blocks() {
            let legs: Vec<String> = block.iter().map(|l| l.to_string()).collect();
            write!(f, "{{{}}}", legs.join(" "))?;
        }
        Ok(())
    }
}

fn lin_index(upper: usize, lower: usize, leg: LegId) -> usize {
    match leg.side {
        Side::Upper => leg.pos - 1,
        Side::Lower => upper + (lower - leg.pos),
    }
}

fn leg_of_lin_index(upper: usize, lower: usize, idx: usize) -> LegId {
    if idx < upper {
        LegId::upper(idx + 1)
    } else {
        LegId::lower(lower - (idx - upper))
    }
}

fn same_block_pairs(seq: &[u32]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] == seq[j] {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

pub(crate) fn signature_of_sequence(labels: &[u32]) -> Sign {
    let mut seq = labels.to_vec();
    let mut swaps = 0u64;
    'outer: while !seq.is_empty() {
        for i in 0..seq.len() - 1 {
            if seq[i] == seq[i + 1] {
                seq.remove(i + 1);
                seq.remove(i);
                continue 'outer;
            }
        }
        let mate = seq[1..]
            .iter()
            .position(|&x| x == seq[0])
            .expect("even blocks leave every leg a mate")
            + 1;
        swaps += (mate - 1) as u64;
        seq.remove(mate);
        seq.remove(0);
    }
    Sign::from_swap_count(swaps)
}

/// Advance a restricted-growth string in lexicographic order.
fn advance_rgs(a: &mut [u32]) -> bool {
    let n = a.len();
    if n <= 1 {
        return false;
    }
    let mut prefix_max = vec![0u32; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
    }
    for j in (1..n).rev() {
        if a[j] <= prefix_max[j] {
            a[j] += 1;
            for x in &mut a[j + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// All partitions of shape (k,l) in canonical (restricted-growth) order.
pub fn enumerate(k: usize, l: usize) -> Result<Partitions> {
    if k + l > ENUMERATE_LEG_BOUND {
        return Err(Error::BoundExceeded(format!(
            "enumerate is capped at {ENUMERATE_LEG_BOUND} legs, got {}",
            k + l
        )));
    }
    Ok(Partitions { upper: k, lower: l, state: Some(vec![0u32; k + l]) })
}

pub struct Partitions {
    upper: usize,
    lower: usize,
    state: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.state.as_ref()?.clone();
        let out = Partition { upper: self.upper, lower: self.lower, labels: current };
        let st = self.state.as_mut().unwrap();
        if !advance_rgs(st) {
            self.state = None;
        }
        Some(out)
    }
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<String>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks = self
            .blocks()
            .iter()
            .map(|block| block.iter().map(|leg| leg.to_string()).collect())
            .collect();
        PartitionRepr { upper: self.upper, lower: self.lower, blocks }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PartitionRepr::deserialize(deserializer)?;
        let blocks: Vec<Vec<LegId>> = repr
            .blocks
            .iter()
            .map(|block| block.iter().map(|s| LegId::parse(s)).collect::<Result<_>>())
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)?;
        Partition::from_blocks(repr.upper, repr.lower, &blocks).map_err(serde::de::Error::custom)
    }
}
