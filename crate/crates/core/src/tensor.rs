//! Exact-integer tensor representations of partitions: the 0/1 maps, their
//! signed variants, and the Möbius calculus connecting the two.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate, signature_of_sequence, Partition, Sign};

/// Guard on rows*cols for any materialized matrix.
pub const MATRIX_ENTRY_GUARD: usize = 10_000_000;

/// Dense matrix over arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        if rows.checked_mul(cols).is_none_or(|n| n > MATRIX_ENTRY_GUARD) {
            return Err(Error::SizeGuard(format!("{rows}x{cols} matrix")));
        }
        Ok(ExactMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = ExactMatrix::zero(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    /// Kronecker product; the left factor is the most significant index.
    pub fn tensor_product(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        let mut out = ExactMatrix::zero(self.rows * other.rows, self.cols * other.cols)?;
        for ra in 0..self.rows {
            for ca in 0..self.cols {
                let a = self.get(ra, ca);
                if a.is_zero() {
                    continue;
                }
                for rb in 0..other.rows {
                    for cb in 0..other.cols {
                        let b = other.get(rb, cb);
                        if !b.is_zero() {
                            out.set(ra * other.rows + rb, ca * other.cols + cb, a * b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product self * other.
    pub fn compose(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &BigInt) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("matrix addition".into()));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Rows concatenated left to right.
    pub fn vectorized(&self) -> Vec<BigInt> {
        self.data.clone()
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> =
            self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect();
        rank_rows(rows)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<EntryRepr>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .data
            .chunks(self.cols.max(1))
            .map(|row| {
                row.iter()
                    .map(|v| match i64::try_from(v) {
                        Ok(small) => EntryRepr::Small(small),
                        Err(_) => EntryRepr::Big(v.to_string()),
                    })
                    .collect()
            })
            .collect();
        MatrixRepr { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows
            || repr.entries.iter().any(|row| row.len() != repr.cols)
        {
            return Err(D::Error::custom("entry grid does not match rows/cols"));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            for e in row {
                data.push(match e {
                    EntryRepr::Small(v) => BigInt::from(*v),
                    EntryRepr::Big(s) => {
                        s.parse().map_err(|_| D::Error::custom("bad integer entry"))?
                    }
                });
            }
        }
        Ok(ExactMatrix { rows: repr.rows, cols: repr.cols, data })
    }
}

/// Fraction-free Gaussian elimination (Bareiss); exact rank over Q.
pub(crate) fn rank_rows(mut rows: Vec<Vec<BigInt>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..rows.len() {
            if rows[r].iter().all(|x| x.is_zero()) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let num = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                debug_assert!((&num % &prev).is_zero());
                rows[r][c] = num / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&n| n <= MATRIX_ENTRY_GUARD)
            .ok_or_else(|| Error::SizeGuard(format!("{base}^{exp} index space")))?;
    }
    Ok(acc)
}

/// Iterate all assignments of values 0..n to b slots, invoking f with each.
pub(crate) fn for_each_assignment(b: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut vals = vec![0usize; b];
    loop {
        f(&vals);
        let mut i = b;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < n {
                break;
            }
            vals[i] = 0;
        }
    }
}

fn index_pair(pi: &Partition, n: usize, vals: &[usize]) -> (usize, usize) {
    let (k, l) = pi.shape();
    let mut col = 0usize;
    for t in 0..k {
        col = col * n + vals[pi.label_at(t) as usize];
    }
    let mut row = 0usize;
    // Row multi-index reads the lower row left to right, so walk the
    // linearization tail backwards.
    for p in 1..=l {
        row = row * n + vals[pi.label_at(k + l - p) as usize];
    }
    (row, col)
}

/// The 0/1 map of a partition: entry (j,i) is 1 iff the kernel of the index
/// pair is coarser than or equal to pi, i.e. iff the indices are constant on
/// every block.  Rows run over the lower multi-index, columns over the
/// upper, leftmost factor most significant.
pub fn t_map(pi: &Partition, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::SizeGuard("index dimension must be at least 1".into()));
    }
    let (k, l) = pi.shape();
    let mut m = ExactMatrix::zero(checked_pow(n, l)?, checked_pow(n, k)?)?;
    for_each_assignment(pi.block_count(), n, |vals| {
        let (row, col) = index_pair(pi, n, vals);
        m.set(row, col, BigInt::one());
    });
    Ok(m)
}

/// Signed variant: the surviving entries carry the signature of the index
/// pair's kernel.  Defined for partitions with even blocks.
pub fn tbar_map(pi: &Partition, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::SizeGuard("index dimension must be at least 1".into()));
    }
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    let (k, l) = pi.shape();
    let mut m = ExactMatrix::zero(checked_pow(n, l)?, checked_pow(n, k)?)?;
    // The kernel of an index pair only depends on which blocks collide, so
    // cache signatures per collision pattern.
    let mut sign_cache: HashMap<Vec<u32>, Sign> = HashMap::new();
    let b = pi.block_count();
    let labels: Vec<u32> = pi.linearize().0;
    for_each_assignment(b, n, |vals| {
        let mut pattern = vec![u32::MAX; b];
        let mut next = 0u32;
        let mut seen: HashMap<usize, u32> = HashMap::new();
        for (blk, &v) in vals.iter().enumerate() {
            pattern[blk] = *seen.entry(v).or_insert_with(|| {
                let x = next;
                next += 1;
                x
            });
        }
        let sign = *sign_cache.entry(pattern.clone()).or_insert_with(|| {
            let merged: Vec<u32> = labels.iter().map(|&x| pattern[x as usize]).collect();
            signature_of_sequence(&merged)
        });
        let (row, col) = index_pair(pi, n, vals);
        m.set(row, col, BigInt::from(sign.as_i64()));
    });
    Ok(m)
}

/// Möbius function of the coarsening order: 1 on the diagonal, the usual
/// alternating sum below it, 0 when sigma is not coarser than pi.
pub fn mobius(sigma: &Partition, pi: &Partition) -> BigInt {
    if !sigma.coarsens(pi) {
        return BigInt::zero();
    }
    if sigma == pi {
        return BigInt::one();
    }
    // Interval [sigma, pi], coarsest first; a strict predecessor always has
    // strictly fewer blocks, so this order resolves the recursion.
    let mut interval: Vec<Partition> =
        pi.coarsenings().into_iter().filter(|tau| sigma.coarsens(tau)).collect();
    interval.sort_by_key(|tau| tau.block_count());
    let mut mu: Vec<BigInt> = Vec::with_capacity(interval.len());
    for (idx, tau) in interval.iter().enumerate() {
        if tau == sigma {
            mu.push(BigInt::one());
            continue;
        }
        // mu(sigma, tau) = -sum over tau' strictly coarser within the interval.
        let mut acc = BigInt::zero();
        for (jdx, prev) in interval.iter().enumerate().take(idx) {
            if prev != tau && prev.coarsens(tau) {
                acc += &mu[jdx];
            }
        }
        mu.push(-acc);
    }
    let pos = interval.iter().position(|t| t == pi).unwrap();
    mu[pos].clone()
}

/// Coefficients expressing the signed map of pi over the plain maps of its
/// coarsenings: alpha_sigma = sum over sigma <= tau <= pi of sign(tau) *
/// mobius(sigma, tau).  Returned in deterministic coarsening order.
pub fn alpha_coeffs(pi: &Partition) -> Result<Vec<(Partition, BigInt)>> {
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    let interval = pi.coarsenings();
    let signs: Vec<BigInt> = interval
        .iter()
        .map(|tau| Ok(BigInt::from(tau.signature()?.as_i64())))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(interval.len());
    for sigma in &interval {
        let mut alpha = BigInt::zero();
        for (tau, sign) in interval.iter().zip(&signs) {
            if sigma.coarsens(tau) {
                alpha += sign * mobius(sigma, tau);
            }
        }
        out.push((sigma.clone(), alpha));
    }
    Ok(out)
}

/// Check the inversion formula: the signed map equals the alpha-weighted sum
/// of the plain maps of all coarsenings.  Exact integer comparison.
pub fn verify_mobius_identity(pi: &Partition, n: usize) -> Result<bool> {
    let twisted = tbar_map(pi, n)?;
    let mut acc = ExactMatrix::zero(twisted.rows(), twisted.cols())?;
    for (tau, alpha) in alpha_coeffs(pi)? {
        if alpha.is_zero() {
            continue;
        }
        acc = acc.add(&t_map(&tau, n)?.scaled(&alpha))?;
    }
    Ok(acc == twisted)
}

/// Dimension of the span of the partition maps, i.e. the rank over Q of the
/// matrix whose rows are the vectorized maps.  Equal index pairs give equal
/// columns and the column of a pair depends only on its kernel, so the rank
/// is computed on one representative column per realizable kernel; the dense
/// route is cross-checked in the tests.
pub fn span_dim(parts: &[Partition], n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::SizeGuard("index dimension must be at least 1".into()));
    }
    let Some(first) = parts.first() else {
        return Ok(0);
    };
    let (k, l) = first.shape();
    if parts.iter().any(|p| p.shape() != (k, l)) {
        return Err(Error::ShapeMismatch("span over mixed shapes".into()));
    }
    let kernels: Vec<Partition> =
        enumerate(k, l)?.filter(|tau| tau.block_count() <= n).collect();
    let rows: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|pi| {
            kernels
                .iter()
                .map(|tau| if tau.coarsens(pi) { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    Ok(rank_rows(rows))
}

/// Dense reference implementation of `span_dim`; small shapes only.
pub fn span_dim_dense(parts: &[Partition], n: usize) -> Result<usize> {
    let Some(first) = parts.first() else {
        return Ok(0);
    };
    let (k, l) = first.shape();
    if parts.iter().any(|p| p.shape() != (k, l)) {
        return Err(Error::ShapeMismatch("span over mixed shapes".into()));
    }
    let rows: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|pi| Ok(t_map(pi, n)?.vectorized()))
        .collect::<Result<_>>()?;
    Ok(rank_rows(rows))
}

/// Verify the representation laws on a pair of partitions: the map of the
/// tensor is the Kronecker product, and vertical gluing composes the maps up
/// to the loop factor.  The signed maps satisfy the same laws when both
/// partitions have even blocks.
pub fn verify_categorical(pi: &Partition, sigma: &Partition, n: usize) -> Result<bool> {
    let t_pi = t_map(pi, n)?;
    let t_sigma = t_map(sigma, n)?;
    if t_map(&pi.tensor(sigma), n)? != t_pi.tensor_product(&t_sigma)? {
        return Ok(false);
    }
    let both_even = pi.is_even() && sigma.is_even();
    if both_even {
        let tb_pi = tbar_map(pi, n)?;
        let tb_sigma = tbar_map(sigma, n)?;
        if tbar_map(&pi.tensor(sigma), n)? != tb_pi.tensor_product(&tb_sigma)? {
            return Ok(false);
        }
    }
    if pi.lower_count() == sigma.upper_count() {
        let (composite, loops) = pi.compose(sigma)?;
        let factor = BigInt::from(n).pow(loops as u32);
        if t_map(&composite, n)?.scaled(&factor) != t_sigma.compose(&t_pi)? {
            return Ok(false);
        }
        if both_even {
            let tb_pi = tbar_map(pi, n)?;
            let tb_sigma = tbar_map(sigma, n)?;
            if tbar_map(&composite, n)?.scaled(&factor) != tb_sigma.compose(&tb_pi)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
