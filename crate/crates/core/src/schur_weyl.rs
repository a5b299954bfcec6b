//! The group of signed permutation matrices, fixed points of its tensor
//! powers, and the comparison of their dimension against the span of the
//! maps of even partitions.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate, Partition, Sign};
use crate::tensor::{checked_pow, span_dim, ExactMatrix};

/// Ceiling on the dimension for element enumeration.
pub const HYPEROCTAHEDRAL_DIM_BOUND: usize = 5;

/// Ceiling on dimension and tensor power for fixed-point ranks.
pub const FIX_DIM_BOUND: usize = 4;

/// The matrix sending e_j to signs[j] * e_{perm[j]}; entries of `perm` are
/// 1-based and form a permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedPermMatrix {
    pub perm: Vec<usize>,
    pub signs: Vec<Sign>,
}

impl SignedPermMatrix {
    pub fn new(perm: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n} permutation entries with {} signs",
                signs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidWord(format!("not a permutation of 1..={n}")));
            }
            seen[p - 1] = true;
        }
        Ok(SignedPermMatrix { perm, signs })
    }

    pub fn dimension(&self) -> usize {
        self.perm.len()
    }

    pub fn identity(n: usize) -> Self {
        SignedPermMatrix { perm: (1..=n).collect(), signs: vec![Sign::Plus; n] }
    }

    pub fn matrix(&self) -> Result<ExactMatrix> {
        let n = self.dimension();
        let mut m = ExactMatrix::zero(n, n)?;
        for j in 0..n {
            m.set(self.perm[j] - 1, j, BigInt::from(self.signs[j].as_i64()));
        }
        Ok(m)
    }

    pub fn compose(&self, other: &SignedPermMatrix) -> Result<SignedPermMatrix> {
        let n = self.dimension();
        if other.dimension() != n {
            return Err(Error::ShapeMismatch("signed permutation composition".into()));
        }
        // (self * other) e_j = other_sign[j] * self(e_{other_perm[j]}).
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for j in 0..n {
            let mid = other.perm[j] - 1;
            perm.push(self.perm[mid]);
            signs.push(other.signs[j] * self.signs[mid]);
        }
        Ok(SignedPermMatrix { perm, signs })
    }

    pub fn trace(&self) -> i64 {
        (0..self.dimension())
            .filter(|&j| self.perm[j] == j + 1)
            .map(|j| self.signs[j].as_i64())
            .sum()
    }
}

/// All signed permutation matrices of one dimension, 2^n * n! of them.
pub fn hyperoctahedral_elements(n: usize) -> Result<Vec<SignedPermMatrix>> {
    if n == 0 || n > HYPEROCTAHEDRAL_DIM_BOUND {
        return Err(Error::SizeGuard(format!(
            "dimension must lie in 1..={HYPEROCTAHEDRAL_DIM_BOUND}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity((1usize << n) * (1..=n).product::<usize>());
    for perm in (1..=n).permutations(n) {
        for mask in 0u32..(1 << n) {
            let signs: Vec<Sign> = (0..n)
                .map(|j| if mask >> j & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect();
            out.push(SignedPermMatrix { perm: perm.clone(), signs });
        }
    }
    Ok(out)
}

/// Dimension of the joint fixed space of the k-th tensor powers: the rank of
/// the sum of g tensored k times over all signed permutation matrices g.
/// Each summand has a single signed entry per column, so the sum accumulates
/// column by column.
pub fn fix_dim(n: usize, k: usize) -> Result<usize> {
    if n == 0 || n > FIX_DIM_BOUND || k > FIX_DIM_BOUND {
        return Err(Error::SizeGuard(format!(
            "fixed-point rank needs 1 <= n <= {FIX_DIM_BOUND} and k <= {FIX_DIM_BOUND}, got n={n}, k={k}"
        )));
    }
    let dim = checked_pow(n, k)?;
    let mut sum = ExactMatrix::zero(dim, dim)?;
    let mut digits = vec![0usize; k];
    for g in hyperoctahedral_elements(n)? {
        for col in 0..dim {
            let mut rest = col;
            for t in (0..k).rev() {
                digits[t] = rest % n;
                rest /= n;
            }
            let mut row = 0usize;
            let mut sign = Sign::Plus;
            for &j in &digits {
                row = row * n + (g.perm[j] - 1);
                sign = sign * g.signs[j];
            }
            let entry = sum.get(row, col) + BigInt::from(sign.as_i64());
            sum.set(row, col, entry);
        }
    }
    Ok(sum.rank())
}

/// Does the fixed space of the k-th tensor powers have the same dimension as
/// the span of the maps of the even partitions on (0, k)?
pub fn check_schur_weyl(n: usize, k: usize) -> Result<bool> {
    let parts: Vec<Partition> = enumerate(0, k)?.filter(|pi| pi.is_even()).collect();
    Ok(fix_dim(n, k)? == span_dim(&parts, n)?)
}
