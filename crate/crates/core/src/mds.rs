//! MDS verification.
//!
//! A `k x n` generator matrix spans an MDS code iff every `k` columns are
//! linearly independent. Small cases are checked exhaustively; otherwise a
//! seeded sample of column subsets is checked. Minimum distance by full
//! codeword enumeration is available when `q^k` is small.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::field::{FieldElement, FiniteField};
use crate::grs::GrsCode;
use crate::matrix::Matrix;

/// Above this dimension a column subset is checked through the Vandermonde
/// determinant factorization instead of Gaussian elimination.
pub const ELIMINATION_MAX_K: usize = 128;

/// Default ceiling for exhaustive subset checks.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Default ceiling on `q^k` for codeword enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsBudget {
    /// Run exhaustively when `C(n, k)` is at most this.
    pub exhaustive_limit: u64,
    /// Random subsets to test otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for MdsBudget {
    fn default() -> Self {
        MdsBudget { exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT, samples: 1000, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum MdsVerdict {
    Proven { subsets: u64 },
    SampledPass { samples: usize },
    Fail { witness: Vec<usize> },
}

impl MdsVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, MdsVerdict::Fail { .. })
    }
}

/// How a single column subset is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetMethod {
    Elimination,
    Vandermonde,
}

impl SubsetMethod {
    pub fn for_dimension(k: usize) -> SubsetMethod {
        if k <= ELIMINATION_MAX_K {
            SubsetMethod::Elimination
        } else {
            SubsetMethod::Vandermonde
        }
    }
}

/// Rank of the `k x k` submatrix on `cols` (column `n_finite` is ∞), by
/// Gaussian elimination.
pub fn subset_rank(code: &GrsCode, cols: &[usize]) -> usize {
    let columns: Vec<Vec<FieldElement>> = cols.iter().map(|&j| code.column(j)).collect();
    let k = code.dimension();
    let mut m = Matrix::zeros(k, cols.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m.rank(code.field())
}

/// Determinant (up to sign) of the `k x k` submatrix on `cols`.
///
/// Finite columns are `v_j (1, a_j, ..., a_j^(k-1))`, so the submatrix is a
/// scaled Vandermonde matrix; the ∞ column is `e_(k-1)` and expanding along it
/// leaves the Vandermonde block of the remaining `k-1` points.
pub fn subset_determinant(code: &GrsCode, cols: &[usize]) -> FieldElement {
    let f = code.field();
    let nf = code.evaluation().finite_len();
    let pts = code.evaluation().points();
    let finite: Vec<usize> = cols.iter().copied().filter(|&j| j < nf).collect();
    let twist = f.product(finite.iter().map(|&j| code.twist()[j]));
    let neg: Vec<FieldElement> = finite.iter().map(|&i| f.neg(pts[i])).collect();
    // Exponents of the differences are summed and reduced once at the end.
    let mut exp_sum: u64 = 0;
    for (x, &nx) in neg.iter().enumerate() {
        for &j in &finite[x + 1..] {
            match f.add(pts[j], nx).exponent() {
                None => return FieldElement::ZERO,
                Some(e) => exp_sum += e as u64,
            }
        }
    }
    f.mul(twist, f.element(exp_sum))
}

pub fn subset_full_rank(code: &GrsCode, cols: &[usize], method: SubsetMethod) -> bool {
    match method {
        SubsetMethod::Elimination => subset_rank(code, cols) == code.dimension(),
        SubsetMethod::Vandermonde => !subset_determinant(code, cols).is_zero(),
    }
}

pub fn mds_check(code: &GrsCode, budget: &MdsBudget) -> MdsVerdict {
    let n = code.length();
    let k = code.dimension();
    let method = SubsetMethod::for_dimension(k);
    let total = arith::binomial(n as u64, k as u64);
    if total <= budget.exhaustive_limit {
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            if !subset_full_rank(code, &cols, method) {
                return MdsVerdict::Fail { witness: cols };
            }
            if !next_combination(&mut cols, n) {
                break;
            }
        }
        return MdsVerdict::Proven { subsets: total };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let subsets: Vec<Vec<usize>> = (0..budget.samples)
        .map(|_| {
            let mut s = index::sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    let bad = subsets.into_par_iter().find_first(|cols| !subset_full_rank(code, cols, method));
    match bad {
        Some(witness) => MdsVerdict::Fail { witness },
        None => MdsVerdict::SampledPass { samples: budget.samples },
    }
}

/// Advances `cols` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(cols: &mut [usize], n: usize) -> bool {
    let k = cols.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if cols[i] < n - k + i {
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum Hamming distance by enumerating every codeword, or `None` when
/// `q^k` exceeds `limit`.
///
/// Only messages whose leading nonzero coefficient is 1 are visited, since
/// scalar multiples share a weight.
pub fn minimum_distance(code: &GrsCode, limit: u64) -> Option<usize> {
    let f = code.field();
    let k = code.dimension();
    let q = f.order() as u64;
    if q.checked_pow(k as u32).is_none_or(|total| total > limit) {
        return None;
    }
    let g = code.generator_matrix();
    let rows: Vec<Vec<FieldElement>> = (0..k).map(|i| g.row(i).to_vec()).collect();
    let elements: Vec<FieldElement> = f.elements().collect();
    let best = (0..k)
        .into_par_iter()
        .map(|lead| {
            let mut best = usize::MAX;
            let start = rows[lead].clone();
            descend(f, &rows, &elements, lead + 1, &start, &mut best);
            best
        })
        .min()?;
    Some(best)
}

fn descend(
    f: &FiniteField,
    rows: &[Vec<FieldElement>],
    elements: &[FieldElement],
    level: usize,
    partial: &[FieldElement],
    best: &mut usize,
) {
    if level == rows.len() {
        let w = partial.iter().filter(|x| !x.is_zero()).count();
        *best = (*best).min(w);
        return;
    }
    let row = &rows[level];
    let mut next = vec![FieldElement::ZERO; partial.len()];
    for &c in elements {
        for ((slot, &p), &r) in next.iter_mut().zip(partial).zip(row) {
            *slot = f.add(p, f.mul(c, r));
        }
        descend(f, rows, elements, level + 1, &next, best);
    }
}
