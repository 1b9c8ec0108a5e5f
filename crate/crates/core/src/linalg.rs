//! Exact linear algebra: incremental sparse echelon forms over the session
//! field, and fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{Field, Rational, Scalar};

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Row-echelon basis of a subspace of `field^ncols`, built incrementally.
///
/// Every stored row has leading coefficient 1 at its pivot column. Columns at
/// or beyond `pivot_limit` never become pivots; this is what lets one matrix
/// carry an identity block and read off kernel vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    pivot_limit: usize,
    pivot_row: Vec<usize>,
    rows: Vec<SparseVec>,
}

const NONE: usize = usize::MAX;

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Self::with_pivot_limit(field, ncols, ncols)
    }

    pub fn with_pivot_limit(field: Field, ncols: usize, pivot_limit: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivot_limit,
            pivot_row: vec![NONE; pivot_limit],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.iter().enumerate().filter(|(_, r)| **r != NONE).map(|(c, _)| c)
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        c < self.pivot_limit && self.pivot_row[c] != NONE
    }

    fn densify(&self, v: &SparseVec) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.ncols];
        for (i, x) in v {
            acc[*i] = x.clone();
        }
        acc
    }

    fn eliminate(&self, acc: &mut [Scalar], c: usize) -> bool {
        let r = self.pivot_row[c];
        if r == NONE {
            return false;
        }
        let f = acc[c].clone();
        for (j, x) in &self.rows[r] {
            acc[*j] = acc[*j].sub_mul(&f, x);
        }
        true
    }

    /// The unique remainder of `v` with zeros in every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let Some(first) = v.first().map(|e| e.0) else {
            return Vec::new();
        };
        let mut acc = self.densify(v);
        for c in first..self.pivot_limit {
            if !acc[c].is_zero() {
                self.eliminate(&mut acc, c);
            }
        }
        sparsify(acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns `None` if the rank grew; otherwise the
    /// remainder, which vanishes below `pivot_limit`.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let Some(first) = v.first().map(|e| e.0) else {
            return Some(Vec::new());
        };
        let mut acc = self.densify(v);
        for c in first..self.pivot_limit {
            if acc[c].is_zero() || self.eliminate(&mut acc, c) {
                continue;
            }
            let inv = acc[c].inv();
            let row: SparseVec = acc
                .into_iter()
                .enumerate()
                .skip(c)
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.mul(&inv)))
                .collect();
            self.pivot_row[c] = self.rows.len();
            self.rows.push(row);
            return None;
        }
        Some(sparsify(acc))
    }
}

fn sparsify(acc: Vec<Scalar>) -> SparseVec {
    acc.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Rank of the span of `vectors` in `field^ncols`.
pub fn rank(field: Field, ncols: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{c : sum_j c_j columns[j] = 0}`, the columns living in
/// `field^nrows`. Kernel vectors are indexed by column number; the basis is
/// produced column by column, so the output is deterministic.
pub fn kernel_of_columns(field: Field, nrows: usize, columns: &[SparseVec]) -> Vec<SparseVec> {
    let n = columns.len();
    let mut e = Echelon::with_pivot_limit(field, nrows + n, nrows);
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        v.push((nrows + j, field.one()));
        if let Some(res) = e.insert(&v) {
            out.push(res.into_iter().map(|(i, x)| (i - nrows, x)).collect());
        }
    }
    out
}

/// Dense matrix of `Scalar`s converted to sparse columns.
pub fn dense_columns(rows: &[Vec<Scalar>], ncols: usize) -> Vec<SparseVec> {
    (0..ncols)
        .map(|j| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| !r[j].is_zero())
                .map(|(i, r)| (i, r[j].clone()))
                .collect()
        })
        .collect()
}

/// Forward fraction-free elimination in place; returns the pivot columns.
/// Each entry stays an integer: the step-`k` update divides exactly by the
/// previous pivot (Bareiss).
fn bareiss_forward(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..m[i].len() {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut m = matrix.to_vec();
    bareiss_forward(&mut m, ncols).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

/// Solves `a x = b` over the rationals by fraction-free elimination of the
/// augmented matrix followed by exact back substitution.
pub fn bareiss_solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Solution {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = bareiss_forward(&mut m, n + 1);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut s = Rational::from_bigint(m[r][n].clone());
        for j in c + 1..n {
            s = s.sub(&Rational::from_bigint(m[r][j].clone()).mul(&x[j]));
        }
        x[c] = s.div(&Rational::from_bigint(m[r][c].clone()));
    }
    Solution::Unique(x)
}
