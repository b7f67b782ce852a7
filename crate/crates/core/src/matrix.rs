//! Dense rational matrices with fraction-free elimination.
//!
//! Rows are cleared of denominators first (row scaling changes neither rank
//! nor kernel), then Bareiss elimination runs over the integers with the
//! first nonzero entry in column order as pivot.

use crate::rational::{lcm_denominators, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub data: Vec<Q>,
}

/// Outcome of [`exact_solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Q>),
    /// A particular solution (free variables set to zero) plus a kernel basis.
    Family {
        particular: Vec<Q>,
        kernel: Vec<Vec<Q>>,
    },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&Vec<Q>> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Family { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !matches!(self, Solution::Inconsistent)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rs: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| crate::rational::q(x)).collect()).collect();
        Self::from_rows(&rs)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        exact_rank(self)
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Q::one();
        }
        let (ints, scale) = integer_rows(self);
        let ech = bareiss(ints, n);
        if ech.pivots.len() < n {
            return Q::zero();
        }
        let mut d = Q::from_integer(ech.rows[n - 1][n - 1].clone());
        if ech.swaps % 2 == 1 {
            d = -d;
        }
        d / Q::from_integer(scale)
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            match exact_solve(self, &e) {
                Solution::Unique(x) => cols.push(x),
                _ => return None,
            }
        }
        Some(Matrix::from_cols(&cols))
    }
}

/// Rows multiplied by the lcm of their denominators, plus the product of the
/// multipliers.
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows)
        .map(|i| {
            let r = &m.data[i * m.cols..(i + 1) * m.cols];
            let l = lcm_denominators(r);
            scale *= &l;
            r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    (rows, scale)
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free row echelon form, pivoting only in the first `pivot_cols`
/// columns.
fn bareiss(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        let pv = piv_row[c].clone();
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..n {
                let num = &pv * &row[j] - &f * &piv_row[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division not exact");
                row[j] = quo;
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots, swaps }
}

pub fn exact_rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (ints, _) = integer_rows(m);
    bareiss(ints, m.cols).pivots.len()
}

/// Back substitution on an echelon form. `rhs` selects the augmented column.
fn back_substitute(ech: &Echelon, ncols: usize, fixed: &[(usize, Q)], rhs: Option<usize>) -> Vec<Q> {
    let mut x = vec![Q::zero(); ncols];
    for (j, v) in fixed {
        x[*j] = v.clone();
    }
    for (k, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut s = match rhs {
            Some(b) => Q::from_integer(row[b].clone()),
            None => Q::zero(),
        };
        for j in pc + 1..ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                s -= Q::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = s / Q::from_integer(row[pc].clone());
    }
    x
}

/// Right kernel basis: one vector per free column, with that entry 1 and
/// the other free entries 0.
pub fn exact_kernel(m: &Matrix) -> Vec<Vec<Q>> {
    let n = m.cols;
    if m.rows == 0 {
        return (0..n).map(|j| (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    }
    let (ints, _) = integer_rows(m);
    let ech = bareiss(ints, n);
    let free: Vec<usize> = (0..n).filter(|j| !ech.pivots.contains(j)).collect();
    free.iter().map(|&f| back_substitute(&ech, n, &[(f, Q::one())], None)).collect()
}

pub fn exact_solve(a: &Matrix, b: &[Q]) -> Solution {
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let (ints, _) = integer_rows(&aug);
    let ech = bareiss(ints, n);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return Solution::Inconsistent;
    }
    let x = back_substitute(&ech, n, &[], Some(n));
    if rank == n {
        Solution::Unique(x)
    } else {
        Solution::Family { particular: x, kernel: exact_kernel(a) }
    }
}

/// Is `v` in the column span of the given vectors?
pub fn in_span(vectors: &[Vec<Q>], v: &[Q]) -> bool {
    if vectors.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    exact_solve(&Matrix::from_cols(vectors), v).is_consistent()
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    exact_rank(&Matrix::from_rows(vectors))
}

pub fn kron_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&Matrix::identity(3)), 3);
        assert_eq!(exact_rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(exact_rank(&Matrix::from_i64(&[&[0, 0], &[0, 2], &[1, 0]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(exact_kernel(&Matrix::identity(4)).is_empty());
        assert_eq!(exact_kernel(&Matrix::from_i64(&[&[1, -1]])), vec![vec![q(1), q(1)]]);
        // contraction of xy^2 by second-order operators: columns dx^2, dxdy, dy^2
        let cat2 = Matrix::from_i64(&[&[0, 0, 2], &[0, 2, 0]]);
        assert_eq!(exact_kernel(&cat2), vec![vec![q(1), q(0), q(0)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), qf(-1, 2), q(7)];
        assert_eq!(exact_solve(&Matrix::identity(3), &b), Solution::Unique(b.clone()));
        assert_eq!(exact_solve(&Matrix::zeros(2, 2), &[q(1), q(0)]), Solution::Inconsistent);
        // squares of (1:0), (1:1), (0:1) against (x+2y)^2 in x^2, xy, y^2
        let a = Matrix::from_i64(&[&[1, 1, 0], &[0, 2, 0], &[0, 1, 1]]);
        assert_eq!(exact_solve(&a, &[q(1), q(4), q(4)]), Solution::Unique(vec![q(-1), q(2), q(2)]));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::from_i64(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        // 0*(1) - 2*(1) + 1*(0-3) = -5
        assert_eq!(a.det(), q(-5));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_rows() {
        let a = Matrix::from_rows(&[vec![qf(1, 2), qf(1, 3)], vec![qf(3, 2), q(1)]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.det(), q(0));
    }
}
