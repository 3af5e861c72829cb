//! Dense matrices over `BigRational` with Gauss–Jordan elimination.
//!
//! Matrices met here are small and very sparse (entries start out 0/1), so
//! the elimination skips zero entries rather than being clever about fill-in.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect(),
        }
    }

    /// The matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        // representations are sparse; walk only the nonzeros of each row of `other`
        let support: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() || support[k].is_empty() {
                    continue;
                }
                for &j in &support[k] {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set(j, i, x.clone());
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            if !inv.is_one() {
                for j in c..m.cols {
                    let idx = r * m.cols + j;
                    if !m.data[idx].is_zero() {
                        m.data[idx] *= &inv;
                    }
                }
            }
            let support: Vec<usize> = (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for &j in &support {
                    let delta = &factor * m.get(r, j);
                    m.data[i * m.cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}` as the columns of the result.
    pub fn null_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, Q::one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    out.set(p, k, -x.clone());
                }
            }
        }
        out
    }

    /// Some `X` with `self·X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Indices of standard basis vectors completing the column space to the whole space.
    pub fn complement_basis(&self) -> Vec<usize> {
        let (_, pivots) = self.hstack(&Matrix::identity(self.rows)).rref();
        pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect()
    }
}

/// Null space of a sparse system given row by row (`(column, coefficient)` pairs).
///
/// Rows are folded into an echelon basis one at a time, so an overdetermined
/// system never has to be stored densely.
pub fn sparse_null_space(rows: impl IntoIterator<Item = Vec<(usize, Q)>>, ncols: usize) -> Vec<Vec<Q>> {
    use std::collections::BTreeMap;
    // pivot column -> row with leading coefficient 1 at that column
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for row in rows {
        let mut work: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, x) in row {
            if !x.is_zero() {
                *work.entry(c).or_insert_with(Q::zero) += x;
            }
        }
        work.retain(|_, x| !x.is_zero());
        loop {
            let Some((&lead, coef)) = work.iter().next() else {
                break;
            };
            match pivots.get(&lead) {
                Some(prow) => {
                    let coef = coef.clone();
                    for (&c, x) in prow {
                        let e = work.entry(c).or_insert_with(Q::zero);
                        *e -= &coef * x;
                        if e.is_zero() {
                            work.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = coef.recip();
                    for x in work.values_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(lead, std::mem::take(&mut work));
                    break;
                }
            }
        }
        if pivots.len() == ncols {
            break;
        }
    }
    // back substitution to reduced form, last pivot first
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &p in &cols {
        let mut row = pivots.remove(&p).expect("pivot");
        loop {
            let next = row.keys().find(|&&c| c != p && pivots.contains_key(&c)).copied();
            let Some(c) = next else { break };
            let coef = row.remove(&c).expect("entry");
            for (&d, x) in &pivots[&c] {
                if d == c {
                    continue;
                }
                let e = row.entry(d).or_insert_with(Q::zero);
                *e -= &coef * x;
                if e.is_zero() {
                    row.remove(&d);
                }
            }
        }
        pivots.insert(p, row);
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[f] = Q::one();
        for (&p, row) in &pivots {
            if let Some(x) = row.get(&f) {
                v[p] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}
