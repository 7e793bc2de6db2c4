//! Dense and sparse matrices over exact rationals.
//!
//! Everything downstream (structure constants, action matrices, cochain
//! operators, jet blocks) is stored in these types. The dense matrix skips
//! zero entries in products, which matters because most operators here are
//! very sparse even when stored densely.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Self::from_fn(nr, nc, |r, c| rows[r][c].clone())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        Self::from_fn(nr, nc, |r, c| rat(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).fold(Rat::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`: index (i*other.rows + k, j*other.cols + l).
    pub fn kron(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            m[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, n: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            if sel != prow {
                for k in 0..self.cols {
                    self.data.swap(sel * self.cols + k, prow * self.cols + k);
                }
            }
            let inv = self[(prow, c)].recip();
            for k in c..self.cols {
                if !self[(prow, k)].is_zero() {
                    let v = &self[(prow, k)] * &inv;
                    self[(prow, k)] = v;
                }
            }
            let pivot_row: Vec<(usize, Rat)> = (c..self.cols)
                .filter(|&k| !self[(prow, k)].is_zero())
                .map(|k| (k, self[(prow, k)].clone()))
                .collect();
            for r in 0..self.rows {
                if r == prow || self[(r, c)].is_zero() {
                    continue;
                }
                let factor = self[(r, c)].clone();
                for (k, v) in &pivot_row {
                    let d = &factor * v;
                    self[(r, *k)] -= d;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of the null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                if !r[(i, f)].is_zero() {
                    k[(p, j)] = -r[(i, f)].clone();
                }
            }
        }
        k
    }

    /// Basis of the column space, chosen among the original columns.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = self.hstack(&Matrix::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.submatrix(&rows, &cols))
    }

    /// Solve `self * X = rhs`; returns `None` if inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = aug[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Symmetric positive definiteness via exact LDLᵀ pivots.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_square() || *self != self.transpose() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let p = a[(k, k)].clone();
            if !p.is_positive() {
                return false;
            }
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] / &p;
                for j in k..n {
                    if !a[(k, j)].is_zero() {
                        let d = &f * &a[(k, j)];
                        a[(i, j)] -= d;
                    }
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| to_f64(&self[(r, c)]))
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_else(Rat::zero)
    }
}

pub fn to_f64(q: &Rat) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul<Matrix> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add<Matrix> for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub<Matrix> for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }
}

/// Row-major sparse matrix used for assembling operators on large spaces
/// before they are cut into dense weight blocks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Rat>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.add_to(i, i, &Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let slot = self.entries[r].entry(c).or_insert_with(Rat::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                s.add_to(r, c, &m[(r, c)]);
            }
        }
        s
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v.clone();
        }
        m
    }

    /// Dense block on the given row and column index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut position = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            position[c] = j;
        }
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, v) in self.entries[r].iter() {
                let j = position[*c];
                if j != usize::MAX {
                    m[(i, j)] = v.clone();
                }
            }
        }
        m
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for r in 0..self.rows {
            for (k, a) in self.entries[r].iter() {
                for (c, b) in rhs.entries[*k].iter() {
                    out.add_to(r, *c, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (r, c, v) in rhs.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.add_to(r, c, &(v * s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.iter() {
            for (k, l, b) in other.iter() {
                out.add_to(i * other.rows + k, j * other.cols + l, &(a * b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_kernel_and_inverse() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        let a = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m.inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&Matrix::from_i64(&[&[1], &[2]])).is_none());
        let x = a.solve(&Matrix::from_i64(&[&[3], &[3]])).unwrap();
        assert_eq!(&a * &x, Matrix::from_i64(&[&[3], &[3]]));
    }

    #[test]
    fn positive_definite() {
        assert!(Matrix::from_i64(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!Matrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
    }

    #[test]
    fn sparse_block_matches_dense() {
        let d = Matrix::from_i64(&[&[1, 0, 2], &[0, 3, 0], &[4, 0, 5]]);
        let s = SparseMatrix::from_dense(&d);
        assert_eq!(s.block(&[0, 2], &[2, 0]), Matrix::from_i64(&[&[2, 1], &[5, 4]]));
        assert_eq!(s.mul(&s).to_dense(), &d * &d);
        assert_eq!(s.kron(&s).to_dense(), d.kron(&d));
    }
}
