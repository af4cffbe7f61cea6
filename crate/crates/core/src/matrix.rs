//! Dense exact matrices and the elimination routines built on them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

/// A column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Checked variant of [`Matrix::from_rows`].
    pub fn try_from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix::from_rows(rows))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vector]) -> Matrix {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
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

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major flattening.
    pub fn to_vector(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_vector(rows: usize, cols: usize, v: Vector) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix { rows, cols, data: v }
    }

    pub fn submatrix(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(r.len(), c.len(), |i, j| self[(r.start + i, c.start + j)].clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn field(&self) -> Option<Field> {
        self.data
            .iter()
            .try_fold(Field::Rational, |f, x| f.join(x.field()))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector size mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel. Each vector has its first nonzero entry equal to 1.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                normalize_leading(v)
            })
            .collect()
    }

    /// Exact determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<Scalar> {
        let n = self.ensure_square()?;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.ensure_square()?;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Some solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Monic characteristic polynomial `det(T·I − self)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<Polynomial> {
        let n = self.ensure_square()?;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let id = Matrix::identity(n);
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            m = &(self * &m) + &id.scale(&coeffs[n - k + 1]);
            let am = self * &m;
            coeffs[n - k] = -(am.trace() / Scalar::from_int(k as i64));
        }
        Ok(Polynomial::new(coeffs))
    }
}

fn normalize_leading(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if !lead.is_one() => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
        _ => v,
    }
}

/// Reduced echelon basis of the span of `vectors` (all of length `dim`).
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vector], v: &[Scalar]) -> bool {
    if v.iter().all(Scalar::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let m = Matrix::from_columns(basis);
    m.solve(v).is_some()
}

/// Extends `base` greedily by vectors of `candidates` (in order) that are
/// independent of everything chosen so far. Returns only the added vectors.
pub fn greedy_extension(base: &[Vector], candidates: &[Vector]) -> Vec<Vector> {
    let mut current: Vec<Vector> = base.to_vec();
    let mut added = Vec::new();
    for c in candidates {
        if !in_span(&current, c) {
            current.push(c.clone());
            added.push(c.clone());
        }
    }
    added
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product size mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
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

impl Sub<&Matrix> for &Matrix {
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

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
