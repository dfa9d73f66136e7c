//! Small dense linear algebra over [`Real`].
//!
//! Dimensions here never exceed a dozen, so plain row-major storage with
//! textbook algorithms (partial-pivot elimination, cyclic Jacobi) is all that
//! is needed, and it works unchanged for the double-double scalar.

use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
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

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// Largest absolute off-diagonal entry.
    pub fn max_abs_off_diagonal(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].abs());
                }
            }
        }
        m
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if a[(r, col)].abs() > a[(pivot, col)].abs() {
                    pivot = r;
                }
            }
            if a[(pivot, col)] == T::zero() {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det = det * p;
            for r in col + 1..n {
                let factor = a[(r, col)] / p;
                if factor == T::zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] = a[(r, j)] - factor * v;
                }
            }
        }
        det
    }

    pub fn trace(&self) -> T {
        self.diagonal().into_iter().fold(T::zero(), |a, b| a + b)
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: Matrix<T>,
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
///
/// Only the upper triangle is read; the input is symmetrised first.
pub fn symmetric_eigen<T: Real>(m: &Matrix<T>) -> SymmetricEigen<T> {
    assert_eq!(m.rows(), m.cols(), "eigen of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            let s = (a[(i, j)] + a[(j, i)]) * T::lit(0.5);
            a[(i, j)] = s;
            a[(j, i)] = s;
        }
    }
    let mut v = Matrix::identity(n);
    let tiny = T::unit_roundoff() * T::unit_roundoff();
    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for i in 0..n {
            diag = diag + a[(i, i)] * a[(i, i)];
            for j in i + 1..n {
                off = off + a[(i, j)] * a[(i, j)];
            }
        }
        if off <= tiny * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_columns(&order.iter().map(|&i| v.column(i)).collect::<Vec<_>>());
    SymmetricEigen { values, vectors }
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky<T: Real>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if d <= T::zero() {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

/// Solves `L x = b` for lower-triangular `L`.
pub fn forward_substitute<T: Real>(l: &Matrix<T>, b: &[T]) -> Vec<T> {
    let n = l.rows();
    let mut x = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Eigenvalues of `first⁻¹ · second` for symmetric `second` and symmetric
/// positive definite `first`, through the congruent symmetric problem
/// `L⁻¹ second L⁻ᵀ`. Eigenvectors are returned in the original coordinates
/// (columns, `first`-orthonormal).
pub fn generalized_symmetric_eigen<T: Real>(
    second: &Matrix<T>,
    first: &Matrix<T>,
) -> Option<SymmetricEigen<T>> {
    let n = first.rows();
    let l = cholesky(first)?;
    // C = L⁻¹ B L⁻ᵀ, built column by column.
    let mut y = Matrix::zeros(n, n);
    for j in 0..n {
        let col = forward_substitute(&l, &second.column(j));
        for i in 0..n {
            y[(i, j)] = col[i];
        }
    }
    let mut c = Matrix::zeros(n, n);
    for i in 0..n {
        let row = forward_substitute(&l, &y.row(i));
        for j in 0..n {
            c[(i, j)] = row[j];
        }
    }
    let eig = symmetric_eigen(&c);
    // Back-transform: v = L⁻ᵀ w.
    let lt = l.transpose();
    let mut vectors = Matrix::zeros(n, n);
    for j in 0..n {
        let w = eig.vectors.column(j);
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut s = w[i];
            for k in i + 1..n {
                s = s - lt[(i, k)] * x[k];
            }
            x[i] = s / lt[(i, i)];
        }
        for i in 0..n {
            vectors[(i, j)] = x[i];
        }
    }
    Some(SymmetricEigen { values: eig.values, vectors })
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scaled<T: Real>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

/// `a + s·b`
pub fn axpy<T: Real>(a: &[T], s: T, b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + s * y).collect()
}

pub fn max_abs<T: Real>(a: &[T]) -> T {
    a.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

/// Generalized vector product of `n - 1` vectors in `Eⁿ`.
///
/// Component `k` is the cofactor of the `k`-th basis vector in the formal
/// determinant whose first row is `(ê₁, …, êₙ)` and whose remaining rows are
/// the inputs, so `⟨v₁ × … × vₙ₋₁, y⟩ = det[y; v₁; …; vₙ₋₁]`.
pub fn generalized_cross<T: Real>(vectors: &[Vec<T>]) -> Vec<T> {
    let n = vectors.len() + 1;
    assert!(vectors.iter().all(|v| v.len() == n), "need n-1 vectors of length n");
    (0..n)
        .map(|k| {
            let minor = Matrix::from_rows(
                &vectors
                    .iter()
                    .map(|v| v.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect())
                    .collect::<Vec<Vec<T>>>(),
            );
            let cof = if n == 1 { T::one() } else { minor.determinant() };
            if k % 2 == 0 {
                cof
            } else {
                -cof
            }
        })
        .collect()
}
