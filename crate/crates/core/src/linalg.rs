//! Small dense linear algebra: the kernels the geometry needs and nothing more.
//!
//! Sizes here are tiny (m ≤ 12, action matrices up to m³×m²), so everything
//! is plain row-major `Vec<f64>` with straightforward loops.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix { rows: rows.len(), cols: N, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn from_columns(cols: &[Vec<f64>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn zip(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn pow(&self, n: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn det(&self) -> f64 {
        Lu::new(self).det()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        Lu::new(self).inverse()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &Matrix) -> Lu {
        assert!(a.is_square(), "LU of a non-square matrix");
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| lu[(x, k)].abs().total_cmp(&lu[(y, k)].abs())).unwrap();
            if lu[(p, k)] == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= f * lu[(k, j)];
                    }
                }
            }
        }
        Lu { lu, perm, sign, singular }
    }

    pub fn det(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        (0..self.lu.rows).fold(self.sign, |d, i| d * self.lu[(i, i)])
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn solve(&self, b: &[f64]) -> Option<Vec<f64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.rows;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.lu.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            cols.push(self.solve(&e)?);
        }
        Some(Matrix::from_columns(&cols))
    }
}

/// Adjugate-transpose (cofactor) matrix, `C_ij = (−1)^{i+j} det(minor_ij)`.
/// Defined for singular input; for symmetric input it is symmetric.
pub fn cofactor(a: &Matrix) -> Matrix {
    assert!(a.is_square(), "cofactor of a non-square matrix");
    let n = a.rows;
    if n == 1 {
        return Matrix::identity(1);
    }
    Matrix::from_fn(n, n, |i, j| {
        let minor =
            Matrix::from_fn(n - 1, n - 1, |r, c| a[(if r < i { r } else { r + 1 }, if c < j { c } else { c + 1 })]);
        let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        s * minor.det()
    })
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues (ascending) and the matching orthonormal eigenvectors
/// as columns.
pub fn sym_eigen(a: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(a.is_square(), "eigen of a non-square matrix");
    let n = a.rows;
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if libm::sqrt(off) <= 1e-14 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 { 1.0 } else { -1.0 } / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                rotate_cols(&mut a, p, q, c, s);
                rotate_rows(&mut a, p, q, c, s);
                rotate_cols(&mut v, p, q, c, s);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
    let vals = order.iter().map(|&i| a[(i, i)]).collect();
    let vecs = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (vals, vecs)
}

fn rotate_cols(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.rows {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * x - s * y;
        a[(k, q)] = s * x + c * y;
    }
}

fn rotate_rows(a: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.cols {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * x - s * y;
        a[(q, k)] = s * x + c * y;
    }
}

/// Singular values and right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Descending.
    pub values: Vec<f64>,
    /// Columns are right singular vectors, in the order of `values`.
    pub v: Matrix,
}

/// One-sided (Hestenes) Jacobi SVD: orthogonalize the columns of `a` by plane
/// rotations, accumulating the rotations into `V`.
pub fn svd(a: &Matrix) -> Svd {
    let (r, c) = (a.rows, a.cols);
    let mut u = a.clone();
    let mut v = Matrix::identity(c);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for k in 0..r {
                    let (x, y) = (u[(k, p)], u[(k, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 || gamma.abs() <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 { 1.0 } else { -1.0 } / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let cs = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = cs * t;
                rotate_cols(&mut u, p, q, cs, sn);
                rotate_cols(&mut v, p, q, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..c).map(|j| norm(&u.column(j))).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    Svd { values: order.iter().map(|&j| norms[j]).collect(), v: Matrix::from_fn(c, c, |i, j| v[(i, order[j])]) }
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &Matrix) -> Matrix {
    assert!(a.is_square(), "exp of a non-square matrix");
    let n = a.rows;
    let norm1 = (0..n).map(|j| (0..n).map(|i| a[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut s = 1.0;
    while norm1 * s > 0.5 {
        s *= 0.5;
        squarings += 1;
    }
    let b = a.scale(s);
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for k in 1..=20 {
        term = term.mul(&b).scale(1.0 / k as f64);
        sum = sum.add(&term);
        if term.max_abs() < 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-2.0f64..2.0, n * n).prop_map(move |d| Matrix::from_vec(n, n, d))
    }

    #[test]
    fn det_of_triangular_and_permuted() {
        let a = Matrix::from_rows(&[[0.0, 2.0, 0.0], [3.0, 0.0, 0.0], [0.0, 0.0, 4.0]]);
        assert!((a.det() + 24.0).abs() < 1e-12);
        assert_eq!(Matrix::zeros(3, 3).det(), 0.0);
    }

    #[test]
    fn cofactor_small_cases() {
        let c = cofactor(&Matrix::diag(&[2.0, 3.0]));
        assert_eq!(c, Matrix::diag(&[3.0, 2.0]));
        assert_eq!(cofactor(&Matrix::identity(4)), Matrix::identity(4));
    }

    #[test]
    fn expm_of_rotation_generator() {
        let t = 0.7;
        let g = Matrix::from_rows(&[[0.0, -t], [t, 0.0]]);
        let e = expm(&g);
        let want = Matrix::from_rows(&[[libm::cos(t), -libm::sin(t)], [libm::sin(t), libm::cos(t)]]);
        assert!(e.sub(&want).max_abs() < 1e-14);
    }

    #[test]
    fn svd_detects_rank() {
        let a = Matrix::from_rows(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]);
        let s = svd(&a);
        assert!(s.values[2] < 1e-12 * s.values[0]);
        let null = s.v.column(2);
        assert!(max_abs(&a.mul_vec(&null)) < 1e-12);
    }

    proptest! {
        #[test]
        fn lu_inverse_roundtrip(a in mat(4)) {
            prop_assume!(a.det().abs() > 1e-3);
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).sub(&Matrix::identity(4)).max_abs() < 1e-8);
        }

        #[test]
        fn cofactor_is_det_times_inverse(a in mat(3)) {
            let c = cofactor(&a);
            let want = Matrix::identity(3).scale(a.det());
            prop_assert!(a.mul(&c.transpose()).sub(&want).max_abs() < 1e-10);
        }

        #[test]
        fn jacobi_reconstructs(a in mat(5)) {
            let s = a.add(&a.transpose());
            let (vals, v) = sym_eigen(&s);
            let recon = v.mul(&Matrix::diag(&vals)).mul(&v.transpose());
            prop_assert!(recon.sub(&s).max_abs() < 1e-10);
            prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn svd_values_match_eigen_of_gram(a in mat(4)) {
            let s = svd(&a);
            let (vals, _) = sym_eigen(&a.transpose().mul(&a));
            for (sv, ev) in s.values.iter().zip(vals.iter().rev()) {
                prop_assert!((sv * sv - ev.max(0.0)).abs() < 1e-9 * (1.0 + ev.abs()));
            }
        }
    }
}
