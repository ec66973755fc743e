//! Value types and the change-of-basis action.
//!
//! Storage: `Γ_ij^k` lives at `coeffs[(i*m + j)*m + k]` — two lower indices
//! first, the upper index last. A `LinearMap` stores `A` with column `j` the
//! image of `e_j`, so `A^a_i = entries[(a, i)]`.

use alloc::vec::Vec;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    m: usize,
    coeffs: Vec<f64>,
}

impl Christoffel {
    pub fn new(m: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != m * m * m {
            return Err(Error::BadLength { expected: m * m * m, found: coeffs.len() });
        }
        if let Some(index) = coeffs.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Christoffel { m, coeffs })
    }

    pub fn zeros(m: usize) -> Self {
        Christoffel { m, coeffs: alloc::vec![0.0; m * m * m] }
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut g = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    g.coeffs[(i * m + j) * m + k] = f(i, j, k);
                }
            }
        }
        g
    }

    /// Builds a torsion-free tensor from `(i, j, k, value)` entries, each
    /// written to both `Γ_ij^k` and `Γ_ji^k`.
    pub fn symmetric_from(m: usize, entries: &[(usize, usize, usize, f64)]) -> Self {
        let mut g = Self::zeros(m);
        for &(i, j, k, v) in entries {
            g.set_symmetric(i, j, k, v);
        }
        g
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let m = self.m;
        self.coeffs[(i * m + j) * m + k] = v;
    }

    pub(crate) fn set_symmetric(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.set(i, j, k, v);
        self.set(j, i, k, v);
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.coeffs[(i * self.m + j) * self.m + k]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn sub(&self, other: &Christoffel) -> Christoffel {
        assert_eq!(self.m, other.m, "dimension");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Christoffel { m: self.m, coeffs }
    }

    pub fn scale(&self, s: f64) -> Christoffel {
        Christoffel { m: self.m, coeffs: self.coeffs.iter().map(|x| x * s).collect() }
    }

    /// `Γ_ij^k − Γ_ji^k`.
    pub fn torsion(&self) -> Christoffel {
        Christoffel::from_fn(self.m, |i, j, k| self.get(i, j, k) - self.get(j, i, k))
    }

    pub fn is_torsion_free(&self, tol: f64) -> bool {
        self.torsion().max_abs() <= tol
    }

    pub fn symmetrized(&self) -> Christoffel {
        Christoffel::from_fn(self.m, |i, j, k| 0.5 * (self.get(i, j, k) + self.get(j, i, k)))
    }
}

/// `is_torsion_free` at the default equality tolerance.
pub fn is_torsion_free(g: &Christoffel) -> bool {
    g.is_torsion_free(Tolerances::DEFAULT.equality)
}

/// A general bilinear form, `entries[(j,k)]` the `dx^j ⊗ dx^k` component.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTensor(pub Matrix);

/// A symmetric bilinear form; symmetrized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymForm(Matrix);

impl TwoTensor {
    pub fn m(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn symmetric_part(&self) -> SymForm {
        SymForm::new(self.0.clone())
    }
}

impl SymForm {
    pub fn new(a: Matrix) -> Self {
        assert!(a.is_square(), "form must be square");
        let n = a.rows();
        SymForm(Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)])))
    }

    pub fn diag(d: &[f64]) -> Self {
        SymForm(Matrix::diag(d))
    }

    pub fn m(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// `A ∈ GL(m)`, column `j` the image of `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap(pub Matrix);

impl LinearMap {
    pub fn new(a: Matrix) -> Self {
        assert!(a.is_square(), "linear map must be square");
        LinearMap(a)
    }

    pub fn identity(m: usize) -> Self {
        LinearMap(Matrix::identity(m))
    }

    pub fn m(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.0.inverse().map(LinearMap)
    }
}

/// Ricci signature. `p` counts negative (timelike) eigenvalues, `q` positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub degenerate: bool,
}

fn checked_inverse(a: &LinearMap, m: usize) -> Result<Matrix> {
    if a.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: a.m() });
    }
    let det = a.det();
    let tol = Tolerances::DEFAULT.det;
    if det.is_nan() || det.abs() <= tol {
        return Err(Error::SingularMap { det, tol });
    }
    a.0.inverse().ok_or(Error::SingularMap { det, tol })
}

/// Change of basis: `(AΓ)_ij^k = Γ_ab^c A^a_i A^b_j (A⁻¹)^k_c`.
///
/// This is a right action, `act(A, act(B, Γ)) = act(BA, Γ)`, and it makes the
/// Ricci tensor transform as the pullback `AᵀρA`.
pub fn act(a: &LinearMap, g: &Christoffel) -> Result<Christoffel> {
    let m = g.m();
    let inv = checked_inverse(a, m)?;
    let a = &a.0;
    // Contract one index at a time: upper, then second lower, then first lower.
    let mut t1 = alloc::vec![0.0; m * m * m];
    for ab in 0..m * m {
        for k in 0..m {
            t1[ab * m + k] = (0..m).map(|c| inv[(k, c)] * g.coeffs[ab * m + c]).sum();
        }
    }
    let mut t2 = alloc::vec![0.0; m * m * m];
    for x in 0..m {
        for j in 0..m {
            for k in 0..m {
                t2[(x * m + j) * m + k] = (0..m).map(|b| a[(b, j)] * t1[(x * m + b) * m + k]).sum();
            }
        }
    }
    Ok(Christoffel::from_fn(m, |i, j, k| (0..m).map(|x| a[(x, i)] * t2[(x * m + j) * m + k]).sum()))
}

/// `AᵀσA` on a symmetric form.
pub fn act_on_form(a: &LinearMap, s: &SymForm) -> Result<SymForm> {
    if a.m() != s.m() {
        return Err(Error::DimensionMismatch { expected: s.m(), found: a.m() });
    }
    Ok(SymForm::new(a.0.transpose().mul(&s.0).mul(&a.0)))
}

/// `AᵀσA` on a general two-tensor.
pub fn act_on_two_tensor(a: &LinearMap, s: &TwoTensor) -> Result<TwoTensor> {
    if a.m() != s.m() {
        return Err(Error::DimensionMismatch { expected: s.m(), found: a.m() });
    }
    Ok(TwoTensor(a.0.transpose().mul(&s.0).mul(&a.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_christoffel, random_map, rng};

    /// Entry-by-entry sextuple sum, written independently of the contraction order in `act`.
    fn act_naive(a: &Matrix, g: &Christoffel) -> Christoffel {
        let m = g.m();
        let inv = a.inverse().unwrap();
        Christoffel::from_fn(m, |i, j, k| {
            let mut s = 0.0;
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        s += g.get(x, y, z) * a[(x, i)] * a[(y, j)] * inv[(k, z)];
                    }
                }
            }
            s
        })
    }

    #[test]
    fn act_matches_naive_sum() {
        let mut r = rng(11);
        for m in 2..=4 {
            let g = random_christoffel(&mut r, m, 1.0, false);
            let a = random_map(&mut r, m);
            let d = act(&a, &g).unwrap().sub(&act_naive(&a.0, &g)).max_abs();
            assert!(d < 1e-12, "m={m} d={d}");
        }
    }

    #[test]
    fn identity_and_singular() {
        let g = random_christoffel(&mut rng(1), 3, 1.0, true);
        assert_eq!(act(&LinearMap::identity(3), &g).unwrap(), g);
        let sing = LinearMap(Matrix::diag(&[1.0, 0.0, 1.0]));
        assert!(matches!(act(&sing, &g), Err(Error::SingularMap { .. })));
        assert!(matches!(act(&LinearMap::identity(2), &g), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn right_action_law() {
        let mut r = rng(5);
        for _ in 0..50 {
            let g = random_christoffel(&mut r, 3, 1.0, false);
            let a = random_map(&mut r, 3);
            let b = random_map(&mut r, 3);
            let lhs = act(&a, &act(&b, &g).unwrap()).unwrap();
            let rhs = act(&b.compose(&a), &g).unwrap();
            assert!(lhs.sub(&rhs).max_abs() < 1e-9);
        }
    }

    #[test]
    fn torsion_examples() {
        let mut g = Christoffel::zeros(2);
        g.set(0, 1, 0, 1.0);
        let t = g.torsion();
        assert_eq!(t.get(0, 1, 0), 1.0);
        assert_eq!(t.get(1, 0, 0), -1.0);
        assert!(!is_torsion_free(&g));
        assert!(is_torsion_free(&Christoffel::zeros(3)));
    }

    #[test]
    fn torsion_is_equivariant() {
        let mut r = rng(9);
        for _ in 0..20 {
            let g = random_christoffel(&mut r, 3, 1.0, false);
            let a = random_map(&mut r, 3);
            let lhs = act(&a, &g).unwrap().torsion();
            let rhs = act(&a, &g.torsion()).unwrap();
            assert!(lhs.sub(&rhs).max_abs() < 1e-10);
        }
    }

    #[test]
    fn form_action() {
        let s = SymForm::diag(&[1.0, 1.0]);
        let a = LinearMap(Matrix::diag(&[2.0, 1.0]));
        assert_eq!(act_on_form(&a, &s).unwrap(), SymForm::diag(&[4.0, 1.0]));
        assert_eq!(act_on_form(&LinearMap::identity(2), &s).unwrap(), s);
    }

    #[test]
    fn form_determinant_law() {
        let mut r = rng(3);
        for _ in 0..50 {
            let a = random_map(&mut r, 3);
            let s = SymForm::new(crate::random::random_matrix(&mut r, 3));
            let lhs = act_on_form(&a, &s).unwrap().matrix().det();
            let rhs = a.det() * a.det() * s.matrix().det();
            assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1e-3));
        }
    }

    #[test]
    fn constructor_validates() {
        assert!(matches!(Christoffel::new(2, alloc::vec![0.0; 7]), Err(Error::BadLength { .. })));
        let mut c = alloc::vec![0.0; 8];
        c[3] = f64::NAN;
        assert_eq!(Christoffel::new(2, c), Err(Error::NonFinite { index: 3 }));
    }
}
