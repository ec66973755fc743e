//! The genericity polynomial.
//!
//! With `ρ̃` the cofactor matrix of `ρ_s` and `ρ_{2,s}` the symmetrized `ρ₂`,
//!
//! ```text
//! ξ̃_n = (ρ̃ ρ_{2,s})ⁿ ρ̃ ω,        𝔓_m(Γ) = det(ρ_s) · det[ξ̃_0 … ξ̃_{m−1}]
//! ```
//!
//! `ξ̃` is polynomial in `Γ`, so `𝔓_m` is too (of degree `m³ + m² + m`). When
//! `ρ_s` is invertible, `ξ̃_n = (−1)ⁿ det(ρ_s)^{n+1} ξ_n`, where `ξ_n` is the
//! `εⁿ` coefficient of `(ρ_s + ε ρ_{2,s})⁻¹ ω`.

use alloc::vec::Vec;

use rand::Rng;

use crate::config::Tolerances;
use crate::curvature::{ricci_split, symmetric_ricci};
use crate::error::{Error, Result};
use crate::linalg::{cofactor, norm, Lu, Matrix};
use crate::random::{random_christoffel, random_map, rng};
use crate::tensor::{act, Christoffel, LinearMap, SymForm};

pub fn cofactor_matrix(s: &SymForm) -> Matrix {
    cofactor(s.matrix())
}

pub fn rho2_s(g: &Christoffel) -> SymForm {
    ricci_split(g).rho2.symmetric_part()
}

pub fn xi_tilde_sequence(g: &Christoffel, n_max: usize) -> Vec<Vec<f64>> {
    let split = ricci_split(g);
    let rt = cofactor_matrix(&symmetric_ricci(g));
    let step = rt.mul(split.rho2.symmetric_part().matrix());
    let mut out = Vec::with_capacity(n_max);
    let mut v = rt.mul_vec(&split.omega);
    for _ in 0..n_max {
        let next = step.mul_vec(&v);
        out.push(v);
        v = next;
    }
    out
}

/// Neumann-series coefficients `ξ_n = (−1)ⁿ (ρ_s⁻¹ ρ_{2,s})ⁿ ρ_s⁻¹ ω`, by LU
/// solves. `None` when `ρ_s` is singular.
pub fn xi_sequence(g: &Christoffel, n_max: usize) -> Option<Vec<Vec<f64>>> {
    let rs = symmetric_ricci(g);
    if rs.matrix().det().abs() <= Tolerances::DEFAULT.det {
        return None;
    }
    let lu = Lu::new(rs.matrix());
    let split = ricci_split(g);
    let r2 = split.rho2.symmetric_part();
    let mut out = Vec::with_capacity(n_max);
    let mut v = lu.solve(&split.omega)?;
    for _ in 0..n_max {
        let next: Vec<f64> = lu.solve(&r2.matrix().mul_vec(&v))?.into_iter().map(|x| -x).collect();
        out.push(v);
        v = next;
    }
    Some(out)
}

/// Degree of `𝔓_m` as a polynomial in the entries of `Γ`.
pub fn poly_degree(m: usize) -> usize {
    m * m * m + m * m + m
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericityReport {
    pub det_rho_s: f64,
    pub xi_tilde: Vec<Vec<f64>>,
    pub poly_value: f64,
    /// Product of the Hadamard bounds of the two determinants in `𝔓_m`.
    pub scale: f64,
    pub tol_generic: f64,
    pub generic: bool,
}

/// Evaluates `𝔓_m(Γ)`. The genericity threshold is `generic_rel` times the
/// Hadamard scale (product of column norms of `ρ_s` and of `[ξ̃]`), which is
/// homogeneous of the same degree as `𝔓_m` and bounds `|𝔓_m|` from above.
pub fn generic_poly(g: &Christoffel) -> GenericityReport {
    let m = g.m();
    let rs = symmetric_ricci(g);
    let det_rho_s = rs.matrix().det();
    let xi_tilde = xi_tilde_sequence(g, m);
    let xi = Matrix::from_columns(&xi_tilde);
    let poly_value = det_rho_s * xi.det();
    let h_rho: f64 = (0..m).map(|j| norm(&rs.matrix().column(j))).product();
    let h_xi: f64 = xi_tilde.iter().map(|v| norm(v)).product();
    let scale = h_rho * h_xi;
    let tol_generic = Tolerances::DEFAULT.generic_rel * scale;
    GenericityReport { det_rho_s, xi_tilde, poly_value, scale, tol_generic, generic: poly_value.abs() > tol_generic }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentReport {
    pub m: usize,
    /// Measured `κ` with `𝔓(AΓ) = det(A)^κ 𝔓(Γ)`.
    pub kappa: i64,
    /// `2c(m) + m + 2` with `c(m) = 1 + 2 + … + (m−1) + 1`.
    pub stated_kappa: i64,
    /// Largest `|estimate − κ|` over trials.
    pub max_deviation: f64,
    /// Largest `|𝔓(AΓ) / (det(A)^κ 𝔓(Γ)) − 1|`.
    pub max_rel_error: f64,
    /// Whether the sign of the ratio always equals `sign(det A)^κ`.
    pub sign_law_holds: bool,
    pub trials: usize,
}

pub fn stated_kappa(m: usize) -> i64 {
    let c = (m * (m - 1) / 2 + 1) as i64;
    2 * c + m as i64 + 2
}

/// Measures the integer exponent in `𝔓_m(act(A,Γ)) = det(A)^κ 𝔓_m(Γ)` over
/// random well-conditioned draws; both orientations of `A` are sampled.
pub fn equivariance_exponent(m: usize, trials: usize, seed: u64) -> Result<ExponentReport> {
    let mut r = rng(seed);
    let mut estimates = Vec::with_capacity(trials);
    let mut samples = Vec::with_capacity(trials);
    while samples.len() < trials {
        let tf = r.gen_bool(0.5);
        let g = random_christoffel(&mut r, m, 1.0, tf);
        let base = generic_poly(&g);
        if base.poly_value.abs() <= 1e-6 * base.scale {
            continue;
        }
        let t = if r.gen_bool(0.5) { 1.5 } else { 1.0 / 1.5 };
        let a = LinearMap(random_map(&mut r, m).matrix().scale(t));
        let det = a.det();
        if libm::log(det.abs()).abs() < 0.3 {
            continue;
        }
        let moved = generic_poly(&act(&a, &g)?).poly_value;
        let ratio = moved / base.poly_value;
        estimates.push(libm::log(ratio.abs()) / libm::log(det.abs()));
        samples.push((ratio, det));
    }
    let lo = estimates.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = estimates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let kappa = libm::round(0.5 * (lo + hi)) as i64;
    let max_deviation = estimates.iter().map(|e| (e - kappa as f64).abs()).fold(0.0, f64::max);
    if (hi - lo) > 1e-6 * (kappa.unsigned_abs().max(1) as f64) || max_deviation > 1e-6 {
        return Err(Error::Inconsistent { low: lo, high: hi });
    }
    let mut max_rel_error = 0.0f64;
    let mut sign_law_holds = true;
    for &(ratio, det) in &samples {
        let want = libm::pow(det, kappa as f64);
        max_rel_error = max_rel_error.max((ratio / want - 1.0).abs());
        sign_law_holds &= ratio.signum() == want.signum();
    }
    Ok(ExponentReport { m, kappa, stated_kappa: stated_kappa(m), max_deviation, max_rel_error, sign_law_holds, trials })
}
