//! Isotropy of a structure: `G_Γ⁺ = {A ∈ GL⁺(m) : act(A, Γ) = Γ}`.
//!
//! The identity component is read off the null space of the linearized
//! action; discrete elements are verified one at a time (`is_fixed`) or
//! searched for numerically (`scan`). `torsion` holds the integer-lattice
//! bound on the order of finite elements.

mod scan;
mod torsion;

pub use scan::{finite_symmetry_scan, ScanHit};
pub use torsion::{
    quotient_torsion_by_enumeration, smith_invariants, support_pattern, torsion_order_bound, RelationLattice,
    SupportPattern,
};

use alloc::vec::Vec;

use crate::config::Tolerances;
use crate::curvature::{signature, symmetric_ricci};
use crate::error::{Error, Result};
use crate::linalg::{svd, Matrix};
use crate::tensor::{act, Christoffel, LinearMap};

/// Derivative at `t = 0` of `act(I + tξ, Γ)`:
/// `(ξ·Γ)_ij^k = ξ^a_i Γ_aj^k + ξ^b_j Γ_ib^k − ξ^k_c Γ_ij^c`.
pub fn infinitesimal_action(xi: &Matrix, g: &Christoffel) -> Result<Christoffel> {
    let m = g.m();
    if xi.rows() != m || xi.cols() != m {
        return Err(Error::DimensionMismatch { expected: m, found: xi.rows() });
    }
    Ok(Christoffel::from_fn(m, |i, j, k| {
        (0..m).map(|a| xi[(a, i)] * g.get(a, j, k) + xi[(a, j)] * g.get(i, a, k) - xi[(k, a)] * g.get(i, j, a)).sum()
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerReport {
    pub lie_dimension: usize,
    /// Frobenius-orthonormal basis of the stabilizer algebra.
    pub lie_basis: Vec<Matrix>,
    /// Full singular spectrum of the `m³ × m²` action matrix, descending.
    pub singular_values: Vec<f64>,
    /// Smallest kept singular value over `max(largest discarded, tol·σ_max)`;
    /// infinite when nothing is kept.
    pub spectral_gap: f64,
}

/// The `m³ × m²` matrix of `ξ ↦ ξ·Γ`; column `a*m + b` is the image of `E_ab`.
pub fn action_matrix(g: &Christoffel) -> Matrix {
    let m = g.m();
    let cols: Vec<Vec<f64>> = (0..m * m)
        .map(|ab| {
            let mut e = Matrix::zeros(m, m);
            e[(ab / m, ab % m)] = 1.0;
            infinitesimal_action(&e, g).expect("square generator").into_coeffs()
        })
        .collect();
    Matrix::from_columns(&cols)
}

pub fn stabilizer_lie_algebra(g: &Christoffel, tol_rank: f64) -> StabilizerReport {
    let m = g.m();
    let s = svd(&action_matrix(g));
    let sigma_max = s.values.first().copied().unwrap_or(0.0);
    let threshold = tol_rank * sigma_max;
    let kept = s.values.iter().take_while(|&&v| v > threshold).count();
    let lie_basis = (kept..m * m).map(|c| Matrix::from_vec(m, m, s.v.column(c))).collect();
    let spectral_gap = if kept == 0 {
        f64::INFINITY
    } else {
        let discarded = s.values.get(kept).copied().unwrap_or(0.0);
        s.values[kept - 1] / discarded.max(threshold)
    };
    StabilizerReport { lie_dimension: m * m - kept, lie_basis, singular_values: s.values, spectral_gap }
}

/// `‖act(A,Γ) − Γ‖∞ ≤ tol` and `det A > 0`; `tol` defaults to
/// `1e-9 · (1 + ‖Γ‖∞)`.
pub fn is_fixed(a: &LinearMap, g: &Christoffel, tol: Option<f64>) -> Result<bool> {
    let moved = act(a, g)?;
    let tol = tol.unwrap_or(Tolerances::DEFAULT.fixed_rel * (1.0 + g.max_abs()));
    Ok(a.det() > 0.0 && moved.sub(g).max_abs() <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Unbounded,
}

pub fn order_of(a: &LinearMap, max_order: u32, tol: f64) -> Result<Order> {
    let det = a.det();
    let dt = Tolerances::DEFAULT.det;
    if det.is_nan() || det.abs() <= dt {
        return Err(Error::SingularMap { det, tol: dt });
    }
    let id = Matrix::identity(a.m());
    let mut p = a.matrix().clone();
    for n in 1..=max_order {
        if !p.is_finite() {
            break;
        }
        if p.sub(&id).max_abs() <= tol {
            return Ok(Order::Finite(n));
        }
        p = p.mul(a.matrix());
    }
    Ok(Order::Unbounded)
}

/// `order_of` with the default bound (256) and tolerance (1e-9).
pub fn order(a: &LinearMap) -> Result<Order> {
    let t = Tolerances::DEFAULT;
    order_of(a, t.max_order, t.order)
}

/// Rotation in the 1-2 plane of ℝ³: `e₁ ↦ cos θ e₁ − sin θ e₂`,
/// `e₂ ↦ sin θ e₁ + cos θ e₂`; acts on `e₁ + i e₂` by `e^{iθ}`.
pub fn rotation_3d(theta: f64) -> LinearMap {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    LinearMap(Matrix::from_rows(&[[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]))
}

/// The same rotation on ℝ².
pub fn rotation_2d(theta: f64) -> LinearMap {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    LinearMap(Matrix::from_rows(&[[c, s], [-s, c]]))
}

/// `diag(a, 1/a, 1)`.
pub fn hyperbolic(a: f64) -> Result<LinearMap> {
    hyperbolic_extended(a, 3)
}

/// `diag(a, 1/a, 1, …, 1)` on ℝ^m.
pub fn hyperbolic_extended(a: f64, m: usize) -> Result<LinearMap> {
    if a == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let mut d = alloc::vec![1.0; m];
    d[0] = a;
    d[1] = 1.0 / a;
    Ok(LinearMap(Matrix::diag(&d)))
}

/// `S_j` on ℝ³ (axis `j` counted from 1): `+1` on `e_j`, `−1` on the others.
pub fn sign_flip(j: usize) -> LinearMap {
    assert!((1..=3).contains(&j), "axis index 1..=3");
    let d: Vec<f64> = (1..=3).map(|i| if i == j { 1.0 } else { -1.0 }).collect();
    LinearMap(Matrix::diag(&d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exceptional {
    S3,
    A4,
}

/// The order-2 partner of the 3-fold rotation generating `a₄`:
/// `e₁ ↦ x e₁ + y e₃`, `e₂ ↦ −e₂`, `e₃ ↦ y e₁ − x e₃` with
/// `(x, y) = (1/3, −2√2/3)`.
pub fn a4_reflection() -> LinearMap {
    let x = 1.0 / 3.0;
    let y = -2.0 * core::f64::consts::SQRT_2 / 3.0;
    LinearMap(Matrix::from_rows(&[[x, 0.0, y], [0.0, -1.0, 0.0], [y, 0.0, -x]]))
}

pub fn exceptional_group_elements(which: Exceptional) -> Vec<LinearMap> {
    let t = rotation_3d(2.0 * core::f64::consts::PI / 3.0);
    let s = match which {
        Exceptional::S3 => LinearMap(Matrix::diag(&[1.0, -1.0, -1.0])),
        Exceptional::A4 => a4_reflection(),
    };
    generate_group(&[t, s], 1e-9, 64)
}

/// Closure of `gens` under multiplication, deduplicated at `tol` (max-norm).
/// Stops once `limit` elements are found.
pub fn generate_group(gens: &[LinearMap], tol: f64, limit: usize) -> Vec<LinearMap> {
    let m = gens[0].m();
    let mut out = alloc::vec![LinearMap::identity(m)];
    let mut frontier = out.clone();
    while !frontier.is_empty() && out.len() < limit {
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let h = f.compose(g);
                if !out.iter().any(|x| x.matrix().sub(h.matrix()).max_abs() <= tol) {
                    out.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    out
}

/// `S` with `ρ_s(act(S, Γ)) = diag(−1,…,−1, +1,…,+1)` (`p` then `q`) and
/// `det S > 0`, by pivoted Gram–Schmidt in the `ρ_s` inner product.
pub fn ricci_normalizer(g: &Christoffel) -> Result<LinearMap> {
    let m = g.m();
    let rs = symmetric_ricci(g);
    let sig = signature(&rs)?;
    if sig.degenerate {
        return Err(Error::DegenerateRicci { p: sig.p, q: sig.q, m });
    }
    let sigma = rs.matrix();
    let form = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(sigma.mul_vec(v)).map(|(a, b)| a * b).sum() };
    let mut pool: Vec<Vec<f64>> = (0..m).map(|i| Matrix::identity(m).column(i)).collect();
    let mut timelike = Vec::new();
    let mut spacelike = Vec::new();
    while !pool.is_empty() {
        let (best, diag) = (0..pool.len()).map(|i| (i, form(&pool[i], &pool[i]).abs())).fold((0, -1.0), |acc, x| {
            if x.1 > acc.1 {
                x
            } else {
                acc
            }
        });
        let mut pair = (0, 0, 0.0f64);
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let f = form(&pool[i], &pool[j]);
                if f.abs() > pair.2.abs() {
                    pair = (i, j, f);
                }
            }
        }
        // Nearly-null pivots: use u ± w, for which ρ(u±w, u±w) picks up ±2ρ(u,w).
        let pick = if diag < 0.5 * pair.2.abs() {
            let (i, j, f) = pair;
            let sgn = if f > 0.0 { 1.0 } else { -1.0 };
            let combo: Vec<f64> = pool[i].iter().zip(&pool[j]).map(|(a, b)| a + sgn * b).collect();
            pool[i] = combo;
            i
        } else {
            best
        };
        let v = pool.swap_remove(pick);
        let n2 = form(&v, &v);
        let n: Vec<f64> = v.iter().map(|x| x / libm::sqrt(n2.abs())).collect();
        let sgn = n2.signum();
        for w in pool.iter_mut() {
            let c = sgn * form(w, &n);
            for (wi, ni) in w.iter_mut().zip(&n) {
                *wi -= c * ni;
            }
        }
        if sgn < 0.0 {
            timelike.push(n);
        } else {
            spacelike.push(n);
        }
    }
    timelike.extend(spacelike);
    let mut s = Matrix::from_columns(&timelike);
    if s.det() < 0.0 {
        for i in 0..m {
            s[(i, 0)] = -s[(i, 0)];
        }
    }
    Ok(LinearMap(s))
}

/// `diag(−1,…,−1, +1,…,+1)` with `p` minus signs.
pub fn canonical_form(p: usize, m: usize) -> Matrix {
    let d: Vec<f64> = (0..m).map(|i| if i < p { -1.0 } else { 1.0 }).collect();
    Matrix::diag(&d)
}
