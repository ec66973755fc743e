//! Multi-start search for discrete isotropy elements.
//!
//! Any `A ∈ G_Γ⁺` preserves `ρ_s`. After normalizing `ρ_s` to
//! `η = diag(−1,…,−1,+1,…,+1)` the search runs over `SO(η)` in exponential
//! coordinates around a moving base point, `B ← B·exp(Σ δ_k X_k)`, with a
//! Levenberg–Marquardt step on the residual `act(B, Γ') − Γ'`. Sound (every
//! hit is verified) but only probabilistically complete.

use alloc::vec::Vec;

use rand::Rng;

use super::{infinitesimal_action, order_of, ricci_normalizer, Order};
use crate::config::Tolerances;
use crate::curvature::{signature, symmetric_ricci};
use crate::error::{Error, Result};
use crate::linalg::{expm, Lu, Matrix};
use crate::random::rng;
use crate::tensor::{act, Christoffel, LinearMap};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanHit {
    pub map: LinearMap,
    /// `‖act(A,Γ) − Γ‖∞`.
    pub residual: f64,
    pub order: Order,
}

const ACCEPT: f64 = 1e-8;
const DEDUP: f64 = 1e-6;

struct Chart {
    gens: Vec<Matrix>,
    compact: Vec<bool>,
    components: Vec<Matrix>,
}

fn chart(p: usize, m: usize) -> Chart {
    let eta: Vec<f64> = (0..m).map(|i| if i < p { -1.0 } else { 1.0 }).collect();
    let mut gens = Vec::new();
    let mut compact = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut x = Matrix::zeros(m, m);
            x[(i, j)] = eta[i];
            x[(j, i)] = -eta[j];
            gens.push(x);
            compact.push((i < p) == (j < p));
        }
    }
    let mut components = alloc::vec![Matrix::identity(m)];
    if p >= 1 && p < m {
        let mut d = Matrix::identity(m);
        d[(0, 0)] = -1.0;
        d[(p, p)] = -1.0;
        components.push(d);
    }
    Chart { gens, compact, components }
}

fn combine(gens: &[Matrix], c: &[f64]) -> Matrix {
    let m = gens[0].rows();
    gens.iter().zip(c).fold(Matrix::zeros(m, m), |acc, (g, &x)| acc.add(&g.scale(x)))
}

/// Levenberg–Marquardt on `F(B) = act(B,Γ) − Γ` over the chart; returns the
/// final base point and its residual max-norm.
fn minimize(mut b: Matrix, g: &Christoffel, gens: &[Matrix]) -> (Matrix, f64) {
    let k = gens.len();
    let residual = |b: &Matrix| -> Option<Christoffel> { act(&LinearMap(b.clone()), g).ok().map(|h| h.sub(g)) };
    let Some(mut f) = residual(&b) else { return (b, f64::INFINITY) };
    let mut cost: f64 = f.coeffs().iter().map(|x| x * x).sum();
    let mut lambda = 1e-3;
    for _ in 0..300 {
        if f.max_abs() < 1e-14 {
            break;
        }
        let moved = act(&LinearMap(b.clone()), g).expect("base point stays invertible");
        let cols: Vec<Vec<f64>> = gens.iter().map(|x| infinitesimal_action(x, &moved).unwrap().into_coeffs()).collect();
        let jtj = Matrix::from_fn(k, k, |r, c| cols[r].iter().zip(&cols[c]).map(|(x, y)| x * y).sum());
        let jtf: Vec<f64> = cols.iter().map(|c| -c.iter().zip(f.coeffs()).map(|(x, y)| x * y).sum::<f64>()).collect();
        let mut improved = false;
        for _ in 0..12 {
            let damped =
                Matrix::from_fn(k, k, |r, c| jtj[(r, c)] + if r == c { lambda * (1.0 + jtj[(r, r)]) } else { 0.0 });
            let Some(step) = Lu::new(&damped).solve(&jtf) else { break };
            let cand = b.mul(&expm(&combine(gens, &step)));
            if let Some(fc) = residual(&cand) {
                let cc: f64 = fc.coeffs().iter().map(|x| x * x).sum();
                if cc < cost {
                    b = cand;
                    f = fc;
                    let rel = (cost - cc) / cost.max(1e-300);
                    cost = cc;
                    lambda = (lambda / 3.0).max(1e-12);
                    improved = rel > 1e-14;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let r = f.max_abs();
    (b, r)
}

/// Best-effort search for elements of `G_Γ⁺`. The first restart starts at
/// the identity; the rest start at a random point of each component of
/// `SO(η)` (compact angles in `[−π, π]`, boosts in `[−1.5, 1.5]`). Hits with
/// residual below `1e-8·(1 + ‖Γ‖∞)` are mapped back, sorted lexicographically
/// and deduplicated at max-norm distance `1e-6`.
pub fn finite_symmetry_scan(g: &Christoffel, restarts: usize, seed: u64) -> Result<Vec<ScanHit>> {
    let m = g.m();
    let sig = signature(&symmetric_ricci(g))?;
    if sig.degenerate {
        return Err(Error::DegenerateRicci { p: sig.p, q: sig.q, m });
    }
    let s = ricci_normalizer(g)?;
    let s_inv = s.inverse().ok_or(Error::SingularMap { det: s.det(), tol: Tolerances::DEFAULT.det })?;
    let gn = act(&s, g)?;
    let ch = chart(sig.p, m);
    let accept = ACCEPT * (1.0 + g.max_abs());
    let mut found: Vec<LinearMap> = Vec::new();
    for run in 0..restarts.max(1) {
        let start = if run == 0 {
            Matrix::identity(m)
        } else {
            let mut r = rng(seed ^ (run as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let comp = &ch.components[r.gen_range(0..ch.components.len())];
            let c: Vec<f64> = ch
                .compact
                .iter()
                .map(|&cpt| {
                    if cpt {
                        r.gen_range(-core::f64::consts::PI..=core::f64::consts::PI)
                    } else {
                        r.gen_range(-1.5..=1.5)
                    }
                })
                .collect();
            comp.mul(&expm(&combine(&ch.gens, &c)))
        };
        let (b, _) = minimize(start, &gn, &ch.gens);
        let a = LinearMap(s.matrix().mul(&b).mul(s_inv.matrix()));
        let Ok(moved) = act(&a, g) else { continue };
        if a.det() > 0.0 && moved.sub(g).max_abs() < accept {
            found.push(a);
        }
    }
    found.sort_by(|x, y| {
        x.matrix()
            .as_slice()
            .iter()
            .zip(y.matrix().as_slice())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut unique: Vec<LinearMap> = Vec::new();
    for a in found {
        if !unique.iter().any(|u| u.matrix().sub(a.matrix()).max_abs() <= DEDUP) {
            unique.push(a);
        }
    }
    let t = Tolerances::DEFAULT;
    unique
        .into_iter()
        .map(|map| {
            let residual = act(&map, g)?.sub(g).max_abs();
            let order = order_of(&map, t.max_order, 1e-7)?;
            Ok(ScanHit { map, residual, order })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::rotation_3d;

    #[test]
    fn chart_generators_preserve_eta() {
        for (p, m) in [(0, 3), (1, 3), (2, 3), (2, 4)] {
            let ch = chart(p, m);
            let eta = super::super::canonical_form(p, m);
            assert_eq!(ch.gens.len(), m * (m - 1) / 2);
            for x in &ch.gens {
                assert!(x.transpose().mul(&eta).add(&eta.mul(x)).max_abs() < 1e-15);
            }
            for c in &ch.components {
                assert!(c.transpose().mul(&eta).mul(c).sub(&eta).max_abs() < 1e-15);
                assert_eq!(c.det(), 1.0);
            }
        }
    }

    #[test]
    fn finds_the_rotation_of_a_rotation_symmetric_structure() {
        // A structure whose rotational symmetry is exactly ℤ₃.
        let g = Christoffel::symmetric_from(
            3,
            &[
                (0, 0, 0, 1.0),
                (0, 1, 1, -1.0),
                (1, 1, 0, -1.0),
                (2, 2, 2, 1.0),
                (0, 0, 2, 0.5),
                (1, 1, 2, 0.5),
                (0, 2, 0, 0.5),
                (1, 2, 1, 0.5),
            ],
        );
        let hits = finite_symmetry_scan(&g, 60, 3).unwrap();
        let rot = rotation_3d(2.0 * core::f64::consts::PI / 3.0);
        assert!(hits.iter().any(|h| h.map.matrix().sub(rot.matrix()).max_abs() < 1e-6));
        assert!(hits.iter().all(|h| h.residual < 1e-8));
    }
}
