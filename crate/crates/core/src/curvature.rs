//! Curvature of a constant connection. With constant symbols the derivative
//! terms drop out and everything is quadratic in `Γ`.

use alloc::vec::Vec;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{sym_eigen, Matrix};
use crate::tensor::{Christoffel, Signature, SymForm, TwoTensor};

/// `R_ijk^l`, stored at `((i*m + j)*m + k)*m + l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Riemann {
    m: usize,
    data: Vec<f64>,
}

impl Riemann {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let m = self.m;
        self.data[((i * m + j) * m + k) * m + l]
    }

    pub fn max_abs(&self) -> f64 {
        crate::linalg::max_abs(&self.data)
    }
}

/// `R_ijk^l = Γ_in^l Γ_jk^n − Γ_jn^l Γ_ik^n`.
pub fn curvature_operator(g: &Christoffel) -> Riemann {
    let m = g.m();
    let mut data = Vec::with_capacity(m * m * m * m);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let s: f64 =
                        (0..m).map(|n| g.get(i, n, l) * g.get(j, k, n) - g.get(j, n, l) * g.get(i, k, n)).sum();
                    data.push(s);
                }
            }
        }
    }
    Riemann { m, data }
}

/// `ρ_jk = ω_n Γ_jk^n − Γ_jn^i Γ_ik^n`; for torsion-free `Γ` this is the
/// trace `R_ijk^i`.
pub fn ricci(g: &Christoffel) -> TwoTensor {
    let s = ricci_split(g);
    TwoTensor(s.rho1.0.sub(&s.rho2.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicciSplit {
    /// `ω_n Γ_jk^n`
    pub rho1: TwoTensor,
    /// `Γ_jn^i Γ_ik^n`
    pub rho2: TwoTensor,
    /// `ω_i = Γ_ij^j`
    pub omega: Vec<f64>,
}

pub fn ricci_split(g: &Christoffel) -> RicciSplit {
    let m = g.m();
    let omega: Vec<f64> = (0..m).map(|i| (0..m).map(|j| g.get(i, j, j)).sum()).collect();
    let rho1 = Matrix::from_fn(m, m, |j, k| (0..m).map(|n| omega[n] * g.get(j, k, n)).sum());
    let rho2 = Matrix::from_fn(m, m, |j, k| {
        let mut s = 0.0;
        for i in 0..m {
            for n in 0..m {
                s += g.get(j, n, i) * g.get(i, k, n);
            }
        }
        s
    });
    RicciSplit { rho1: TwoTensor(rho1), rho2: TwoTensor(rho2), omega }
}

pub fn symmetric_ricci(g: &Christoffel) -> SymForm {
    ricci(g).symmetric_part()
}

/// Eigenvalues of a symmetric form, ascending.
pub fn eigenvalues(s: &SymForm) -> Vec<f64> {
    sym_eigen(s.matrix()).0
}

/// Signature at the default tolerances (`1e-9` relative, `1e-12` floor).
pub fn signature(s: &SymForm) -> Result<Signature> {
    let t = Tolerances::DEFAULT;
    signature_with(s, t.signature_rel, t.signature_floor)
}

/// `p` = #eigenvalues below `−band`, `q` = #above `band`, with
/// `band = max(rel · spectral radius, floor)`.
pub fn signature_with(s: &SymForm, rel: f64, floor: f64) -> Result<Signature> {
    if let Some(index) = s.matrix().as_slice().iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let vals = eigenvalues(s);
    let radius = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let band = (rel * radius).max(floor);
    let p = vals.iter().filter(|&&v| v < -band).count();
    let q = vals.iter().filter(|&&v| v > band).count();
    Ok(Signature { p, q, degenerate: p + q < s.m() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::random::{random_christoffel, random_map, rng};
    use crate::tensor::{act, act_on_form};
    use proptest::prelude::*;

    fn christoffel(m: usize, torsion_free: bool) -> impl Strategy<Value = Christoffel> {
        proptest::collection::vec(-2.0f64..2.0, m * m * m).prop_map(move |c| {
            let g = Christoffel::new(m, c).unwrap();
            if torsion_free {
                g.symmetrized()
            } else {
                g
            }
        })
    }

    #[test]
    fn zero_connection_is_flat() {
        let z = Christoffel::zeros(3);
        assert_eq!(curvature_operator(&z).max_abs(), 0.0);
        assert_eq!(ricci(&z).matrix().max_abs(), 0.0);
        let s = ricci_split(&z);
        assert_eq!(max_abs(&s.omega), 0.0);
    }

    #[test]
    fn signature_examples() {
        let sig = signature(&SymForm::diag(&[-2.0, -2.0, 2.0])).unwrap();
        assert_eq!(sig, Signature { p: 2, q: 1, degenerate: false });
        let hyp = SymForm::new(Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]));
        assert_eq!(signature(&hyp).unwrap(), Signature { p: 1, q: 1, degenerate: false });
        assert!(signature(&SymForm::diag(&[0.0, 1.0, 1.0])).unwrap().degenerate);
        let bad = SymForm::diag(&[f64::INFINITY, 1.0]);
        assert!(matches!(signature(&bad), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn antisymmetric_ricci_symmetrizes_to_zero() {
        let anti = TwoTensor(Matrix::from_rows(&[[0.0, 2.5], [-2.5, 0.0]]));
        assert_eq!(anti.symmetric_part().matrix().max_abs(), 0.0);
        let g = random_christoffel(&mut rng(2), 3, 1.0, false);
        let r = ricci(&g);
        let half = r.matrix().add(&r.matrix().transpose()).scale(0.5);
        assert_eq!(symmetric_ricci(&g).matrix(), &half);
    }

    proptest! {
        #[test]
        fn curvature_antisymmetric_and_traces_to_ricci(g in christoffel(3, true)) {
            let r = curvature_operator(&g);
            let rho = ricci(&g);
            for i in 0..3 { for j in 0..3 { for k in 0..3 { for l in 0..3 {
                prop_assert!((r.get(i, j, k, l) + r.get(j, i, k, l)).abs() < 1e-12);
            }}}}
            for j in 0..3 { for k in 0..3 {
                let tr: f64 = (0..3).map(|i| r.get(i, j, k, i)).sum();
                prop_assert!((tr - rho.matrix()[(j, k)]).abs() < 1e-12);
            }}
        }

        #[test]
        fn split_recombines(g in christoffel(4, false)) {
            let s = ricci_split(&g);
            let d = s.rho1.matrix().sub(s.rho2.matrix()).sub(ricci(&g).matrix()).max_abs();
            prop_assert!(d < 1e-12);
        }

        #[test]
        fn torsion_free_ricci_is_symmetric(g in christoffel(4, true)) {
            let r = ricci(&g);
            prop_assert!(r.matrix().sub(&r.matrix().transpose()).max_abs() < 1e-12);
            prop_assert!(symmetric_ricci(&g).matrix().sub(r.matrix()).max_abs() < 1e-12);
        }

        #[test]
        fn sylvester_inertia(seed in 0u64..1000) {
            let mut r = rng(seed);
            let g = random_christoffel(&mut r, 3, 1.0, true);
            let a = random_map(&mut r, 3);
            let s0 = symmetric_ricci(&g);
            prop_assume!(!signature(&s0).unwrap().degenerate);
            prop_assume!(eigenvalues(&s0).iter().all(|v| v.abs() > 1e-3));
            let s1 = symmetric_ricci(&act(&a, &g).unwrap());
            prop_assert_eq!(signature(&s0).unwrap(), signature(&s1).unwrap());
            let pulled = act_on_form(&a, &s0).unwrap();
            prop_assert!(pulled.matrix().sub(s1.matrix()).max_abs() < 1e-8 * (1.0 + s1.matrix().max_abs()));
        }
    }
}
