//! Christoffel data given on a complex frame, and its real form.
//!
//! A frame is a list of slots: `Real(a)` is `e_a`; `Plus(a, b)` and
//! `Minus(a, b)` are the conjugate pair `n(e_a ± i e_b)`. Only one of each
//! conjugate pair of symbols needs to be given; the rest follow from reality,
//! `Γ_{σi σj}^{σk} = conj(Γ_ij^k)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symmetry::SupportPattern;
use crate::tensor::Christoffel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Real(usize),
    Plus(usize, usize),
    Minus(usize, usize),
}

/// How the complex frame and the coframe used to record the upper index
/// are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameConvention {
    /// `f = (e_a ± i e_b)/√2` with the dual coframe `(e^a ∓ i e^b)/√2`.
    Unitary,
    /// `f = e_a ± i e_b` with the dual coframe `½(e^a ∓ i e^b)`.
    Dual,
    /// `f = e_a ± i e_b`, upper index read with `e^a ∓ i e^b` (twice the
    /// dual coframe on complex slots).
    Unnormalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexChristoffel {
    m: usize,
    slots: Vec<Slot>,
    coeffs: Vec<Option<Complex64>>,
}

impl ComplexChristoffel {
    /// Panics unless every `Plus(a,b)` has a matching `Minus(a,b)` and the
    /// slots cover each real index exactly once.
    pub fn new(slots: Vec<Slot>) -> Self {
        let m = slots.len();
        let mut seen = alloc::vec![0usize; m];
        for s in &slots {
            match *s {
                Slot::Real(a) => seen[a] += 1,
                Slot::Plus(a, b) => {
                    assert!(slots.contains(&Slot::Minus(a, b)), "unpaired complex slot");
                    seen[a] += 1;
                    seen[b] += 1;
                }
                Slot::Minus(a, b) => assert!(slots.contains(&Slot::Plus(a, b)), "unpaired complex slot"),
            }
        }
        assert!(seen.iter().all(|&c| c == 1), "slots must cover each real index once");
        ComplexChristoffel { m, slots, coeffs: alloc::vec![None; m * m * m] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.m + j) * self.m + k
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        let n = self.idx(i, j, k);
        self.coeffs[n] = Some(v);
    }

    /// Sets `Γ_ij^k` and `Γ_ji^k`.
    pub fn set_symmetric(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        self.set(i, j, k, v);
        self.set(j, i, k, v);
    }

    pub fn conjugate_slot(&self, i: usize) -> usize {
        let partner = match self.slots[i] {
            Slot::Real(a) => Slot::Real(a),
            Slot::Plus(a, b) => Slot::Minus(a, b),
            Slot::Minus(a, b) => Slot::Plus(a, b),
        };
        self.slots.iter().position(|&s| s == partner).expect("validated in new")
    }

    /// All symbols, with conjugate partners filled in and unspecified ones zero.
    pub fn filled(&self) -> Result<Vec<Complex64>> {
        let m = self.m;
        let mut out: Vec<Option<Complex64>> = self.coeffs.clone();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let Some(v) = self.coeffs[self.idx(i, j, k)] else { continue };
                    let p = self.idx(self.conjugate_slot(i), self.conjugate_slot(j), self.conjugate_slot(k));
                    let want = v.conj();
                    match out[p] {
                        Some(w) if (w - want).norm() > 1e-12 * (1.0 + v.norm()) => {
                            return Err(Error::ConjugationMismatch { i, j, k });
                        }
                        _ => out[p] = Some(want),
                    }
                }
            }
        }
        Ok(out.into_iter().map(|v| v.unwrap_or(Complex64::new(0.0, 0.0))).collect())
    }

    pub fn support_pattern(&self, tol: f64) -> Result<SupportPattern> {
        let full = self.filled()?;
        let m = self.m;
        Ok(SupportPattern::from_fn(m, |i, j, k| full[(i * m + j) * m + k].norm() > tol))
    }
}

/// Real Christoffel symbols on `e_1..e_m` from complex-frame data:
/// `Γ_ab^c = Σ Γ_ij^k Q_ia Q_jb P_ck` with `f_k = Σ_c P_ck e_c` and
/// `e_a = Σ_i Q_ia f_i`.
pub fn realify(c: &ComplexChristoffel, conv: FrameConvention) -> Result<Christoffel> {
    let m = c.m();
    let full = c.filled()?;
    let zero = Complex64::new(0.0, 0.0);
    let n = match conv {
        FrameConvention::Unitary => core::f64::consts::FRAC_1_SQRT_2,
        FrameConvention::Dual | FrameConvention::Unnormalized => 1.0,
    };
    let mut p = alloc::vec![zero; m * m];
    let mut q = alloc::vec![zero; m * m];
    let mut upper = alloc::vec![1.0; m];
    for (s, slot) in c.slots().iter().enumerate() {
        match *slot {
            Slot::Real(a) => {
                p[a * m + s] = Complex64::new(1.0, 0.0);
                q[s * m + a] = Complex64::new(1.0, 0.0);
            }
            Slot::Plus(a, b) | Slot::Minus(a, b) => {
                let sign = if matches!(slot, Slot::Plus(..)) { 1.0 } else { -1.0 };
                p[a * m + s] = Complex64::new(n, 0.0);
                p[b * m + s] = Complex64::new(0.0, sign * n);
                q[s * m + a] = Complex64::new(0.5 / n, 0.0);
                q[s * m + b] = Complex64::new(0.0, -sign * 0.5 / n);
                if conv == FrameConvention::Unnormalized {
                    upper[s] = 0.5;
                }
            }
        }
    }
    let mut out = alloc::vec![0.0; m * m * m];
    let scale = 1.0 + full.iter().fold(0.0f64, |acc, v| acc.max(v.norm()));
    for a in 0..m {
        for b in 0..m {
            for cc in 0..m {
                let mut s = zero;
                for i in 0..m {
                    let qa = q[i * m + a];
                    if qa == zero {
                        continue;
                    }
                    for j in 0..m {
                        let qb = q[j * m + b];
                        if qb == zero {
                            continue;
                        }
                        for k in 0..m {
                            let v = full[(i * m + j) * m + k];
                            if v != zero {
                                s += v * upper[k] * qa * qb * p[cc * m + k];
                            }
                        }
                    }
                }
                if s.im.abs() > 1e-12 * scale {
                    return Err(Error::ConjugationMismatch { i: a, j: b, k: cc });
                }
                out[(a * m + b) * m + cc] = s.re;
            }
        }
    }
    Christoffel::new(m, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zero_input_gives_zero() {
        let z = ComplexChristoffel::new(alloc::vec![Slot::Plus(0, 1), Slot::Minus(0, 1), Slot::Real(2)]);
        for conv in [FrameConvention::Unitary, FrameConvention::Dual, FrameConvention::Unnormalized] {
            assert_eq!(realify(&z, conv).unwrap(), Christoffel::zeros(3));
        }
    }

    #[test]
    fn conjugate_partners_must_agree() {
        let mut z = ComplexChristoffel::new(alloc::vec![Slot::Plus(0, 1), Slot::Minus(0, 1)]);
        z.set(0, 0, 1, Complex64::new(1.0, 2.0));
        z.set(1, 1, 0, Complex64::new(1.0, 2.0));
        assert!(matches!(z.filled(), Err(Error::ConjugationMismatch { .. })));
        z.set(1, 1, 0, Complex64::new(1.0, -2.0));
        assert!(z.filled().is_ok());
    }

    #[test]
    fn self_conjugate_symbols_must_be_real() {
        let mut z = ComplexChristoffel::new(alloc::vec![Slot::Real(0), Slot::Real(1)]);
        z.set(0, 0, 0, Complex64::new(0.0, 1.0));
        assert!(matches!(z.filled(), Err(Error::ConjugationMismatch { .. })));
    }

    /// Real-basis entries survive a round trip through the trivial frame.
    #[test]
    fn real_frame_is_identity() {
        let mut z = ComplexChristoffel::new(alloc::vec![Slot::Real(0), Slot::Real(1)]);
        z.set_symmetric(0, 1, 1, c(3.0));
        let r = realify(&z, FrameConvention::Dual).unwrap();
        assert_eq!(r, Christoffel::symmetric_from(2, &[(0, 1, 1, 3.0)]));
    }

    /// Complex data pushed forward by the frame and pulled back agrees with a
    /// direct change of basis applied to a real tensor.
    #[test]
    fn frame_change_inverts() {
        // Real structure → complex components by hand for f = e1 ± i e2 (dual coframe).
        let g = crate::random::random_christoffel(&mut crate::random::rng(6), 2, 1.0, true);
        let fvec = [[c(1.0), Complex64::new(0.0, 1.0)], [c(1.0), Complex64::new(0.0, -1.0)]];
        let cof = [[c(0.5), Complex64::new(0.0, -0.5)], [c(0.5), Complex64::new(0.0, 0.5)]];
        let mut z = ComplexChristoffel::new(alloc::vec![Slot::Plus(0, 1), Slot::Minus(0, 1)]);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut s = c(0.0);
                    for a in 0..2 {
                        for b in 0..2 {
                            for cc in 0..2 {
                                s += fvec[i][a] * fvec[j][b] * cof[k][cc] * g.get(a, b, cc);
                            }
                        }
                    }
                    z.set(i, j, k, s);
                }
            }
        }
        let back = realify(&z, FrameConvention::Dual).unwrap();
        assert!(back.sub(&g).max_abs() < 1e-14);
    }
}
