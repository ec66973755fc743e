//! Torsion-order bound from the support of `Γ`.
//!
//! If `T` is diagonal with eigenvalues `κ_i` in some (possibly complex)
//! frame, `T` fixes `Γ` only if `κ_i κ_j = κ_k` wherever `Γ_ij^k ≠ 0`.
//! Additively these are the relations `e_i + e_j − e_k` in `ℤ^m`; the
//! exponents of finite-order solutions live in the torsion of
//! `ℤ^m / rowspan`, whose largest invariant factor bounds the order of `T`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tensor::Christoffel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPattern {
    m: usize,
    theta: Vec<bool>,
}

impl SupportPattern {
    pub fn empty(m: usize) -> Self {
        SupportPattern { m, theta: alloc::vec![false; m * m * m] }
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut theta = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    theta.push(f(i, j, k));
                }
            }
        }
        SupportPattern { m, theta }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.theta[(i * self.m + j) * self.m + k]
    }

    pub fn count(&self) -> usize {
        self.theta.iter().filter(|&&t| t).count()
    }
}

pub fn support_pattern(g: &Christoffel, tol: f64) -> SupportPattern {
    SupportPattern::from_fn(g.m(), |i, j, k| g.get(i, j, k).abs() > tol)
}

/// One row `e_i + e_j − e_k` per supported `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub m: usize,
    pub relations: Vec<Vec<i64>>,
}

impl RelationLattice {
    pub fn from_pattern(p: &SupportPattern) -> Self {
        let m = p.m();
        let mut relations = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if p.get(i, j, k) {
                        let mut row = alloc::vec![0i64; m];
                        row[i] += 1;
                        row[j] += 1;
                        row[k] -= 1;
                        relations.push(row);
                    }
                }
            }
        }
        RelationLattice { m, relations }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …` of an integer matrix (rows of
/// length `cols`), by Smith reduction in checked 128-bit arithmetic.
pub fn smith_invariants(rows: &[Vec<i64>], cols: usize) -> Result<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nr = a.len();
    let mut out = Vec::new();
    for t in 0..nr.min(cols) {
        // Smallest nonzero entry of the trailing block as pivot.
        let Some((pi, pj)) = (t..nr)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..cols {
                        a[i][j] = a[i][j]
                            .checked_sub(q.checked_mul(a[t][j]).ok_or(Error::Overflow)?)
                            .ok_or(Error::Overflow)?;
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        row[j] =
                            row[j].checked_sub(q.checked_mul(row[t]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // Pivot must divide the rest; otherwise fold the offending row in.
            let bad = (t + 1..nr).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(Error::Overflow)?;
                    }
                }
                None => break,
            }
        }
        let d = a[t][t].unsigned_abs();
        out.push(i64::try_from(d).map_err(|_| Error::Overflow)?);
    }
    Ok(out)
}

/// Largest invariant factor of the relation lattice, or 1 when the quotient
/// has no torsion.
pub fn torsion_order_bound(p: &SupportPattern) -> Result<u64> {
    let lat = RelationLattice::from_pattern(p);
    let inv = smith_invariants(&lat.relations, lat.m)?;
    Ok(inv.into_iter().map(|d| d as u64).max().unwrap_or(1).max(1))
}

/// Independent check for a square, full-rank relation set: enumerate the
/// cosets of `ℤ^m / rowspan` breadth-first from the generators `e_i` and
/// return the largest element order. `None` if the rows are not square and
/// nonsingular.
pub fn quotient_torsion_by_enumeration(rows: &[Vec<i64>]) -> Option<u64> {
    let m = rows.len();
    if rows.iter().any(|r| r.len() != m) {
        return None;
    }
    let det = int_det(rows);
    if det == 0 {
        return None;
    }
    let d = det.abs();
    // v is in the lattice iff each Cramer numerator det(R with row i := v) is divisible by det.
    let member = |v: &[i128]| -> bool {
        (0..m).all(|i| {
            let mut r: Vec<Vec<i128>> = rows.iter().map(|x| x.iter().map(|&y| y as i128).collect()).collect();
            r[i] = v.to_vec();
            int_det_wide(&r) % det == 0
        })
    };
    let reduce = |v: Vec<i128>| -> Vec<i128> { v.into_iter().map(|x| x.rem_euclid(d)).collect() };
    let mut reps: Vec<Vec<i128>> = alloc::vec![alloc::vec![0; m]];
    let mut head = 0;
    while head < reps.len() {
        let base = reps[head].clone();
        head += 1;
        for i in 0..m {
            let mut w = base.clone();
            w[i] += 1;
            let w = reduce(w);
            let seen = reps.iter().any(|r| {
                let diff: Vec<i128> = w.iter().zip(r).map(|(a, b)| a - b).collect();
                member(&diff)
            });
            if !seen {
                reps.push(w);
            }
        }
    }
    let order = |v: &[i128]| -> u64 {
        (1..=d as u64).find(|&n| member(&v.iter().map(|x| x * n as i128).collect::<Vec<_>>())).unwrap_or(0)
    };
    reps.iter().map(|r| order(r)).max()
}

fn int_det(rows: &[Vec<i64>]) -> i128 {
    let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    int_det_wide(&wide)
}

/// Exact determinant by cofactor expansion (sizes here are tiny).
fn int_det_wide(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * int_det_wide(&minor)
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_pattern_has_bound_one() {
        assert_eq!(torsion_order_bound(&SupportPattern::empty(4)).unwrap(), 1);
    }

    #[test]
    fn hand_relations() {
        let rows = alloc::vec![alloc::vec![2, -1], alloc::vec![-1, 2]];
        assert_eq!(smith_invariants(&rows, 2).unwrap(), alloc::vec![1, 3]);
        assert_eq!(quotient_torsion_by_enumeration(&rows), Some(3));
    }

    #[test]
    fn pattern_to_relations() {
        // Γ_11^2 and Γ_22^1: κ₁² = κ₂, κ₂² = κ₁.
        let p = SupportPattern::from_fn(2, |i, j, k| (i, j, k) == (0, 0, 1) || (i, j, k) == (1, 1, 0));
        let lat = RelationLattice::from_pattern(&p);
        assert_eq!(lat.relations, alloc::vec![alloc::vec![2, -1], alloc::vec![-1, 2]]);
        assert_eq!(torsion_order_bound(&p).unwrap(), 3);
    }

    #[test]
    fn known_groups() {
        // ℤ/2 ⊕ ℤ/4 ⊕ ℤ
        let rows = alloc::vec![alloc::vec![2, 0, 0], alloc::vec![0, 4, 0]];
        assert_eq!(smith_invariants(&rows, 3).unwrap(), alloc::vec![2, 4]);
        // diag(2,3) ≅ ℤ/6
        let rows = alloc::vec![alloc::vec![2, 0], alloc::vec![0, 3]];
        assert_eq!(smith_invariants(&rows, 2).unwrap(), alloc::vec![1, 6]);
        assert_eq!(quotient_torsion_by_enumeration(&rows), Some(6));
    }

    proptest! {
        #[test]
        fn snf_matches_enumeration(a in -4i64..5, b in -4i64..5, c in -4i64..5, d in -4i64..5) {
            let rows = alloc::vec![alloc::vec![a, b], alloc::vec![c, d]];
            prop_assume!(a * d - b * c != 0);
            let inv = smith_invariants(&rows, 2).unwrap();
            prop_assert_eq!(inv.len(), 2);
            prop_assert_eq!(inv[0] * inv[1], (a * d - b * c).abs());
            prop_assert_eq!(inv[1] % inv[0], 0);
            prop_assert_eq!(Some(inv[1] as u64), quotient_torsion_by_enumeration(&rows));
        }

        #[test]
        fn snf_3x3_divisibility_and_det(v in proptest::collection::vec(-3i64..4, 9)) {
            let rows: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let det = int_det(&rows);
            prop_assume!(det != 0);
            let inv = smith_invariants(&rows, 3).unwrap();
            prop_assert_eq!(inv.iter().map(|&x| x as i128).product::<i128>(), det.abs());
            prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert_eq!(Some(inv[2] as u64), quotient_torsion_by_enumeration(&rows));
        }
    }
}
