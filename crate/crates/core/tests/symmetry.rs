use std::f64::consts::PI;

use affine_moduli_core::catalog::{build, sample_params, FamilyId};
use affine_moduli_core::random::{random_christoffel, rng};
use affine_moduli_core::symmetry::*;
use affine_moduli_core::Christoffel;

#[test]
fn stabilizer_dimensions() {
    let mut r = rng(4);
    for id in [FamilyId::Family1, FamilyId::Family2] {
        for _ in 0..20 {
            let p = sample_params(id, &mut r);
            let s = stabilizer_lie_algebra(&build(id, &p).unwrap(), 1e-8);
            assert_eq!(s.lie_dimension, 1, "{} {p:?}", id.name());
            assert!(s.spectral_gap >= 1e3);
        }
    }
    for id in [FamilyId::Family3, FamilyId::Family4a, FamilyId::Family4b, FamilyId::Model3d] {
        let s = stabilizer_lie_algebra(&build(id, &id.default_params()).unwrap(), 1e-8);
        assert_eq!(s.lie_dimension, 0, "{}", id.name());
        assert!(s.spectral_gap >= 1e3);
    }
    for m in 2..=4 {
        let s = stabilizer_lie_algebra(&Christoffel::zeros(m), 1e-8);
        assert_eq!(s.lie_dimension, m * m);
        assert!(s.spectral_gap.is_infinite());
    }
}

#[test]
fn stabilizer_basis_annihilates() {
    let g = build(FamilyId::Family2, &[1.0, 0.5, -0.3, 2.0]).unwrap();
    let s = stabilizer_lie_algebra(&g, 1e-8);
    for x in &s.lie_basis {
        assert!(infinitesimal_action(x, &g).unwrap().max_abs() < 1e-10);
    }
}

#[test]
fn scan_finds_z3_on_gamma2() {
    let g = build(FamilyId::Gamma2, &[]).unwrap();
    let hits = finite_symmetry_scan(&g, 200, 1).unwrap();
    assert_eq!(hits.len(), 3);
    let r = rotation_2d(2.0 * PI / 3.0);
    assert!(hits.iter().any(|h| h.map.matrix().sub(r.matrix()).max_abs() < 1e-6));
    assert!(hits.iter().all(|h| matches!(h.order, Order::Finite(1 | 3))));
}

#[test]
fn scan_finds_s3() {
    let g = build(FamilyId::Family3S3, &[]).unwrap();
    let hits = finite_symmetry_scan(&g, 200, 5).unwrap();
    assert!(hits.len() >= 6);
    for t in exceptional_group_elements(Exceptional::S3) {
        assert!(hits.iter().any(|h| h.map.matrix().sub(t.matrix()).max_abs() < 1e-6));
    }
}

#[test]
fn scan_on_generic_structures_returns_identity() {
    let mut r = rng(77);
    for _ in 0..5 {
        let g = random_christoffel(&mut r, 3, 1.0, true);
        let hits = finite_symmetry_scan(&g, 40, 2).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].map.matrix().sub(&affine_moduli_core::Matrix::identity(3)).max_abs() < 1e-6);
    }
}

#[test]
fn scan_rejects_degenerate_ricci() {
    assert!(finite_symmetry_scan(&Christoffel::zeros(3), 5, 0).is_err());
}

#[test]
fn torsion_bound_examples() {
    assert_eq!(torsion_order_bound(&SupportPattern::empty(3)).unwrap(), 1);
    let rows = vec![vec![2, -1], vec![-1, 2]];
    assert_eq!(smith_invariants(&rows, 2).unwrap().last(), Some(&3));
    assert_eq!(quotient_torsion_by_enumeration(&rows), Some(3));
}
