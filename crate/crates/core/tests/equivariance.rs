use affine_moduli_core::curvature::{ricci_split, signature, symmetric_ricci};
use affine_moduli_core::genericity::{rho2_s, xi_sequence};
use affine_moduli_core::random::{random_christoffel, random_map, rng};
use affine_moduli_core::tensor::act_on_form;
use affine_moduli_core::{act, linalg};

fn rel(a: &[f64], b: &[f64]) -> f64 {
    let d = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    d / linalg::max_abs(b).max(1.0)
}

#[test]
fn invariants_transform_under_the_action() {
    for m in 2..=4 {
        let mut r = rng(100 + m as u64);
        for _ in 0..100 {
            let g = random_christoffel(&mut r, m, 1.0, true);
            let a = random_map(&mut r, m);
            let h = act(&a, &g).unwrap();

            let rs = symmetric_ricci(&g);
            let want = act_on_form(&a, &rs).unwrap();
            assert!(rel(symmetric_ricci(&h).matrix().as_slice(), want.matrix().as_slice()) < 1e-8);

            let want = act_on_form(&a, &rho2_s(&g)).unwrap();
            assert!(rel(rho2_s(&h).matrix().as_slice(), want.matrix().as_slice()) < 1e-8);

            let at = a.matrix().transpose();
            let w = at.mul_vec(&ricci_split(&g).omega);
            assert!(rel(&ricci_split(&h).omega, &w) < 1e-8);

            let ainv = a.inverse().unwrap();
            if let (Some(x0), Some(x1)) = (xi_sequence(&g, m), xi_sequence(&h, m)) {
                for (u, v) in x0.iter().zip(&x1) {
                    assert!(rel(v, &ainv.matrix().mul_vec(u)) < 1e-8);
                }
            }

            let (s0, s1) = (signature(&rs).unwrap(), signature(&symmetric_ricci(&h)).unwrap());
            if !s0.degenerate {
                assert_eq!((s0.p, s0.q), (s1.p, s1.q));
            }
        }
    }
}
