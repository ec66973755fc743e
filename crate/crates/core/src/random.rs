//! Seeded random draws shared by the scan, the exponent estimator and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::tensor::{Christoffel, LinearMap};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-scale, scale]`; symmetric in the lower indices when
/// `torsion_free`.
pub fn random_christoffel(r: &mut impl Rng, m: usize, scale: f64, torsion_free: bool) -> Christoffel {
    let g = Christoffel::from_fn(m, |_, _, _| r.gen_range(-scale..=scale));
    if torsion_free {
        g.symmetrized()
    } else {
        g
    }
}

pub fn random_matrix(r: &mut impl Rng, m: usize) -> Matrix {
    Matrix::from_fn(m, m, |_, _| r.gen_range(-1.0..=1.0))
}

/// A well-conditioned map: `I + 0.5·U` with `U` uniform, redrawn until
/// `|det| ≥ 0.1`; a random sign flip of the first column keeps both
/// orientations in play.
pub fn random_map(r: &mut impl Rng, m: usize) -> LinearMap {
    loop {
        let mut a = Matrix::identity(m).add(&random_matrix(r, m).scale(0.5));
        if r.gen_bool(0.5) {
            for i in 0..m {
                a[(i, 0)] = -a[(i, 0)];
            }
        }
        if a.det().abs() >= 0.1 {
            return LinearMap(a);
        }
    }
}
