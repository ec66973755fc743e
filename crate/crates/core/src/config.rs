/// Every numerical threshold used by the crate, in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|det A|` at or below this is treated as singular.
    pub det: f64,
    /// Entrywise equality / symmetry checks.
    pub equality: f64,
    /// Eigenvalue zero band, relative to the spectral radius.
    pub signature_rel: f64,
    /// Absolute floor for the eigenvalue zero band.
    pub signature_floor: f64,
    /// Singular values below `rank * σ_max` count as zero.
    pub rank: f64,
    /// `is_fixed` accepts `‖AΓ − Γ‖∞ ≤ fixed_rel · (1 + ‖Γ‖∞)`.
    pub fixed_rel: f64,
    /// Genericity threshold relative to the Hadamard scale of the polynomial.
    pub generic_rel: f64,
    /// `order_of` tolerance on `‖Aⁿ − I‖∞`.
    pub order: f64,
    pub max_order: u32,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        det: 1e-12,
        equality: 1e-10,
        signature_rel: 1e-9,
        signature_floor: 1e-12,
        rank: 1e-8,
        fixed_rel: 1e-9,
        generic_rel: 1e-10,
        order: 1e-9,
        max_order: 256,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
