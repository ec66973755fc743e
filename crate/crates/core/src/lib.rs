//! Constant-coefficient (homogeneous) affine connections on ℝ^m.
//!
//! A structure is a Christoffel tensor `Γ_ij^k` with constant entries. This
//! crate computes its curvature, Ricci tensor and Ricci signature, the
//! action of `GL(m)` by change of basis, the genericity polynomial, the
//! isotropy (stabilizer) group, and the torsion-order bound coming from the
//! support of `Γ`. It also carries a catalog of explicit structures, each
//! paired with a closed-form Ricci tensor.
//!
//! Signature convention: `(p, q)` counts **negative** (timelike) and
//! positive (spacelike) eigenvalues, in that order.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod config;
pub mod curvature;
pub mod error;
pub mod genericity;
pub mod linalg;
pub mod random;
pub mod symmetry;
pub mod tensor;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use tensor::{act, act_on_form, Christoffel, LinearMap, Signature, SymForm, TwoTensor};
