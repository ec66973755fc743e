//! Front end for `affine-moduli-core`: the `TensorDocument` interchange
//! format, text reports, the verification suite, and command dispatch.

pub mod app;
pub mod document;
pub mod report;
pub mod suite;

pub use app::{exit, run, run_captured, Streams};
pub use document::{Metadata, ParseError, TensorDocument};
