//! Exact symbolic engine for d-holomorphic vector bundles on Klein surfaces:
//! twisted-cocycle bundle data over finite dianalytic atlases, global sections
//! by exact linear solves, Atiyah classes, jet bundles, residue trace pairings
//! and the existence criterion for d-holomorphic connections.
//!
//! Everything is computed over the Gaussian rationals; every answer is an
//! exact equality, never a floating-point approximation.

pub mod error;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod smoothfn;

pub use error::{Error, Result};
