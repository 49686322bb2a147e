//! Exact-arithmetic engine for the affine Nappi-Witten algebra.
//!
//! The crate builds the induced module families of the affinized
//! four-dimensional algebra span{a, b, c, d} at level 1, computes module
//! actions by PBW straightening, solves and certifies singular-vector
//! systems, realizes the vertex-operator structure of the vacuum module
//! with its Virasoro action, and implements the lattice spectral-flow and
//! extension operators over L = Zc + Zd. All coefficients are exact
//! rationals; there is no floating point anywhere.

pub mod algebra;
pub mod character;
pub mod error;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod modules;
pub mod scalar;
pub mod singular;
pub mod voa;

pub use error::{EngineError, Result};
pub use scalar::Scalar;
