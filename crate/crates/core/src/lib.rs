//! Exact spectral invariants of polarized endomorphisms acting on cohomology.
//!
//! Given the action of an endomorphism on each cohomology degree (as an
//! integer matrix or just its characteristic polynomial), this crate checks
//! the Jordan-block symmetry and the functional equations of the
//! characteristic polynomials, computes Newton and Hodge polygons, compares
//! them via majorization, and assembles the Lefschetz zeta function.

pub mod error;
pub mod exactnum;
pub mod matrixops;
pub mod majorize;
pub mod poly;
pub mod polygons;
pub mod varieties;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
