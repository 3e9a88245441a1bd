//! Exact finite-type computations for framed links and the 3-manifolds
//! obtained from them by surgery.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: set partitions, joins, transport along maps and
//!   fixed-point-free involutions.
//! - [`brauer`]: oriented Brauer diagrams, the skeleta of Jacobi diagrams.
//! - [`jacobi`]: exact vector spaces of Jacobi diagrams modulo STU, AS and IHX.
//! - [`tangles`]: a small language for framed oriented tangles, linking
//!   matrices and Kirby-move builders.
//! - [`kontsevich`]: a degree-truncated Kontsevich integral built from an
//!   associator solved exactly up to a fixed degree.
//! - [`lmo`]: trace maps, the `j_n` maps and the resulting 3-manifold
//!   invariants.
//! - [`aarhus`]: formal Gaussian integration as an independent route to the
//!   low-degree invariant.
//! - [`acceptance`]: the end-to-end acceptance criteria with pinned time
//!   limits.
//! - [`cli`]: request parsing, presets and JSON/text rendering used by the
//!   `lmokit` binary.

pub mod aarhus;
pub mod acceptance;
pub mod brauer;
pub mod cli;
pub mod error;
pub mod jacobi;
pub mod kontsevich;
pub mod lmo;
pub mod partitions;
pub mod tangles;

pub use error::{Error, Result};
pub use num::BigRational as Q;
