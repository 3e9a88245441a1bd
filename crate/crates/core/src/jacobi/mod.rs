//! Spaces of Jacobi diagrams modulo STU, AS and IHX, truncated by degree.

pub mod brute;
pub mod build;
pub mod diagram;
pub mod enumerate;
pub mod linalg;
pub mod nf;
pub mod ops;
pub mod relations;
pub mod vector;

pub use diagram::{canonical, Anchor, Diagram};
pub use nf::{equivalent, normal_form};
pub use vector::{Context, DVec};
