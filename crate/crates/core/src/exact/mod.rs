//! Exact linear algebra over the rationals.

pub mod echelon;
mod intertwine;
mod linmap;
mod matrix;
mod scalar;
mod space;
mod vector;

pub use intertwine::intertwiners;
pub use linmap::{kernel_basis, solve, solve_matrix, tensor, LinMap};
pub use matrix::Matrix;
pub use scalar::{ParseScalarError, Scalar};
pub use space::{span_closure, sparse, LinearExtension, Space, Subspace};
pub use vector::Vector;
