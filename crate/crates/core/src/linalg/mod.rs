//! Exact integer and rational matrices, Smith normal form and Gram isometries.

pub mod isometry;
pub mod matrix;
pub mod snf;

pub use isometry::{clear_denominators, gram_isometries, vectors_of_norm, GramIsometries};
pub use matrix::{int, rat, IntMatrix, Matrix, RatMatrix};
pub use snf::{cokernel_tf, kernel_basis, snf, Cokernel, Smith};
