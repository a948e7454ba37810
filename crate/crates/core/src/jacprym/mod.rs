//! Jacobians, norm maps and Prym varieties of metric double covers.

mod checks;
mod homology;
mod prym;
mod symmetric;

pub use checks::*;
pub use homology::*;
pub use prym::*;
pub use symmetric::*;
