//! The n-gonal construction and its low-degree specializations.

mod bigonal;
mod construct;
mod multisection;
mod trigonal;

pub use bigonal::*;
pub use construct::*;
pub use multisection::*;
pub use trigonal::*;
