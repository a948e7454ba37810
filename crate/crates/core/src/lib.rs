//! Tropical n-gonal constructions on harmonic double covers of metric graphs,
//! with tropical Jacobians and Prym varieties as polarized integral tori.

pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod iso;
pub mod jacprym;
pub mod linalg;
pub mod metric;
pub mod morphism;
pub mod ngonal;
pub mod random;
pub mod tori;

pub use error::{Error, Report, Result};
pub use graph::{Graph, Point};
pub use morphism::{DoubleCover, HarmonicMorphism, Involution, Tower};
