use std::fmt;

use thiserror::Error;

use crate::graph::Point;

/// A list of violated invariants. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: impl Into<String>) {
        self.entries.push(entry.into());
    }

    pub fn is_valid(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "valid");
        }
        write!(f, "{}", self.entries.join("; "))
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(Report),
    #[error("not a harmonic morphism: {0}")]
    NotHarmonic(Report),
    #[error("{0} requires connected graph")]
    Disconnected(&'static str),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("precondition `{hypothesis}` violated: {detail}")]
    Precondition {
        hypothesis: &'static str,
        detail: String,
    },
    #[error("non-generic tetragonal fiber over {point}: profile {profile:?}")]
    NonGeneric { point: Point, profile: Vec<u64> },
    #[error("sign undefined on dilated partition")]
    SignUndefined,
    #[error("refinement does not respect part sizes: {0}")]
    BadRefinement(String),
    #[error("{0} is not an edge of the target")]
    NoSuchEdge(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("not a polarization: {0}")]
    NotPolarization(String),
    #[error("not an isogeny: {0}")]
    NotIsogeny(String),
    #[error("torus homomorphism condition fails: {0}")]
    BadHom(String),
    #[error("infinite edge {0} lies on a cycle")]
    InfiniteCycle(usize),
    #[error("invalid tower file: {0}")]
    Format(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rejection budget exceeded: {0}")]
    Budget(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(hypothesis: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        hypothesis,
        detail: detail.into(),
    }
}
