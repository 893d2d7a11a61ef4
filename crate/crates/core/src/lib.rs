//! Unimodularity of hierarchical-model design matrices.
//!
//! A simplicial complex `C` on `[n]` with level vector `d` defines the design
//! matrix `A_{C,d}` of a hierarchical log-linear model. This crate builds those
//! matrices and decides whether they are unimodular in three independent ways:
//! structural recognition of nuclear complexes, a forbidden-minor search, and
//! an exact circuit oracle on the matrix itself.

pub mod complex;
mod error;
mod linalg;
pub mod matrix;
pub mod oracle;
pub mod census;
pub mod classify;
pub mod nonbinary;
mod vertex_set;

pub use classify::{classify_binary, BinaryVerdict, Method};
pub use complex::{NamedComplex, Relabeled, SimplicialComplex};
pub use error::{Error, Result};
pub use matrix::{DVector, IntegerMatrix, Label};
pub use vertex_set::{VertexSet, MAX_VERTICES};
pub use census::{enumerate_complexes, verify_theorem, CensusReport};
pub use nonbinary::{classify_d, DVerdict, Verdict};
