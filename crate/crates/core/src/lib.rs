#![allow(clippy::result_large_err)]

//! Exact computational topology for piecewise-linear height functions on
//! finite simplicial complexes: level and interlevel sets, levelset zigzag
//! modules, truncated Reeb complexes, mapping-telescope persistence and the
//! first pages of the Mayer-Vietoris spectral sequence of interval covers.

pub mod cech;
pub mod complex;
pub mod corpus;
pub mod cut;
pub mod error;
pub mod field;
pub mod filtration;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod persistence;
pub mod reeb;
pub mod zigzag;

pub use complex::{Level, Rational, Simplex, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, SparseVec};
