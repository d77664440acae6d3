//! Gap-constrained binary sequences over {R, B} as a combinatorial model for
//! rows of generalized Stirling coefficient triangles.
//!
//! The crate enumerates sequence spaces, evaluates candidate models against
//! target triangle rows, certifies where a model family cannot reach a row
//! (too few distinct types), and searches finite families of model variants.

pub mod cli;
pub mod error;
pub mod model;
pub mod search;
pub mod sequences;
pub mod table;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use model::{canonical_model, AffineRule, BCountRange, GapThreshold, ModelSpec, TypeHistogram, TypeMap};
pub use sequences::{enumerate_all, parse_sequence, BinarySequence, GapStatistics, SequenceSpace, Symbol};

pub use triangle::{embedded_half_triangle, ingest_bfile, CoefficientTriangle, RowRule};
