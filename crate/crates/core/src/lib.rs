//! Finite entropic magmas and the invariants built from them: bracket values
//! of link diagrams, Tutte-style values of signed graphs, entropic homology,
//! and extensions by 2-cocycles. All arithmetic is exact.

pub mod cli;
pub mod error;
pub mod extension;
pub mod format;
pub mod graph;
pub mod homology;
pub mod intlin;
pub mod link;
pub mod magma;
pub mod tait;

pub use error::{Error, Result};
pub use magma::{EventualSequence, FiniteMagma, MagmaExpr};
