//! Multidimensional cluster-correcting array codes over GF(2).

pub mod array;
pub mod bch;
pub mod code;
pub mod config;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod export;
pub mod fire;
pub mod gf2;
pub mod lattice;
pub mod pipeline;
pub mod syndrome;
pub mod verify;

pub use code::{Correction, LinearCode};
pub use error::{DecodeError, Error, Result};
pub use lattice::{ClusterShape, Dims, ErrorPattern, Position};
pub use syndrome::Syndrome;
