//! Free, boolean and classical convolutions of probability measures on
//! [0, ∞), and the maps that intertwine them.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod convolutions;
pub mod error;
pub mod io;
pub mod maps;
pub mod measures;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{Family, GridMeasure, Kind, Measure, Piece, TransformSpec, Which};
