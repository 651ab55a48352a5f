//! Exact verification engine for degree-zero equivariant invariants of ADE
//! surface resolutions and the matching orbifold computations.

pub mod arith;
pub mod cli;
pub mod correspondence;
pub mod data;
pub mod error;
pub mod groups;
pub mod hodge;
pub mod localization;
pub mod qrr;
pub mod series_qde;

pub use error::{Error, Result};
