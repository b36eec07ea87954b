//! Finite, dimension-truncated simplicial sets and diagrams of them over
//! finite categories: gerbes, total spaces, relative nerves, coCartesian
//! fibration checks, marked localization and homotopy colimits.

pub mod corpus;
pub mod error;
pub mod fibrations;
pub mod grothendieck;
pub mod hocolim;
pub mod io;
pub mod marked;
pub mod scat;
pub mod suite;

pub use error::{Budget, Error, Result};

/// Dimension bound used when none is given.
pub const DEFAULT_DIM_BOUND: usize = 4;
