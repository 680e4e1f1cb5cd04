//! Prefractal snowflake domains and the finite-scale checks that go with them.
//!
//! The crate builds the inner and outer prefractals of the classical
//! (β-parametrised Koch) snowflake and of the square snowflake, measures
//! them, certifies thickness-type cube conditions level by level, estimates
//! dimensions, and decides the index arithmetic of function spaces supported
//! on such sets.

pub mod classical;
pub mod dimension;
pub mod error;
pub mod geom;
pub mod ifs;
pub mod prefractal;
pub mod spaces;
pub mod square;
pub mod suite;
pub mod svg;
pub mod thickness;

pub use error::{Error, Result};

/// Default cap on the number of edges any single construction may produce.
pub const DEFAULT_EDGE_CAP: u128 = 1 << 24;
