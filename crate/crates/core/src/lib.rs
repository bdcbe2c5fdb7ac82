//! Livsic-type determinantal representations of rational projective curves
//! and hyperbolicity tests for real curves with respect to codimension-2
//! planes.

pub mod bezoutian;
pub mod cli;
pub mod curves;
pub mod detrep;
pub mod error;
pub mod exterior;
pub mod hyperbolicity;
pub mod io;
pub mod linalg;
pub mod ratfunc;

pub use error::{Error, Result};
pub use exterior::{GammaTensor, IndexSet, PluckerVector};
