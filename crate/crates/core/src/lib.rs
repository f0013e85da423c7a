//! Exact computation of the desingularization invariant of hypersurfaces over
//! the rationals, resolution by blowings-up with coordinate centres,
//! monomialization of principal ideals, truncated Hironaka division, and the
//! combinatorial ordering of divisor functions on simplicial complexes.

pub mod error;
pub mod invariant;
pub mod chart;
pub mod cli;
pub mod combinatorial;
pub mod diagram;
pub mod poly;
pub mod presentation;
pub mod resolution;

pub use error::{Error, Result};
