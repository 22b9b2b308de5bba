//! Simulation and global-pulse compilation for a ZZ-coupled superconducting
//! qubit ladder driven by three species-wide control lines.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod device;
pub mod effective;
pub mod error;
pub mod expm;
pub mod hamiltonian;
pub mod lattice;
pub mod protocols;
pub mod quantum;
pub mod simulator;
pub mod sparse;

pub use error::{Error, Result};
