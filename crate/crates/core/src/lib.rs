//! Dual complex matrices: the dual SVD, the H-S decomposition, dual
//! generalized inverses and the relations between them.

pub mod cmatrix;
pub mod config;
pub mod dmatrix;
pub mod dsvd;
pub mod dualnum;
pub mod error;
pub mod gen;
pub mod ginv;
pub mod hsd;
pub mod relations;

pub use cmatrix::ComplexMatrix;
pub use config::Tolerances;
pub use dmatrix::DualMatrix;
pub use dualnum::{dreal_leq, DualComplex, DualReal};
pub use error::{Error, Result};
