//! Transmutation operator kernels for one-dimensional Schrodinger operators
//! `-y'' + q y`, and a spectral solver for Sturm-Liouville problems built on them.

pub mod bicomplex;
pub mod cli;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod potential;
pub mod quadrature;
pub mod special;
pub mod spectral;
pub mod spps;
pub mod tables;
pub mod taylor;
pub mod validate;
pub mod wave;

pub use bicomplex::Bicomplex;
pub use error::{Error, Result};
pub use grid::{build_basis_family, BasisFamily, FamilyOptions, GridFunction};
