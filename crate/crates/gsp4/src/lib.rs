//! Combinatorics of GSp4 and its dual group: extended affine Weyl groups,
//! Serre weights, tame inertial types, Jordan–Hölder constituents and local
//! model computations.

pub mod affweyl;
pub mod error;
pub mod jh;
pub mod lattice;
pub mod localmodel;
pub mod poly;
pub mod rootdata;
pub mod types;
pub mod weights;

pub use error::{Error, Result};
