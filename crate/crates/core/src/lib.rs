//! Exact computations with the universal differential calculus of a
//! finite-dimensional Hopf algebra: Karoubi operators, twisted
//! coinvariants, Hopf-cyclic mixed complexes and their cohomology.
//!
//! Everything is over the rationals and `no_std` (with `alloc`).

#![no_std]

extern crate alloc;

pub mod hopf;
pub mod linalg;
pub mod omega;
pub mod cohomology;
pub mod cyclic;
pub mod report;
pub mod scalar;

pub use scalar::Scalar;
