//! Exact computations with affine crystallographic groups: nilpotent Lie
//! algebras and their affine representations, the crystallography test,
//! unipotent shadows of polycyclic representations, canonical forms for
//! free abelian groups, and realization of finite extensions.
//!
//! All arithmetic is exact over ℚ or a real quadratic field ℚ(√d).

#![allow(clippy::needless_range_loop)]

pub mod affine;
pub mod engel;
pub mod error;
pub mod jordan;
pub mod lie;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod realization;
pub mod rep;
pub mod samples;
pub mod scalar;
pub mod scheuneman;
pub mod search;
pub mod shadow;
pub mod torus;

pub use error::{Error, Result};
pub use matrix::{Matrix, Vector};
pub use scalar::{Field, Scalar};
