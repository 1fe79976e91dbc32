//! Derived categories of quiver algebras at desk scale.
//!
//! The crate builds a finite-dimensional algebra from a quiver with
//! relations, works with bounded minimal complexes of projectives over it,
//! translates them to representations of the sliced box, estimates parameter
//! numbers of complex varieties, and analyses one-parameter families of
//! algebras (dimension jumps and flat limits).
//!
//! All arithmetic is exact, over F_p, Q, F_{p^k} or Q(λ)/F_p(λ).

// field methods such as `from_i64` need the field value; nested block tables are plain data
#![allow(clippy::wrong_self_convention, clippy::type_complexity)]

pub mod algebra;
pub mod boxes;
pub mod cli;
pub mod complexes;
pub mod corpus;
pub mod deformations;
pub mod error;
pub mod exec;
pub mod families;
pub mod field;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
