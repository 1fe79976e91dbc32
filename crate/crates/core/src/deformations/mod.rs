//! One-parameter families of algebras over the affine line.
//!
//! [`AlgebraFamily`] evaluates fibres A(λ0) and the algebra over k(λ);
//! [`dim_scan`] compares fibre dimensions on a grid with the generic one,
//! [`flat_limit`] computes the flat fibre at a point and [`par_scan`] tracks
//! parameter numbers of free ranks across the grid.

mod family;
mod limit;
mod scan;

pub use family::{brustle_family, dim_scan, is_flat_on, AlgebraFamily, FibreDim, FlatnessReport, Grid};
pub use limit::{flat_limit, FlatLimit, FlatLimitReport};
pub use scan::{par_scan, ParScan, ParScanRow};
