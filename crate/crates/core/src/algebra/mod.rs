//! Basic finite-dimensional algebras given by quivers with relations.

mod data;
mod groebner;
mod path;
mod presentation;

pub use data::{build_algebra, AlgebraData, Element, InvariantReport, NuTerm};
pub use groebner::{groebner_basis, normal_paths, reduce, PathPoly};
pub use path::{Arrow, Path, Quiver};
pub use presentation::{format_relation, Presentation, RationalPoly, Relation};
