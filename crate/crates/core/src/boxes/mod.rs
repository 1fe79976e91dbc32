//! The sliced box of the derived category and its representations.
//!
//! Representations of the box on a degree window are exactly the bounded
//! minimal complexes on that window: [`rep_from_complex`] and
//! [`complex_from_rep`] are mutually inverse, and the box relations vanish
//! exactly when d² = 0.

mod morphism;
mod rep;
mod sliced;
mod wild;

pub use morphism::{chain_map_from_morphism, morphism_from_chain_map, BoxMorphism};
pub use rep::{check_e22, complex_from_rep, relation_value, rep_from_complex, BoxRepresentation};
pub use sliced::{
    ArrowDescription, BoxArrow, BoxCensus, BoxDescription, BoxObject, BoxRelation, RelationDescription, SlicedBox,
};
pub use wild::{wild_pattern_detect, BoxGenerator, NormalBoxPresentation, WildCertificate};
