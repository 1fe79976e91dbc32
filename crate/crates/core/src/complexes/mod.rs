//! Bounded complexes of projective modules over an [`AlgebraData`](crate::algebra::AlgebraData).

mod block;
mod complex;
mod format;
mod homology;
mod iso;
mod maps;
mod minimal;
mod rank;

pub use block::BlockMatrix;
pub use complex::{random_minimal, GeneralComplex, ProjComplex};
pub use format::{read_complex_file, write_complex, ComplexEntry, ComplexFile};
pub use homology::{homology, HomologyDegree, HomologyReport};
pub use iso::{iso_search, iso_test, IsoMethod, IsoVerdict, EXHAUSTIVE_LIMIT};
pub use maps::{
    chain_map_space, chain_maps, hom_dims, homotopies, homotopy_span, identity_map, is_chain_map, zero_map,
    ChainMap, ChainMapSpace, MapLayout,
};
pub use minimal::{extend, minimalize, tilde_reduce, truncate};
pub use rank::{slots_of, VectorRank};
