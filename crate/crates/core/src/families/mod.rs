//! Varieties of complexes of fixed vector rank and their parameter numbers.
//!
//! For ranks R• and an ideal I ⊆ J, [`HomSpace`] is H(R•, I) with the
//! quadratic equations h_{n-1} h_n = 0 defining D(R•, I) ⊆ P(H). The group
//! G(R•) acts by base change and [`par`] estimates
//! par(R•, I, A) = max_i (dim D_i − i).

mod orbit;
pub mod par;
mod space;

pub use orbit::{orbit_census, orbit_info, sweep_dim, tangent_dim, Orbit, OrbitInfo};
pub use par::{
    estimate_finite, estimate_local, estimate_par, free_ranks, linear_family, par_exact, par_local, rank_brackets, tame_heuristic, Census, OrbitRow,
    ParEstimate, ParMode, ParOptions, RankBrackets, SampleSummary, StratumRow, TameReport, TameVerdict,
};
pub use space::{ideal_blocks, DPoint, HomSpace, HomVar, Ideal, Quadric, SampleResult};
