//! Parameter numbers par(R•, I, A) = max_i (dim D_i − i).
//!
//! Dimensions over an algebraically closed field are estimated at desk
//! scale. The exact mode counts F_q-points of every stratum D_i and reads
//! off the growth exponent between q and q²; the tangent mode bounds local
//! dimensions by tangent spaces; the sample mode sweeps explicit linear
//! families through random points.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{build_algebra, AlgebraData, Presentation};
use crate::complexes::VectorRank;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{ExtensionField, Field, FieldSpec, FiniteField, PrimeField, Rationals};
use crate::linalg::{span_dim, Matrix};

use super::orbit::{orbit_census, orbit_info, sweep_dim, tangent_dim};
use super::space::{DPoint, HomSpace, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParMode {
    /// Point census over F_q (and F_{q²}).
    ExactFq,
    TangentBound,
    Sampled,
}

impl ParMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ParMode::ExactFq),
            "tangent" => Ok(ParMode::TangentBound),
            "sample" => Ok(ParMode::Sampled),
            _ => Err(Error::invalid(format!("unknown mode `{s}` (exact, tangent or sample)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParOptions {
    pub mode: ParMode,
    pub seed: u64,
    pub samples: usize,
    /// Largest number of projective candidates enumerated.
    pub cap: u64,
    /// Also count points over F_{q²} in exact mode.
    pub extension: bool,
    pub exec: Execution,
}

impl Default for ParOptions {
    fn default() -> Self {
        Self {
            mode: ParMode::ExactFq,
            seed: 0,
            samples: 24,
            cap: 2_000_000,
            extension: true,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    pub orbit_dim: usize,
    /// Points of D_i over the base field (exact mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_extension: Option<u64>,
    pub dim_estimate: i64,
    pub excess: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub representative: Vec<String>,
    pub size: usize,
    pub orbit_dim: usize,
    pub projective_stabilizer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub field: String,
    pub points: usize,
    pub orbits: Vec<OrbitRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSummary {
    pub strategy: String,
    pub points: usize,
    pub attempts: usize,
    /// Largest explicit linear family found, as a projective dimension.
    pub largest_family: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParEstimate {
    pub mode: ParMode,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_field: Option<String>,
    pub ideal: String,
    pub lo_degree: i64,
    pub ranks: Vec<Vec<usize>>,
    pub dim_h: usize,
    pub group_dim: usize,
    /// D(R•, I) has no points (par is 0 by convention).
    pub empty: bool,
    pub semisimple: bool,
    pub lo: i64,
    pub hi: i64,
    pub strata: Vec<StratumRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<SampleSummary>,
    pub seed: u64,
    pub notes: Vec<String>,
}

impl ParEstimate {
    /// The estimate when lo = hi.
    pub fn value(&self) -> Option<i64> {
        (self.lo == self.hi).then_some(self.lo)
    }

    fn empty_for<F: Field>(space: &HomSpace<F>, opts: &ParOptions, note: &str) -> Self {
        Self {
            mode: opts.mode,
            field: space.field().name(),
            extension_field: None,
            ideal: space.ideal().to_string(),
            lo_degree: space.ranks().lo(),
            ranks: space.ranks().tuples().to_vec(),
            dim_h: space.dim(),
            group_dim: space.group_dim(),
            empty: true,
            semisimple: false,
            lo: 0,
            hi: 0,
            strata: Vec::new(),
            census: None,
            samples: None,
            seed: opts.seed,
            notes: vec![note.to_string()],
        }
    }
}

/// Growth exponent of point counts: log_q(N(q²)/N(q)), or log_q N(q)
/// with a single field.
fn growth(q: u64, n1: u64, n2: Option<u64>) -> i64 {
    let lq = (q as f64).ln();
    match n2 {
        Some(n2) if n1 > 0 && n2 > 0 => ((n2 as f64 / n1 as f64).ln() / lq).round() as i64,
        Some(n2) if n2 > 0 => ((n2 as f64).ln() / (2.0 * lq)).round() as i64,
        _ => ((n1.max(1) as f64).ln() / lq).round() as i64,
    }
}

struct Counted {
    census: Census,
    /// orbit dimension of every point
    dims: Vec<usize>,
}

fn count<F: FiniteField>(space: &HomSpace<F>, opts: &ParOptions) -> Result<Counted> {
    let f = space.field();
    let points = space.enumerate_points(opts.cap, opts.exec)?;
    let orbits = orbit_census(space, &points, opts.exec);
    let mut dims = vec![0; points.len()];
    for o in &orbits {
        for &m in &o.members {
            dims[m] = o.info.orbit_dim;
        }
    }
    let rows = orbits
        .iter()
        .map(|o| OrbitRow {
            representative: o.representative.coords.iter().map(|x| f.format(x)).collect(),
            size: o.size,
            orbit_dim: o.info.orbit_dim,
            projective_stabilizer: o.info.projective_stabilizer,
        })
        .collect();
    Ok(Counted {
        census: Census {
            field: f.name(),
            points: points.len(),
            orbits: rows,
        },
        dims,
    })
}

/// Exact-mode estimate: stratum sizes over F_q and, when `ext` is given,
/// over F_{q²}.
pub fn par_exact<F: FiniteField>(
    space: &HomSpace<F>,
    ext: Option<&HomSpace<ExtensionField>>,
    opts: &ParOptions,
) -> Result<ParEstimate> {
    if space.dim() == 0 {
        return Ok(ParEstimate::empty_for(space, opts, "H is zero, so D is empty"));
    }
    let base = count(space, opts)?;
    let upper = ext.map(|e| count(e, opts)).transpose()?;
    let mut levels: Vec<usize> = base.dims.clone();
    if let Some(u) = &upper {
        levels.extend(&u.dims);
    }
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() {
        let mut e = ParEstimate::empty_for(space, opts, "D has no points over the field");
        e.census = Some(base.census);
        e.extension_field = ext.map(|x| x.field().name());
        return Ok(e);
    }
    let q = space.field().order();
    let strata: Vec<StratumRow> = levels
        .iter()
        .map(|&i| {
            let n1 = base.dims.iter().filter(|&&d| d <= i).count() as u64;
            let n2 = upper.as_ref().map(|u| u.dims.iter().filter(|&&d| d <= i).count() as u64);
            let dim = growth(q, n1, n2);
            StratumRow {
                orbit_dim: i,
                points: Some(n1),
                points_extension: n2,
                dim_estimate: dim,
                excess: dim - i as i64,
            }
        })
        .collect();
    let par = strata.iter().map(|r| r.excess).max().unwrap_or(0).max(0);
    Ok(ParEstimate {
        mode: ParMode::ExactFq,
        field: space.field().name(),
        extension_field: ext.map(|x| x.field().name()),
        ideal: space.ideal().to_string(),
        lo_degree: space.ranks().lo(),
        ranks: space.ranks().tuples().to_vec(),
        dim_h: space.dim(),
        group_dim: space.group_dim(),
        empty: false,
        semisimple: false,
        lo: par,
        hi: par,
        strata,
        census: Some(base.census),
        samples: None,
        seed: opts.seed,
        notes: vec!["stratum dimensions are point-count growth exponents".into()],
    })
}

/// A linear family through h inside D: directions u from the tangent
/// space with Q(u) = 0 and B(u, u') = 0 pairwise, so h + Σ t_a u_a ∈ D for
/// all t.
pub fn linear_family<F: Field>(space: &HomSpace<F>, h: &DPoint<F::Elem>) -> Vec<Vec<F::Elem>> {
    let f = space.field();
    let jac = space.jacobian(&h.coords);
    let tangent = if jac.rows() == 0 {
        Matrix::identity(f, space.dim()).to_rows()
    } else {
        jac.kernel(f)
    };
    let mut chosen: Vec<Vec<F::Elem>> = Vec::new();
    for u in tangent {
        let mut span = chosen.clone();
        span.push(h.coords.clone());
        let before = span_dim(f, &span, space.dim());
        span.push(u.clone());
        if span_dim(f, &span, space.dim()) == before || !space.satisfies(&u) {
            continue;
        }
        if chosen.iter().all(|c| space.polar(&u, c).iter().all(|x| f.is_zero(x))) {
            chosen.push(u);
        }
    }
    chosen
}

#[derive(Clone, Debug)]
struct Local {
    tangent: usize,
    orbit: usize,
    /// (max orbit dimension seen on the family, dimension swept by G)
    family: (usize, usize),
    family_dim: usize,
}

/// Fields with at least this many elements make random points of a linear
/// family generic with high probability.
const GENERIC_FIELD_SIZE: u64 = 100_000;

fn generic_scalar<G: Field>(g: &G, rng: &mut ChaCha8Rng) -> G::Elem {
    match g.size() {
        Some(_) => g.random_elem(rng),
        None => g.from_i64(rng.gen_range(-1_000_000..=1_000_000)),
    }
}

/// H(R•, I) over a large field, for generic ranks on linear families.
struct Lifted<'a, F: Field, G: Field> {
    space: &'a HomSpace<G>,
    embed: &'a (dyn Fn(&F::Elem) -> G::Elem + Send + Sync),
}

fn local_data<F: Field, G: Field>(space: &HomSpace<F>, big: &Lifted<F, G>, h: &DPoint<F::Elem>, seed: u64) -> Local {
    let g = big.space.field();
    let dirs = linear_family(space, h);
    let lift = |v: &[F::Elem]| -> Vec<G::Elem> { v.iter().map(|x| (big.embed)(x)).collect() };
    let hg = lift(&h.coords);
    let dirs_g: Vec<Vec<G::Elem>> = dirs.iter().map(|u| lift(u)).collect();
    let mut all = dirs_g.clone();
    all.push(hg.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes: Vec<DPoint<G::Elem>> = big.space.normalize(&hg).into_iter().collect();
    for _ in 0..4 {
        let mut p = hg.clone();
        for u in &dirs_g {
            let t = generic_scalar(g, &mut rng);
            for (x, y) in p.iter_mut().zip(u) {
                g.add_mul_assign(x, &t, y);
            }
        }
        if let Some(p) = big.space.normalize(&p) {
            probes.push(p);
        }
    }
    let orbit = orbit_info(space, h).orbit_dim;
    let mut fam_orbit = orbit;
    let mut sweep = 0;
    for p in &probes {
        fam_orbit = fam_orbit.max(orbit_info(big.space, p).orbit_dim);
        sweep = sweep.max(sweep_dim(big.space, p, &all));
    }
    Local {
        tangent: tangent_dim(space, h),
        orbit,
        family: (fam_orbit, sweep),
        family_dim: dirs.len(),
    }
}

/// Tangent-bound and sampled modes. Points are all F_q-points when
/// enumeration is cheap, random points otherwise. Ranks along linear
/// families are taken over an extension with at least 10⁵ elements.
pub fn par_local<F: Field>(space: &HomSpace<F>, opts: &ParOptions) -> Result<ParEstimate> {
    match space.field().sampling_extension(GENERIC_FIELD_SIZE) {
        Some((ext, emb)) => {
            let alg = space.algebra().base_change(ext, |x| emb(x));
            let big = HomSpace::new(Arc::new(alg), space.ranks().clone(), space.ideal())?;
            let embed = move |x: &F::Elem| emb(x);
            par_local_with(space, &Lifted { space: &big, embed: &embed }, opts)
        }
        None => {
            let embed = |x: &F::Elem| x.clone();
            par_local_with(space, &Lifted { space, embed: &embed }, opts)
        }
    }
}

fn par_local_with<F: Field, G: Field>(space: &HomSpace<F>, big: &Lifted<F, G>, opts: &ParOptions) -> Result<ParEstimate> {
    if space.dim() == 0 {
        return Ok(ParEstimate::empty_for(space, opts, "H is zero, so D is empty"));
    }
    let mut notes = Vec::new();
    let small = space.candidate_count().map(|c| c <= 4096.0).unwrap_or(false);
    let (points, summary) = if small {
        notes.push("local data at every point over the field".to_string());
        let pts = space.enumerate_points(opts.cap, opts.exec)?;
        let n = pts.len();
        (
            pts,
            SampleSummary {
                strategy: "exhaustive".into(),
                points: n,
                attempts: n,
                largest_family: 0,
                diagnostic: None,
            },
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let r = space.sample_points(&mut rng, opts.samples, 8);
        let n = r.points.len();
        (
            r.points,
            SampleSummary {
                strategy: r.strategy.into(),
                points: n,
                attempts: r.attempts,
                largest_family: 0,
                diagnostic: r.diagnostic,
            },
        )
    };
    if points.is_empty() {
        let mut e = ParEstimate::empty_for(space, opts, "no points found");
        e.samples = Some(summary);
        return Ok(e);
    }
    let seeds: Vec<(usize, u64)> = (0..points.len()).map(|k| (k, opts.seed.wrapping_add(k as u64))).collect();
    let locals = opts.exec.map(seeds, |(k, s)| local_data(space, big, &points[k], s));
    let mut levels: Vec<usize> = locals.iter().map(|l| l.orbit).collect();
    levels.extend(locals.iter().map(|l| l.family.0));
    levels.sort_unstable();
    levels.dedup();
    let hi_raw = locals.iter().map(|l| l.tangent as i64 - l.orbit as i64).max().unwrap_or(0);
    let lo = locals
        .iter()
        .map(|l| l.family.1 as i64 - l.family.0 as i64)
        .max()
        .unwrap_or(0)
        .max(0);
    let mut hi = hi_raw.max(0);
    if lo > hi {
        notes.push(format!("tangent bound {hi} is below an explicit family; raised to {lo}"));
        hi = lo;
    }
    let strata = levels
        .iter()
        .map(|&i| {
            let dim = match opts.mode {
                ParMode::Sampled => locals
                    .iter()
                    .filter(|l| l.family.0 <= i)
                    .map(|l| l.family.1 as i64)
                    .max(),
                _ => locals.iter().filter(|l| l.orbit <= i).map(|l| l.tangent as i64).max(),
            }
            .unwrap_or(-1);
            StratumRow {
                orbit_dim: i,
                points: None,
                points_extension: None,
                dim_estimate: dim,
                excess: dim - i as i64,
            }
        })
        .filter(|r| r.dim_estimate >= 0)
        .collect();
    let mut summary = summary;
    summary.largest_family = locals.iter().map(|l| l.family_dim).max().unwrap_or(0);
    notes.push("hi bounds dim D_i - i by tangent dimension minus orbit dimension at the points used".into());
    notes.push("lo is swept out by explicit linear families inside D".into());
    Ok(ParEstimate {
        mode: opts.mode,
        field: space.field().name(),
        extension_field: None,
        ideal: space.ideal().to_string(),
        lo_degree: space.ranks().lo(),
        ranks: space.ranks().tuples().to_vec(),
        dim_h: space.dim(),
        group_dim: space.group_dim(),
        empty: false,
        semisimple: false,
        lo,
        hi,
        strata,
        census: None,
        samples: Some(summary),
        seed: opts.seed,
        notes,
    })
}

fn semisimple_estimate(field: String, ranks: &VectorRank, ideal: Ideal, opts: &ParOptions) -> ParEstimate {
    ParEstimate {
        mode: opts.mode,
        field,
        extension_field: None,
        ideal: ideal.to_string(),
        lo_degree: ranks.lo(),
        ranks: ranks.tuples().to_vec(),
        dim_h: 0,
        group_dim: 0,
        empty: true,
        semisimple: true,
        lo: 0,
        hi: 0,
        strata: Vec::new(),
        census: None,
        samples: None,
        seed: opts.seed,
        notes: vec!["semisimple algebra: the radical is zero, so D is empty".into()],
    }
}

/// Whether the arrow ideal can serve as the radical; semisimple algebras
/// whose arrows are not nilpotent are reported separately.
fn radical_status<F: Field>(alg: &AlgebraData<F>) -> Result<bool> {
    if alg.trace_form_radical_dim() == 0 {
        return Ok(false);
    }
    if alg.arrow_ideal_nilpotent() {
        return Ok(true);
    }
    Err(Error::invalid(
        "the arrow ideal is not nilpotent and the algebra is not semisimple; its radical is not spanned by paths",
    ))
}

/// Estimate par for an algebra over a finite field; `ext` is the same
/// algebra over F_{q²} for the exact-mode growth count.
pub fn estimate_finite<F: FiniteField>(
    alg: AlgebraData<F>,
    ext: Option<AlgebraData<ExtensionField>>,
    ranks: &VectorRank,
    ideal: Ideal,
    opts: &ParOptions,
) -> Result<ParEstimate> {
    if !radical_status(&alg)? {
        return Ok(semisimple_estimate(alg.field().name(), ranks, ideal, opts));
    }
    let space = HomSpace::new(Arc::new(alg), ranks.clone(), ideal)?;
    match opts.mode {
        ParMode::ExactFq => {
            let ext = ext.map(|a| HomSpace::new(Arc::new(a), ranks.clone(), ideal)).transpose()?;
            par_exact(&space, ext.as_ref(), opts)
        }
        _ => par_local(&space, opts),
    }
}

/// Build the algebra over the requested field and estimate par.
pub fn estimate_par(
    pres: &Presentation,
    field: FieldSpec,
    ranks: &VectorRank,
    ideal: Ideal,
    opts: &ParOptions,
) -> Result<ParEstimate> {
    match field {
        FieldSpec::Prime(p) => {
            let alg = build_algebra(PrimeField::new(p)?, pres)?;
            let ext = if opts.mode == ParMode::ExactFq && opts.extension {
                Some(build_algebra(ExtensionField::new(p, 2)?, pres)?)
            } else {
                None
            };
            estimate_finite(alg, ext, ranks, ideal, opts)
        }
        FieldSpec::Rationals => {
            if opts.mode == ParMode::ExactFq {
                return Err(Error::invalid("exact mode counts points and needs a finite field"));
            }
            estimate_local(build_algebra(Rationals, pres)?, ranks, ideal, opts)
        }
    }
}

/// Tangent-bound or sampled estimate over any field.
pub fn estimate_local<F: Field>(
    alg: AlgebraData<F>,
    ranks: &VectorRank,
    ideal: Ideal,
    opts: &ParOptions,
) -> Result<ParEstimate> {
    if opts.mode == ParMode::ExactFq {
        return Err(Error::invalid("exact mode counts points and needs a finite field"));
    }
    if !radical_status(&alg)? {
        return Ok(semisimple_estimate(alg.field().name(), ranks, ideal, opts));
    }
    par_local(&HomSpace::new(Arc::new(alg), ranks.clone(), ideal)?, opts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TameVerdict {
    ConsistentWithTame,
    WildEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameReport {
    pub total_rank: usize,
    pub par_lo: i64,
    pub par_hi: i64,
    pub verdict: TameVerdict,
    pub note: String,
}

/// Compare par with |R•| = Σ r_ki. A heuristic record, not a theorem.
pub fn tame_heuristic(ranks: &VectorRank, est: &ParEstimate) -> TameReport {
    let total = ranks.total();
    let t = total as i64;
    let verdict = if est.hi <= t {
        TameVerdict::ConsistentWithTame
    } else if est.lo > t {
        TameVerdict::WildEvidence
    } else {
        TameVerdict::Inconclusive
    };
    let note = match (verdict, est.mode) {
        (TameVerdict::WildEvidence, ParMode::ExactFq) => "point-count estimate exceeds |R|".into(),
        (TameVerdict::WildEvidence, _) => "an explicit family exceeds |R|".into(),
        _ => "derived tameness needs par <= |R| for all vector ranks".into(),
    };
    TameReport {
        total_rank: total,
        par_lo: est.lo,
        par_hi: est.hi,
        verdict,
        note,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankBrackets {
    /// max{b : b a_i <= r_i} per degree
    pub floor: Vec<usize>,
    /// min{b : b a_i >= r_i} per degree
    pub ceiling: Vec<usize>,
    pub floor_ranks: VectorRank,
    pub ceiling_ranks: VectorRank,
}

/// Free ranks bracketing R• from below and above, for the rank vector `a`
/// of the regular module.
pub fn rank_brackets(ranks: &VectorRank, a: &[usize]) -> Result<RankBrackets> {
    if a.len() != ranks.vertex_count() {
        return Err(Error::shape("regular rank vector has the wrong length"));
    }
    if a.contains(&0) {
        return Err(Error::invalid("regular rank entries must be positive"));
    }
    let floor: Vec<usize> = ranks
        .tuples()
        .iter()
        .map(|r| r.iter().zip(a).map(|(r, a)| r / a).min().expect("nonempty"))
        .collect();
    let ceiling: Vec<usize> = ranks
        .tuples()
        .iter()
        .map(|r| r.iter().zip(a).map(|(r, a)| r.div_ceil(*a)).max().expect("nonempty"))
        .collect();
    let free = |b: &[usize]| VectorRank::new(ranks.lo(), b.iter().map(|&b| a.iter().map(|x| b * x).collect()).collect());
    Ok(RankBrackets {
        floor_ranks: free(&floor)?,
        ceiling_ranks: free(&ceiling)?,
        floor,
        ceiling,
    })
}

/// Free ranks b·a for the regular rank vector a = (1, …, 1) of a basic algebra.
pub fn free_ranks(b: &[usize], vertices: usize, lo: i64) -> Result<VectorRank> {
    VectorRank::new(lo, b.iter().map(|&x| vec![x; vertices]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn dual_par(ranks: &str, mode: ParMode) -> ParEstimate {
        let opts = ParOptions {
            mode,
            ..ParOptions::default()
        };
        let pres = corpus::presentation(corpus::DUAL_NUMBERS);
        estimate_par(&pres, FieldSpec::Prime(3), &VectorRank::parse(ranks, 0).unwrap(), Ideal::Radical, &opts).unwrap()
    }

    #[test]
    fn dual_numbers_exact() {
        let e = dual_par("1/1", ParMode::ExactFq);
        assert_eq!(e.value(), Some(0));
        assert_eq!(e.census.as_ref().unwrap().points, 1);
        let e = dual_par("1/1/1", ParMode::ExactFq);
        assert_eq!(e.value(), Some(0));
        let rows: Vec<(usize, i64)> = e.strata.iter().map(|r| (r.orbit_dim, r.dim_estimate)).collect();
        assert_eq!(rows, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn dual_numbers_local_modes() {
        for mode in [ParMode::TangentBound, ParMode::Sampled] {
            // fixed points have a 1-dimensional tangent space, so only the
            // upper bound is loose
            let e = dual_par("1/1/1", mode);
            assert_eq!((e.lo, e.hi), (0, 1));
        }
    }

    #[test]
    fn semisimple_is_empty() {
        let pres = corpus::presentation(corpus::SEMISIMPLE2);
        let r = VectorRank::parse("1,1/1,1", 0).unwrap();
        let e = estimate_par(&pres, FieldSpec::Prime(3), &r, Ideal::Radical, &ParOptions::default()).unwrap();
        assert!(e.empty && e.semisimple);
        assert_eq!(e.value(), Some(0));
    }

    #[test]
    fn brackets() {
        let r = VectorRank::new(0, vec![vec![3, 2]]).unwrap();
        let b = rank_brackets(&r, &[2, 1]).unwrap();
        assert_eq!((b.floor[0], b.ceiling[0]), (1, 2));
        assert!(rank_brackets(&r, &[0, 1]).is_err());
    }
}
