//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use quiverbox::algebra::{groebner_basis, reduce, PathPoly};
use quiverbox::boxes::{check_e22, complex_from_rep, morphism_from_chain_map, rep_from_complex, BoxMorphism, SlicedBox};
use quiverbox::complexes::{
    chain_maps, hom_dims, homology, identity_map, iso_test, random_minimal, zero_map, ChainMap, ProjComplex,
    VectorRank,
};
use quiverbox::corpus;
use quiverbox::deformations::{brustle_family, flat_limit, par_scan, AlgebraFamily, Grid};
use quiverbox::exec::Execution;
use quiverbox::families::{
    estimate_par, orbit_census, rank_brackets, HomSpace, Ideal, ParEstimate, ParOptions,
};
use quiverbox::field::{Field, FieldSpec, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(limit), || format!("took {:.1}s, limit {limit}s", t.as_secs_f64()))
}

// ------------------------------------------------------------------ 1

fn algebra_core() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, text) in corpus::ALGEBRAS {
        let q = corpus::load(Rationals, text).map_err(|e| format!("{name} over Q: {e}"))?;
        let r = q.check_invariants();
        ensure(r.all_pass(), || format!("{name} over Q: {:?}", r.failures))?;
        let p = corpus::load(f3(), text).map_err(|e| format!("{name} over F3: {e}"))?;
        let r = p.check_invariants();
        ensure(r.all_pass(), || format!("{name} over F3: {:?}", r.failures))?;
        ensure(q.dim() == p.dim(), || format!("{name}: dimension depends on the field"))?;
        checked += 2;
    }
    within(start, 10)?;
    Ok(format!("{checked} algebra/field pairs, {:.2}s", start.elapsed().as_secs_f64()))
}

// ------------------------------------------------------------------ 2

fn nu_coassociativity() -> Outcome {
    for (name, text) in corpus::ALGEBRAS {
        corpus::load(Rationals, text)
            .unwrap()
            .check_nu_coassociative()
            .map_err(|e| format!("{name}: {e}"))?;
        corpus::load(f3(), text)
            .unwrap()
            .check_nu_coassociative()
            .map_err(|e| format!("{name} over F3: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut dims = Vec::new();
    for k in 0..50 {
        let a = random_admissible(&mut rng);
        a.check_nu_coassociative().map_err(|e| format!("random presentation {k}: {e}"))?;
        dims.push(a.dim());
    }
    Ok(format!(
        "{} corpus algebras and 50 random presentations (dims {}..={})",
        corpus::ALGEBRAS.len(),
        dims.iter().min().unwrap(),
        dims.iter().max().unwrap()
    ))
}

// ------------------------------------------------------------------ 3

fn round_trip() -> Outcome {
    let start = Instant::now();
    let algs = corpus_f3();
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let (mut valid, mut invalid, mut attempts) = (0, 0, 0);
    while valid < 200 || invalid < 200 {
        attempts += 1;
        ensure(attempts < 20_000, || "could not produce enough perturbed complexes".into())?;
        let (name, alg) = &algs[rng.gen_range(0..algs.len())];
        let degrees = rng.gen_range(2..=4);
        let c = random_complex(alg, &mut rng, degrees, 2);
        let b = SlicedBox::build(alg.clone(), c.lo(), c.top()).unwrap();
        let rep = rep_from_complex(&b, &c).unwrap();
        let back = complex_from_rep(&b, &rep).unwrap();
        ensure(back == c, || format!("{name}: round trip changed the complex"))?;
        ensure(rep_from_complex(&b, &back).unwrap() == rep, || format!("{name}: representation changed"))?;
        let e22 = check_e22(&b, &rep).unwrap();
        ensure(c.check_dsquared().is_none() && e22, || format!("{name}: valid complex rejected"))?;
        valid += 1;
        // add noise to about half of the arrow matrices
        let mut bad = rep.clone();
        for m in bad.maps.iter_mut() {
            if rng.gen_bool(0.5) {
                continue;
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    m[(i, j)] = f.add(&m[(i, j)], &f.from_i64(rng.gen_range(0..3)));
                }
            }
        }
        let cb = complex_from_rep(&b, &bad).unwrap();
        let (d2, e22) = (cb.check_dsquared().is_none(), check_e22(&b, &bad).unwrap());
        ensure(d2 == e22, || format!("{name}: d² check says {d2}, box relations say {e22}"))?;
        if !d2 {
            invalid += 1;
        }
    }
    within(start, 60)?;
    Ok(format!(
        "{valid} valid and {invalid} invalid complexes agree, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

// ------------------------------------------------------------------ 4

fn random_chain_map(
    c: &ProjComplex<PrimeField>,
    c2: &ProjComplex<PrimeField>,
    rng: &mut ChaCha8Rng,
) -> ChainMap<u64> {
    let f = c.field();
    let basis = chain_maps(c, c2).unwrap();
    let mut m = zero_map(c, c2);
    for g in &basis {
        m = m.add(f, &g.scale(f, &rng.gen_range(0..3u64)));
    }
    m
}

fn functoriality() -> Outcome {
    let algs = corpus_f3();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut identities = 0;
    let mut nonzero = 0;
    for t in 0..100 {
        let (name, alg) = &algs[t % algs.len()];
        let ranks = random_ranks(&mut rng, alg.vertex_count(), 3, 2);
        let cs: Vec<_> = (0..3).map(|_| random_minimal(alg, &ranks, &mut rng)).collect();
        let b = SlicedBox::build(alg.clone(), ranks.lo(), ranks.top()).unwrap();
        let c = &cs[0];
        let rep = rep_from_complex(&b, c).unwrap();
        let id = morphism_from_chain_map(&b, c, c, &identity_map(c)).unwrap();
        ensure(id == BoxMorphism::identity(&b, &rep), || format!("{name}: identity not preserved"))?;
        identities += 1;
        let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..3);
        let (i, j, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let fm = random_chain_map(&cs[i], &cs[j], &mut rng);
        let gm = random_chain_map(&cs[j], &cs[k], &mut rng);
        let gf = gm.compose(alg, &fm).unwrap();
        let lhs = morphism_from_chain_map(&b, &cs[i], &cs[k], &gf).unwrap();
        let mf = morphism_from_chain_map(&b, &cs[i], &cs[j], &fm).unwrap();
        let mg = morphism_from_chain_map(&b, &cs[j], &cs[k], &gm).unwrap();
        ensure(lhs == mg.compose(&b, &mf), || format!("{name}: composition triple {t} disagrees"))?;
        if !gf.is_zero(alg.field()) {
            nonzero += 1;
        }
    }
    Ok(format!("{identities} identities, 100 triples ({nonzero} with nonzero composite)"))
}

// ------------------------------------------------------------------ 5

fn oracle_instances() -> Vec<(String, ProjComplex<PrimeField>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut out = Vec::new();
    for (name, alg) in corpus_f3() {
        for k in 0..8 {
            let degrees = rng.gen_range(2..=4);
            let mut c = random_complex(&alg, &mut rng, degrees, 2);
            if k % 2 == 1 {
                let v = rng.gen_range(0..alg.vertex_count());
                let n = rng.gen_range(c.lo() + 1..=c.top());
                c = c.direct_sum(&cone(&alg, v, n)).unwrap();
            }
            if total_dim(&c) <= 200 {
                out.push((format!("{name}#{k}"), c));
            }
        }
    }
    out
}

fn homology_oracle() -> Outcome {
    let cases = oracle_instances();
    let mut pairs = 0;
    for (label, c) in &cases {
        let ours: Vec<(i64, Vec<usize>)> = homology(c).degrees.into_iter().map(|d| (d.degree, d.dims)).collect();
        ensure(ours == oracle_homology(c), || format!("{label}: homology differs"))?;
    }
    for w in cases.windows(2) {
        let ((la, a), (lb, b)) = (&w[0], &w[1]);
        for (x, y) in [(a, a), (a, b), (b, a)] {
            if x.algebra().id() != y.algebra().id() {
                continue;
            }
            let ours = hom_dims(x, y).map_err(|e| format!("{la}/{lb}: {e}"))?;
            ensure(ours == oracle_hom_dims(x, y), || {
                format!("{la}/{lb}: hom dims {ours:?} vs {:?}", oracle_hom_dims(x, y))
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} complexes, {pairs} hom pairs", cases.len()))
}

// ------------------------------------------------------------------ 6

fn brustle_numbers() -> Outcome {
    let fam = brustle_family();
    let f = Rationals;
    let dim_at = |x: i64| fam.evaluate(f, &f.from_i64(x)).map(|a| a.dim());
    let d0 = dim_at(0).map_err(|e| e.to_string())?;
    let others: Vec<usize> = [1, 2, -1, 5].iter().map(|&x| dim_at(x).unwrap()).collect();
    let generic = fam.generic_dim(f).map_err(|e| e.to_string())?;
    ensure(d0 == 16, || format!("dim A(0) = {d0}"))?;
    ensure(others.iter().all(|&d| d == 15) && generic == 15, || {
        format!("dim A(λ≠0) = {others:?}, generic {generic}")
    })?;
    let lim = flat_limit(&fam, f, &f.zero()).map_err(|e| e.to_string())?;
    ensure(lim.quotient.dim() == 15, || format!("flat limit has dimension {}", lim.quotient.dim()))?;
    let q = fam.quiver();
    let bound = fam.presentation().bound;
    let base = fam.relations_at(&f, &f.zero()).unwrap();
    let mut with_extra = base.clone();
    with_extra.extend(lim.extra.iter().cloned());
    let xi1_alpha = q
        .path(&[q.arrow_index("xi1").unwrap(), q.arrow_index("alpha").unwrap()])
        .unwrap();
    let mut with_xi = base;
    with_xi.push(PathPoly::monomial(&f, xi1_alpha, f.one()));
    let cap = 2 * (bound + 2);
    let g1 = groebner_basis(&f, &with_extra, cap, bound).unwrap();
    let g2 = groebner_basis(&f, &with_xi, cap, bound).unwrap();
    let inside = |a: &[PathPoly<BigRational>], g: &[PathPoly<BigRational>]| a.iter().all(|p| reduce(&f, g, p).is_zero());
    ensure(inside(&g1, &g2) && inside(&g2, &g1), || "the extra relations generate a different ideal".into())?;
    Ok(format!(
        "dims 16 / 15, flat limit 15, {} extra relation(s) equivalent to xi1*alpha",
        lim.extra.len()
    ))
}

// ------------------------------------------------------------------ 7

fn exact_opts(seed: u64) -> ParOptions {
    ParOptions {
        seed,
        ..ParOptions::default()
    }
}

fn par_ranks(text: &str, r: &VectorRank, ideal: Ideal) -> ParEstimate {
    let pres = corpus::presentation(text);
    estimate_par(&pres, FieldSpec::Prime(3), r, ideal, &exact_opts(SEED)).unwrap()
}

fn par_of(text: &str, ranks: &str, ideal: Ideal) -> ParEstimate {
    par_ranks(text, &VectorRank::parse(ranks, 0).unwrap(), ideal)
}

fn exact_cases() -> Outcome {
    let e = par_of(corpus::DUAL_NUMBERS, "1/1", Ideal::Radical);
    let census = e.census.as_ref().ok_or("no census for (1,1)")?;
    ensure(e.value() == Some(0), || format!("par(1,1) = {:?}..{:?}", e.lo, e.hi))?;
    ensure(census.points == 1 && census.orbits.len() == 1 && census.orbits[0].orbit_dim == 0, || {
        format!("(1,1) census {census:?}")
    })?;
    let e = par_of(corpus::DUAL_NUMBERS, "1/1/1", Ideal::Radical);
    let census = e.census.as_ref().ok_or("no census for (1,1,1)")?;
    let mut sizes: Vec<usize> = census.orbits.iter().map(|o| o.size).collect();
    sizes.sort();
    ensure(e.value() == Some(0), || format!("par(1,1,1) = {}..{}", e.lo, e.hi))?;
    ensure(sizes == vec![1, 1, 2] && census.points == 4, || format!("(1,1,1) orbit sizes {sizes:?}"))?;
    let e = par_of(corpus::SEMISIMPLE2, "1,1/1,1", Ideal::Radical);
    ensure(e.empty && e.value() == Some(0), || format!("k×k: empty {} par {}..{}", e.empty, e.lo, e.hi))?;
    Ok("dual (1,1): 1 point; dual (1,1,1) over F3: orbits 1+1+2; k×k: D empty, par 0".into())
}

// ------------------------------------------------------------------ 8

fn orbit_iso() -> Outcome {
    let cases: &[(&str, &str, &[&str])] = &[
        ("dual_numbers", corpus::DUAL_NUMBERS, &["1/1", "1/1/1", "2/1", "1/2", "2/2", "1/2/1", "1/1/1/1"]),
        ("cubic", corpus::CUBIC, &["1/1", "1/1/1", "2/1", "1/2"]),
        ("a2", corpus::A2, &["1,0/0,1", "0,1/1,0", "1,1/1,1", "1,0/1,1", "1,1/0,1", "1,0/0,1/1,0"]),
    ];
    let (mut spaces, mut points, mut tests) = (0, 0, 0);
    let mut methods = std::collections::BTreeMap::new();
    for q in [2u64, 3] {
        let f = PrimeField::new(q).unwrap();
        for (name, text, ranks) in cases {
            let alg = Arc::new(corpus::load(f, text).unwrap());
            for r in *ranks {
                let space = HomSpace::new(alg.clone(), VectorRank::parse(r, 0).unwrap(), Ideal::Radical).unwrap();
                if space.dim() == 0 || space.dim() > 6 {
                    continue;
                }
                spaces += 1;
                let pts = space.enumerate_points(1_000_000, Execution::default()).unwrap();
                points += pts.len();
                let orbits = orbit_census(&space, &pts, Execution::default());
                let reps: Vec<ProjComplex<PrimeField>> =
                    orbits.iter().map(|o| space.to_complex(&o.representative.coords)).collect();
                for (o, rep) in orbits.iter().zip(&reps) {
                    for &m in &o.members {
                        let v = iso_test(rep, &space.to_complex(&pts[m].coords), SEED).unwrap();
                        *methods.entry(format!("{:?}", v.method)).or_insert(0) += 1;
                        tests += 1;
                        ensure(v.isomorphic, || format!("F{q} {name} {r}: orbit members not isomorphic"))?;
                    }
                }
                for a in 0..reps.len() {
                    for b in a + 1..reps.len() {
                        let v = iso_test(&reps[a], &reps[b], SEED).unwrap();
                        *methods.entry(format!("{:?}", v.method)).or_insert(0) += 1;
                        tests += 1;
                        ensure(!v.isomorphic, || {
                            format!("F{q} {name} {r}: distinct orbits {a}, {b} isomorphic ({:?})", v.method)
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{spaces} spaces, {points} points, {tests} iso tests {methods:?}, 0 discrepancies"))
}

// ------------------------------------------------------------------ 9

fn monotonicity() -> Outcome {
    let ranks = ["1/1", "1/1/1", "2/1", "1/2", "2/2", "1/2/1"];
    let mut triples = 0;
    for r in ranks {
        let big = par_of(corpus::DUAL_NUMBERS, r, Ideal::Radical);
        let small = par_of(corpus::DUAL_NUMBERS, r, Ideal::RadicalPower(2));
        ensure(small.lo <= big.hi, || format!("{r}: par(J²) {} > par(J) {}", small.lo, big.hi))?;
        triples += 1;
    }
    // sandwich between free ranks
    let mut sandwiches = 0;
    let checks: &[(&str, &str, usize)] = &[
        (corpus::DUAL_NUMBERS, "1/1", 1),
        (corpus::DUAL_NUMBERS, "2/1", 1),
        (corpus::DUAL_NUMBERS, "1/2/1", 1),
        (corpus::A2, "1,0/1,1", 2),
        (corpus::A2, "1,1/0,1", 2),
        (corpus::A2, "0,1/1,0/1,1", 2),
    ];
    for &(text, r, s) in checks {
        let ranks = VectorRank::parse(r, 0).unwrap();
        let br = rank_brackets(&ranks, &vec![1; s]).unwrap();
        let mid = par_of(text, r, Ideal::Radical);
        let lo = par_ranks(text, &br.floor_ranks, Ideal::Radical);
        let hi = par_ranks(text, &br.ceiling_ranks, Ideal::Radical);
        ensure(lo.lo <= mid.hi && mid.lo <= hi.hi, || {
            format!("{r}: floor {}..{}, R {}..{}, ceiling {}..{}", lo.lo, lo.hi, mid.lo, mid.hi, hi.lo, hi.hi)
        })?;
        sandwiches += 1;
    }
    Ok(format!("{triples} ideal pairs, {sandwiches} free-rank sandwiches"))
}

// ------------------------------------------------------------------ 10

fn semicontinuity() -> Outcome {
    let start = Instant::now();
    let fam = AlgebraFamily::parse(corpus::X2_MINUS_LAMBDA_X).unwrap();
    let zero = BigRational::from_integer(0.into());
    let mut lines = Vec::new();
    for b in [vec![1, 1], vec![1, 1, 1]] {
        let s = par_scan(&fam, FieldSpec::Prime(11), &b, &Grid::All, &zero, &exact_opts(SEED)).map_err(|e| e.to_string())?;
        ensure(s.rows.len() == 11, || format!("{} grid points", s.rows.len()))?;
        let values: Vec<i64> = s
            .rows
            .iter()
            .map(|r| r.estimate.value().ok_or_else(|| format!("λ={} not exact", r.lambda)))
            .collect::<Result<_, _>>()?;
        let at0 = s.rows.iter().position(|r| r.lambda == "0").ok_or("0 not on the grid")?;
        let constant = values.iter().all(|&v| v == values[0]);
        let peak = values.iter().all(|&v| v <= values[at0]);
        ensure(constant || peak, || format!("b={b:?}: values {values:?}"))?;
        lines.push(format!("b={b:?} values {values:?}"));
    }
    within(start, 60)?;
    Ok(format!("{}, {:.1}s", lines.join("; "), start.elapsed().as_secs_f64()))
}

// ------------------------------------------------------------------ 11

fn determinism() -> Outcome {
    let alg = data("dual_numbers.alg");
    let a2 = data("a2.alg");
    let cubic = data("cubic.alg");
    let fam = data("x2_minus_lambda_x.fam");
    let brustle = data("brustle.fam");
    let cx = data("complexes/dual_x.cpx");
    let cxn = data("complexes/dual_x_neg.cpx");
    let cu = data("complexes/dual_unit.cpx");
    let runs: Vec<Vec<&str>> = vec![
        vec!["algebra", "inspect", &alg],
        vec!["algebra", "inspect", &a2, "--field", "F3"],
        vec!["box", "build", &cubic, "--window", "0..2", "--full"],
        vec!["complex", "check", &cu],
        vec!["complex", "homology", &cu],
        vec!["complex", "minimalize", &cu],
        vec!["complex", "iso", &cx, &cxn],
        vec!["par", "estimate", &alg, "--ranks", "1/1/1", "--field", "F3"],
        vec!["par", "estimate", &alg, "--ranks", "2/2", "--field", "F3", "--mode", "sample"],
        vec!["par", "estimate", &a2, "--ranks", "1,1/1,1", "--mode", "tangent", "--seed", "7"],
        vec!["family", "dims", &fam],
        vec!["family", "flatlimit", &brustle],
        vec!["family", "parscan", &fam, "--ranks", "1,1", "--grid", "0..3"],
        vec!["par", "estimate", &alg, "--ranks", "1/1", "--mode", "nonsense"],
    ];
    for args in &runs {
        run_twice(args);
    }
    Ok(format!("{} invocations byte-identical across two runs", runs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("algebra core invariants", algebra_core),
        ("nu coassociativity", nu_coassociativity),
        ("complex/representation round trip", round_trip),
        ("morphism functoriality", functoriality),
        ("homology and hom oracle", homology_oracle),
        ("degenerating family numbers", brustle_numbers),
        ("exact parameter cases", exact_cases),
        ("orbits versus isomorphism", orbit_iso),
        ("ideal monotonicity and free-rank sandwich", monotonicity),
        ("semicontinuity on x^2 - lambda x", semicontinuity),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.1}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{t:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
