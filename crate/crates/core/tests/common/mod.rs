//! Helpers shared by the integration tests: a dense mod-p oracle that only
//! trusts the structure constants, random presentations and complexes, and a
//! runner for the binary.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use quiverbox::algebra::{AlgebraData, Arrow, Path, PathPoly, Quiver};
use quiverbox::complexes::{random_minimal, BlockMatrix, ProjComplex, VectorRank};
use quiverbox::corpus;
use quiverbox::field::{Field, PrimeField, Rationals};
use rand::{Rng, RngCore};

pub type Alg3 = Arc<AlgebraData<PrimeField>>;

pub fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

pub fn corpus_f3() -> Vec<(&'static str, Alg3)> {
    corpus::ALGEBRAS
        .iter()
        .map(|(n, t)| (*n, Arc::new(corpus::load(f3(), t).unwrap())))
        .collect()
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

// ---------------------------------------------------------------- oracle

/// Rank of a dense matrix over F_p by plain Gaussian elimination.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let s = row[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = (*x + p * p - s * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Product of two algebra vectors from the raw multiplication table.
fn mul(alg: &AlgebraData<PrimeField>, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; alg.dim()];
    for (u, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (v, y) in b.iter().enumerate() {
            if *y == 0 {
                continue;
            }
            for (w, c) in alg.product(u, v) {
                out[*w] = (out[*w] + x * y % p * c) % p;
            }
        }
    }
    out
}

type Blocks = Vec<Vec<Vec<u64>>>;

fn blocks_of(d: &BlockMatrix<u64>) -> Blocks {
    (0..d.rows())
        .map(|r| (0..d.cols()).map(|c| d.get(r, c).to_vec()).collect())
        .collect()
}

/// `a * b` for block matrices of shapes rows × inner and inner × cols.
fn block_mul(alg: &AlgebraData<PrimeField>, a: &Blocks, b: &Blocks, shape: (usize, usize, usize), p: u64) -> Blocks {
    let (rows, inner, cols) = shape;
    let mut out = vec![vec![vec![0; alg.dim()]; cols]; rows];
    for r in 0..rows {
        for c in 0..cols {
            for m in 0..inner {
                let x = mul(alg, &a[r][m], &b[m][c], p);
                for (o, y) in out[r][c].iter_mut().zip(x) {
                    *o = (*o + y) % p;
                }
            }
        }
    }
    out
}

fn diff(c: &ProjComplex<PrimeField>, n: i64) -> Option<Blocks> {
    c.d(n).map(blocks_of)
}

/// Basis elements b ∈ e_t A e_s.
fn between(alg: &AlgebraData<PrimeField>, t: usize, s: usize) -> Vec<usize> {
    (0..alg.dim())
        .filter(|&b| alg.target(b) == t && alg.source(b) == s)
        .collect()
}

/// dim H_n e_u for every degree of the window and vertex u.
pub fn oracle_homology(c: &ProjComplex<PrimeField>) -> Vec<(i64, Vec<usize>)> {
    let alg = c.algebra();
    let p = alg.field().p();
    let s = alg.vertex_count();
    // the matrix of d_n restricted to P_n e_u
    let rank_at = |n: i64, u: usize| -> usize {
        let Some(d) = diff(c, n) else { return 0 };
        let (dom, cod) = (c.ranks().slots(n), c.ranks().slots(n - 1));
        let dom_basis: Vec<(usize, usize)> = dom
            .iter()
            .enumerate()
            .flat_map(|(k, &v)| between(alg, v, u).into_iter().map(move |b| (k, b)))
            .collect();
        let cod_basis: Vec<(usize, usize)> = cod
            .iter()
            .enumerate()
            .flat_map(|(k, &v)| between(alg, v, u).into_iter().map(move |b| (k, b)))
            .collect();
        let mut m = vec![vec![0; dom_basis.len()]; cod_basis.len()];
        for (j, &(col, b)) in dom_basis.iter().enumerate() {
            let mut unit = vec![0; alg.dim()];
            unit[b] = 1;
            for (row, entries) in d.iter().enumerate() {
                let img = mul(alg, &entries[col], &unit, p);
                for (i, &(r, bb)) in cod_basis.iter().enumerate() {
                    if r == row {
                        m[i][j] = img[bb];
                    }
                }
            }
        }
        rank_mod_p(m, p)
    };
    c.ranks()
        .degrees()
        .map(|n| {
            let slots = c.ranks().slots(n);
            let dims = (0..s)
                .map(|u| {
                    let total: usize = slots.iter().map(|&v| between(alg, v, u).len()).sum();
                    total - rank_at(n, u) - rank_at(n + 1, u)
                })
                .collect();
            (n, dims)
        })
        .collect()
}

/// One unknown coefficient of a map between free modules: degree, row slot,
/// column slot, basis element.
type Unknown = (i64, usize, usize, usize);

fn unknowns(
    alg: &AlgebraData<PrimeField>,
    c: &ProjComplex<PrimeField>,
    c2: &ProjComplex<PrimeField>,
    degrees: std::ops::RangeInclusive<i64>,
    shift: i64,
) -> Vec<Unknown> {
    let slots = |x: &ProjComplex<PrimeField>, n: i64| {
        if n < x.lo() || n > x.top() {
            Vec::new()
        } else {
            x.ranks().slots(n)
        }
    };
    let mut out = Vec::new();
    for n in degrees {
        let (cols, rows) = (slots(c, n), slots(c2, n + shift));
        for (r, &t) in rows.iter().enumerate() {
            for (k, &s) in cols.iter().enumerate() {
                for b in between(alg, t, s) {
                    out.push((n, r, k, b));
                }
            }
        }
    }
    out
}

fn zero_blocks(dim: usize, rows: usize, cols: usize) -> Blocks {
    vec![vec![vec![0; dim]; cols]; rows]
}

fn rank_of(x: &ProjComplex<PrimeField>, n: i64) -> usize {
    if n < x.lo() || n > x.top() {
        0
    } else {
        x.ranks().slots(n).len()
    }
}

fn d_or_zero(x: &ProjComplex<PrimeField>, n: i64, dim: usize) -> Blocks {
    diff(x, n).unwrap_or_else(|| zero_blocks(dim, rank_of(x, n - 1), rank_of(x, n)))
}

/// (dim of chain maps c → c2, dim of null-homotopic chain maps).
pub fn oracle_hom_dims(c: &ProjComplex<PrimeField>, c2: &ProjComplex<PrimeField>) -> (usize, usize) {
    let alg = c.algebra();
    let p = alg.field().p();
    let dim = alg.dim();
    let lo = c.lo().min(c2.lo());
    let top = c.top().max(c2.top());
    let maps = unknowns(alg, c, c2, lo..=top, 0);
    // residual d' f_n - f_{n-1} d for one unknown, flattened over all n
    let residual = |x: &Unknown| -> Vec<u64> {
        let mut out = Vec::new();
        for n in lo + 1..=top {
            let fn_ = unit_map(dim, x, n, rank_of(c2, n), rank_of(c, n));
            let fp = unit_map(dim, x, n - 1, rank_of(c2, n - 1), rank_of(c, n - 1));
            let left = block_mul(alg, &d_or_zero(c2, n, dim), &fn_, (rank_of(c2, n - 1), rank_of(c2, n), rank_of(c, n)), p);
            let right = block_mul(alg, &fp, &d_or_zero(c, n, dim), (rank_of(c2, n - 1), rank_of(c, n - 1), rank_of(c, n)), p);
            for (lr, rr) in left.iter().zip(&right) {
                for (le, re) in lr.iter().zip(rr) {
                    out.extend(le.iter().zip(re).map(|(a, b)| (a + p - b) % p));
                }
            }
        }
        out
    };
    let chain = if maps.is_empty() {
        0
    } else {
        let cols: Vec<Vec<u64>> = maps.iter().map(residual).collect();
        maps.len() - rank_mod_p(transpose(&cols), p)
    };
    let homs = unknowns(alg, c, c2, lo..=top, 1);
    // image d' h_n + h_{n-1} d as coordinates of a map c → c2
    let image = |x: &Unknown| -> Vec<u64> {
        let mut out = Vec::new();
        for n in lo..=top {
            let hn = unit_map(dim, x, n, rank_of(c2, n + 1), rank_of(c, n));
            let hp = unit_map(dim, x, n - 1, rank_of(c2, n), rank_of(c, n - 1));
            let a = block_mul(alg, &d_or_zero(c2, n + 1, dim), &hn, (rank_of(c2, n), rank_of(c2, n + 1), rank_of(c, n)), p);
            let b = block_mul(alg, &hp, &d_or_zero(c, n, dim), (rank_of(c2, n), rank_of(c, n - 1), rank_of(c, n)), p);
            for (ar, br) in a.iter().zip(&b) {
                for (ae, be) in ar.iter().zip(br) {
                    out.extend(ae.iter().zip(be).map(|(x, y)| (x + y) % p));
                }
            }
        }
        out
    };
    let null = if homs.is_empty() {
        0
    } else {
        let rows: Vec<Vec<u64>> = homs.iter().map(image).collect();
        rank_mod_p(rows, p)
    };
    (chain, null)
}

fn unit_map(dim: usize, x: &Unknown, n: i64, rows: usize, cols: usize) -> Blocks {
    let mut m = zero_blocks(dim, rows, cols);
    if x.0 == n {
        m[x.1][x.2][x.3] = 1;
    }
    m
}

fn transpose(v: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let rows = v.first().map_or(0, Vec::len);
    (0..rows).map(|r| v.iter().map(|c| c[r]).collect()).collect()
}

// ---------------------------------------------------------------- generators

/// A random admissible presentation: random quiver, random uniform
/// combinations of length-2 paths, and every path of length bound + 1.
pub fn random_admissible(rng: &mut dyn RngCore) -> AlgebraData<Rationals> {
    let s = rng.gen_range(1..=3usize);
    let n_arrows = rng.gen_range(1..=3usize);
    let arrows: Vec<Arrow> = (0..n_arrows)
        .map(|k| Arrow {
            name: format!("a{k}"),
            source: rng.gen_range(0..s),
            target: rng.gen_range(0..s),
        })
        .collect();
    let q = Quiver::new(s, arrows).unwrap();
    let bound = rng.gen_range(2..=3usize);
    let f = Rationals;
    let mut rels = Vec::new();
    let twos = q.paths_of_length(2);
    for _ in 0..rng.gen_range(0..=2) {
        let Some(first) = twos.get(rng.gen_range(0..twos.len().max(1))) else {
            break;
        };
        let mut r = PathPoly::zero();
        for p in twos.iter().filter(|p| same_ends(p, first)) {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                r.add_term(&f, p.clone(), f.from_i64(c));
            }
        }
        if !r.is_zero() {
            rels.push(r);
        }
    }
    for p in q.paths_of_length(bound + 1) {
        rels.push(PathPoly::monomial(&f, p, f.one()));
    }
    AlgebraData::from_relations(f, q, rels, bound).unwrap()
}

fn same_ends(a: &Path, b: &Path) -> bool {
    (a.source, a.target) == (b.source, b.target)
}

/// Random ranks with `degrees` tuples of entries at most `max`.
pub fn random_ranks(rng: &mut dyn RngCore, s: usize, degrees: usize, max: usize) -> VectorRank {
    let tuples = (0..degrees)
        .map(|_| (0..s).map(|_| rng.gen_range(0..=max)).collect())
        .collect();
    VectorRank::new(0, tuples).unwrap()
}

pub fn random_complex(alg: &Alg3, rng: &mut dyn RngCore, degrees: usize, max: usize) -> ProjComplex<PrimeField> {
    let ranks = random_ranks(rng, alg.vertex_count(), degrees, max);
    random_minimal(alg, &ranks, rng)
}

/// The contractible complex e_v A → e_v A (identity) in degrees n, n - 1.
pub fn cone(alg: &Alg3, v: usize, n: i64) -> ProjComplex<PrimeField> {
    let s = alg.vertex_count();
    let mut t = vec![0; s];
    t[v] = 1;
    let ranks = VectorRank::new(n - 1, vec![t.clone(), t]).unwrap();
    let d = BlockMatrix::identity(alg, ranks.slots(n));
    ProjComplex::new(alg.clone(), ranks, vec![d]).unwrap()
}

/// Σ dim P_n.
pub fn total_dim<F: Field>(c: &ProjComplex<F>) -> usize {
    let alg = c.algebra();
    c.ranks()
        .degrees()
        .flat_map(|n| c.ranks().slots(n))
        .map(|v| (0..alg.dim()).filter(|&b| alg.target(b) == v).count())
        .sum()
}

// ---------------------------------------------------------------- binary

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverbox"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Run the binary twice; panics unless both runs agree byte for byte.
pub fn run_twice(args: &[&str]) -> Output {
    let a = run_cli(args);
    let b = run_cli(args);
    assert_eq!(a.status.code(), b.status.code(), "exit codes differ for {args:?}");
    assert!(a.stdout == b.stdout, "stdout differs for {args:?}");
    assert!(a.stderr == b.stderr, "stderr differs for {args:?}");
    a
}

pub fn data(name: &str) -> String {
    data_dir().join(name).display().to_string()
}
