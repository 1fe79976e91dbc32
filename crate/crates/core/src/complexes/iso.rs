//! Isomorphism of minimal complexes.
//!
//! A chain map between minimal complexes with equal ranks is invertible iff
//! it is invertible modulo the radical, i.e. iff for every degree n and
//! vertex v the matrix of e_v-coefficients between the slots of v is
//! invertible. Writing a general chain map as Σ t_k f_k over a basis, this
//! is the nonvanishing of a product of determinants in the t_k.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;

use super::complex::ProjComplex;
use super::homology::homology;
use super::maps::{chain_map_space, ChainMap};

/// Exhaustive search is used when q^dim stays below this.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const SAMPLE_TRIALS: usize = 24;
const EXTENSION_MIN_SIZE: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMethod {
    Trivial,
    RankMismatch,
    HomologyMismatch,
    Exhaustive,
    Sampled,
    ExtensionSampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub method: IsoMethod,
    pub chain_map_dim: usize,
    /// Field the certificate was searched over.
    pub search_field: String,
    pub seed: u64,
}

/// Whether two minimal complexes are isomorphic. Over a small finite field
/// with a small chain-map space the answer is exact over that field; over
/// the extension-sampling route it refers to isomorphism after extending
/// scalars.
pub fn iso_test<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>, seed: u64) -> Result<IsoVerdict> {
    iso_search(c, c2, seed).map(|(v, _)| v)
}

/// As [`iso_test`], also returning an invertible chain map when one was
/// found over the base field.
pub fn iso_search<F: Field>(
    c: &ProjComplex<F>,
    c2: &ProjComplex<F>,
    seed: u64,
) -> Result<(IsoVerdict, Option<ChainMap<F::Elem>>)> {
    c.require_minimal()?;
    c2.require_minimal()?;
    let f = c.field();
    let verdict = |isomorphic, method, dim, field: String| IsoVerdict {
        isomorphic,
        method,
        chain_map_dim: dim,
        search_field: field,
        seed,
    };
    let a = c.trim();
    let b = c2.trim();
    if a.ranks() != b.ranks() {
        let both_zero = a.ranks().total() == 0 && b.ranks().total() == 0;
        let m = if both_zero { IsoMethod::Trivial } else { IsoMethod::RankMismatch };
        return Ok((verdict(both_zero, m, 0, f.name()), None));
    }
    if a.ranks().total() == 0 {
        return Ok((verdict(true, IsoMethod::Trivial, 0, f.name()), None));
    }
    if homology(&a).normalized() != homology(&b).normalized() {
        return Ok((verdict(false, IsoMethod::HomologyMismatch, 0, f.name()), None));
    }

    let space = chain_map_space(&a, &b)?;
    let m = space.basis.len();
    let alg = a.algebra();

    // tops[block][k]: the e_v-coefficient matrix of basis map k
    let mut tops: Vec<Vec<Matrix<F::Elem>>> = Vec::new();
    for n in a.ranks().degrees() {
        let slots = a.ranks().slots(n);
        for v in 0..alg.vertex_count() {
            let idx: Vec<usize> = slots.iter().enumerate().filter(|(_, &w)| w == v).map(|(k, _)| k).collect();
            if idx.is_empty() {
                continue;
            }
            let e = alg.idempotent(v);
            let block = space
                .basis
                .iter()
                .map(|x| {
                    let mut t = Matrix::zeros(f, idx.len(), idx.len());
                    for (i, &r) in idx.iter().enumerate() {
                        for (j, &cc) in idx.iter().enumerate() {
                            if let Some(p) = space.layout.position((n, r, cc, e)) {
                                t[(i, j)] = x[p].clone();
                            }
                        }
                    }
                    t
                })
                .collect();
            tops.push(block);
        }
    }
    if m == 0 {
        return Ok((verdict(false, IsoMethod::Exhaustive, 0, f.name()), None));
    }

    let witness = |t: &[F::Elem]| -> ChainMap<F::Elem> {
        let mut x = vec![f.zero(); space.layout.len()];
        for (tk, bk) in t.iter().zip(&space.basis) {
            for (xi, bi) in x.iter_mut().zip(bk) {
                f.add_mul_assign(xi, tk, bi);
            }
        }
        space.layout.to_map(&a, &b, &x)
    };

    if let Some(elems) = f.enumerate() {
        let q = elems.len() as u64;
        let count = (q as f64).powi(m as i32);
        if count <= EXHAUSTIVE_LIMIT as f64 {
            let total = q.pow(m as u32);
            for code in 0..total {
                let mut rest = code;
                let t: Vec<F::Elem> = (0..m)
                    .map(|_| {
                        let e = elems[(rest % q) as usize].clone();
                        rest /= q;
                        e
                    })
                    .collect();
                if invertible(f, &tops, &t) {
                    return Ok((verdict(true, IsoMethod::Exhaustive, m, f.name()), Some(witness(&t))));
                }
            }
            return Ok((verdict(false, IsoMethod::Exhaustive, m, f.name()), None));
        }
        if q < EXTENSION_MIN_SIZE {
            if let Some((ext, embed)) = f.sampling_extension(EXTENSION_MIN_SIZE) {
                let lifted: Vec<Vec<Matrix<Vec<u64>>>> = tops
                    .iter()
                    .map(|blk| {
                        blk.iter()
                            .map(|t| {
                                let rows = t.to_rows().iter().map(|r| r.iter().map(|x| embed(x)).collect()).collect();
                                Matrix::from_rows(rows, t.cols())
                            })
                            .collect()
                    })
                    .collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let found = (0..SAMPLE_TRIALS).any(|_| {
                    let t: Vec<Vec<u64>> = (0..m).map(|_| ext.random_elem(&mut rng)).collect();
                    invertible(&ext, &lifted, &t)
                });
                return Ok((verdict(found, IsoMethod::ExtensionSampled, m, ext.name()), None));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_TRIALS {
        let t: Vec<F::Elem> = (0..m)
            .map(|_| match f.size() {
                None => f.from_i64(rng.gen_range(-1_000_000..=1_000_000)),
                Some(_) => f.random_elem(&mut rng),
            })
            .collect();
        if invertible(f, &tops, &t) {
            return Ok((verdict(true, IsoMethod::Sampled, m, f.name()), Some(witness(&t))));
        }
    }
    Ok((verdict(false, IsoMethod::Sampled, m, f.name()), None))
}

fn invertible<K: Field>(k: &K, tops: &[Vec<Matrix<K::Elem>>], t: &[K::Elem]) -> bool {
    tops.iter().all(|blk| {
        let n = blk[0].rows();
        let mut sum = Matrix::zeros(k, n, n);
        for (tk, mk) in t.iter().zip(blk) {
            if !k.is_zero(tk) {
                sum = sum.add(k, &mk.scale(k, tk));
            }
        }
        !k.is_zero(&sum.determinant(k))
    })
}
