//! Morphisms of box representations and their chain-map counterparts.
//!
//! A morphism M → M' has one matrix per degree n and basis element b of
//! A_ji, mapping M(i, n) to M'(j, n). Composition dualizes the
//! multiplication of A: (g∘f)(n, w) = Σ c_uv^w g(n, u) f(n, v).

use crate::complexes::{BlockMatrix, ChainMap, ProjComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::rep::{slots_at, BoxRepresentation};
use super::sliced::SlicedBox;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxMorphism<E> {
    pub lo: i64,
    /// `components[n - lo][b]`
    pub components: Vec<Vec<Matrix<E>>>,
}

impl<E: Clone + PartialEq> BoxMorphism<E> {
    pub fn zero<F: Field<Elem = E>>(b: &SlicedBox<F>, m: &BoxRepresentation<E>, m2: &BoxRepresentation<E>) -> Self {
        let alg = b.algebra();
        let f = alg.field();
        let (lo, top) = b.window();
        let components = (lo..=top)
            .map(|n| {
                (0..alg.dim())
                    .map(|k| Matrix::zeros(f, m2.dim(alg.target(k), n), m.dim(alg.source(k), n)))
                    .collect()
            })
            .collect();
        Self { lo, components }
    }

    pub fn identity<F: Field<Elem = E>>(b: &SlicedBox<F>, m: &BoxRepresentation<E>) -> Self {
        let alg = b.algebra();
        let mut out = Self::zero(b, m, m);
        for (k, comps) in out.components.iter_mut().enumerate() {
            let n = b.window().0 + k as i64;
            for v in 0..alg.vertex_count() {
                comps[alg.idempotent(v)] = Matrix::identity(alg.field(), m.dim(v, n));
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose<F: Field<Elem = E>>(&self, b: &SlicedBox<F>, first: &Self) -> Self {
        let alg = b.algebra();
        let f = alg.field();
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, h)| {
                let mut out: Vec<Matrix<E>> = (0..alg.dim())
                    .map(|w| Matrix::zeros(f, g[w].rows(), h[w].cols()))
                    .collect();
                for (u, gu) in g.iter().enumerate() {
                    if gu.is_zero(f) {
                        continue;
                    }
                    for (v, hv) in h.iter().enumerate() {
                        if alg.product(u, v).is_empty() || hv.is_zero(f) {
                            continue;
                        }
                        let p = gu.mul(f, hv);
                        for (w, c) in alg.product(u, v) {
                            out[*w] = out[*w].add(f, &p.scale(f, c));
                        }
                    }
                }
                out
            })
            .collect();
        Self { lo: self.lo, components }
    }
}

/// Chain map P → P' as box-morphism data; the complexes give the shapes.
pub fn morphism_from_chain_map<F: Field>(
    b: &SlicedBox<F>,
    c: &ProjComplex<F>,
    c2: &ProjComplex<F>,
    m: &ChainMap<F::Elem>,
) -> Result<BoxMorphism<F::Elem>> {
    let alg = b.algebra();
    let (lo, top) = b.window();
    if c.lo() < lo || c.top() > top || c2.lo() < lo || c2.top() > top {
        return Err(Error::shape("complexes do not fit in the box window"));
    }
    let (a, a2) = (c.widen(lo, top), c2.widen(lo, top));
    let dims = |x: &ProjComplex<F>| BoxRepresentation::<F::Elem> {
        lo,
        dims: x.ranks().tuples().to_vec(),
        maps: Vec::new(),
    };
    let mut out = BoxMorphism::zero(b, &dims(&a), &dims(&a2));
    for n in lo..=top {
        let Some(fm) = m.at(n) else { continue };
        let (rs, cs) = (a2.ranks().slots(n), a.ranks().slots(n));
        if fm.row_vertices() != rs.as_slice() || fm.col_vertices() != cs.as_slice() {
            return Err(Error::shape(format!("chain map component in degree {n} has the wrong shape")));
        }
        let comps = &mut out.components[(n - lo) as usize];
        for (k, comp) in comps.iter_mut().enumerate() {
            let rows = slots_at(&rs, alg.target(k));
            let cols = slots_at(&cs, alg.source(k));
            for (x, &r) in rows.iter().enumerate() {
                for (y, &cc) in cols.iter().enumerate() {
                    comp[(x, y)] = fm.get(r, cc)[k].clone();
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`morphism_from_chain_map`], on the box window.
pub fn chain_map_from_morphism<F: Field>(
    b: &SlicedBox<F>,
    c: &ProjComplex<F>,
    c2: &ProjComplex<F>,
    m: &BoxMorphism<F::Elem>,
) -> Result<ChainMap<F::Elem>> {
    let alg = b.algebra();
    let (lo, top) = b.window();
    let (a, a2) = (c.widen(lo, top), c2.widen(lo, top));
    let maps = (lo..=top)
        .map(|n| {
            let (rs, cs) = (a2.ranks().slots(n), a.ranks().slots(n));
            let mut fm = BlockMatrix::zeros(alg, rs.clone(), cs.clone());
            for (k, comp) in m.components[(n - lo) as usize].iter().enumerate() {
                let rows = slots_at(&rs, alg.target(k));
                let cols = slots_at(&cs, alg.source(k));
                if (comp.rows(), comp.cols()) != (rows.len(), cols.len()) {
                    return Err(Error::shape(format!("component in degree {n} has the wrong shape")));
                }
                for (x, &r) in rows.iter().enumerate() {
                    for (y, &cc) in cols.iter().enumerate() {
                        fm.get_mut(r, cc)[k] = comp[(x, y)].clone();
                    }
                }
            }
            Ok(fm)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap { lo, maps })
}
