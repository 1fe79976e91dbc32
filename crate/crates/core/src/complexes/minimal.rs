//! Minimalization, top-degree reduction and the truncation/extension pair.

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

use super::block::BlockMatrix;
use super::complex::ProjComplex;
use super::rank::VectorRank;

/// Inverse of `u = c·e_v + j` (j radical) in e_v A e_v.
fn unit_inverse<F: Field>(alg: &AlgebraData<F>, v: usize, u: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let f = alg.field();
    let e = alg.idempotent(v);
    let c = f.inv(&u[e]).ok_or_else(|| Error::invalid("entry is not a unit"))?;
    // y = c^{-1} Σ (-c^{-1} j)^k
    let mut t = u.to_vec();
    t[e] = f.zero();
    let neg = f.neg(&c);
    let t: Vec<F::Elem> = t.iter().map(|x| f.mul(x, &neg)).collect();
    let mut term = alg.unit_vec(e);
    let mut sum = alg.zero_vec();
    for _ in 0..=alg.dim() {
        if term.iter().all(|x| f.is_zero(x)) {
            return Ok(sum.iter().map(|x| f.mul(x, &c)).collect());
        }
        for (s, x) in sum.iter_mut().zip(&term) {
            *s = f.add(s, x);
        }
        term = alg.mul_vec(&term, &t);
    }
    Err(Error::invalid("positive-length paths are not nilpotent"))
}

fn ranks_from_slots(lo: i64, slots: &[Vec<usize>], s: usize) -> VectorRank {
    let tuples = slots
        .iter()
        .map(|sl| {
            let mut t = vec![0; s];
            for &v in sl {
                t[v] += 1;
            }
            t
        })
        .collect();
    VectorRank::new(lo, tuples).expect("nonempty window")
}

/// Cancel every entry that is invertible modulo the radical, removing one
/// contractible summand `e_v A → e_v A` per step. The result is homotopy
/// equivalent to the input and minimal.
pub fn minimalize<F: Field>(c: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    if let Some(n) = c.check_dsquared() {
        return Err(Error::invalid(format!("d_{} d_{n} is not zero", n - 1)));
    }
    let alg = c.algebra().clone();
    let f = alg.field();
    let lo = c.lo();
    let mut diffs: Vec<BlockMatrix<F::Elem>> = c.diffs().to_vec();
    let mut slots: Vec<Vec<usize>> = c.ranks().degrees().map(|n| c.ranks().slots(n)).collect();
    loop {
        let found = diffs.iter().enumerate().find_map(|(k, d)| {
            (0..d.rows()).find_map(|r| {
                (0..d.cols())
                    .find(|&cc| !f.is_zero(&d.top_coeff(&alg, r, cc)))
                    .map(|cc| (k, r, cc))
            })
        });
        let Some((k, r, cc)) = found else { break };
        let d = &diffs[k];
        let v = d.row_vertices()[r];
        let uinv = unit_inverse(&alg, v, d.get(r, cc))?;
        // d'[r'][c'] = d[r'][c'] - d[r'][cc] u^{-1} d[r][c']
        let mut nd = d.clone();
        for r2 in (0..d.rows()).filter(|&x| x != r) {
            let a = d.get(r2, cc);
            if a.iter().all(|x| f.is_zero(x)) {
                continue;
            }
            let au = alg.mul_vec(a, &uinv);
            for c2 in (0..d.cols()).filter(|&x| x != cc) {
                let b = d.get(r, c2);
                if b.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let p = alg.mul_vec(&au, b);
                let e = nd.get_mut(r2, c2);
                for (x, y) in e.iter_mut().zip(p) {
                    *x = f.sub(x, &y);
                }
            }
        }
        nd.remove_row(r);
        nd.remove_col(cc);
        diffs[k] = nd;
        // d_n = diffs[k] has its column slot in degree lo+1+k and row slot in lo+k
        if k + 1 < diffs.len() {
            diffs[k + 1].remove_row(cc);
        }
        if k > 0 {
            diffs[k - 1].remove_col(r);
        }
        slots[k + 1].remove(cc);
        slots[k].remove(r);
    }
    let ranks = ranks_from_slots(lo, &slots, alg.vertex_count());
    ProjComplex::new(alg, ranks, diffs)
}

/// Kernel of d_t on P_t e_u as coordinate vectors over
/// `module_basis(slots_t, u)`; all of P_t e_u at the bottom of the window.
fn top_kernel<F: Field>(c: &ProjComplex<F>, u: usize) -> Vec<Vec<F::Elem>> {
    let alg = c.algebra();
    let f = c.field();
    let t = c.top();
    let basis = BlockMatrix::<F::Elem>::module_basis(alg, &c.ranks().slots(t), u);
    if basis.is_empty() {
        return Vec::new();
    }
    match c.d(t) {
        Some(d) => d.linear_map(alg, u).kernel(f),
        None => Matrix::identity(f, basis.len()).to_rows(),
    }
}

/// Split off the projective summands of Ker d_t at the top degree t.
pub fn tilde_reduce<F: Field>(c: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    c.require_minimal()?;
    let alg = c.algebra().clone();
    let f = alg.field();
    let t = c.top();
    let top_slots = c.ranks().slots(t);
    let mut drop = Vec::new();
    for v in 0..alg.vertex_count() {
        let own: Vec<usize> = (0..top_slots.len()).filter(|&s| top_slots[s] == v).collect();
        if own.is_empty() {
            continue;
        }
        let basis = BlockMatrix::<F::Elem>::module_basis(&alg, &top_slots, v);
        let e = alg.idempotent(v);
        let pos: Vec<usize> = own
            .iter()
            .map(|&s| basis.iter().position(|&p| p == (s, e)).expect("e_v lies in e_v A e_v"))
            .collect();
        let tops: Vec<Vec<F::Elem>> = top_kernel(c, v)
            .into_iter()
            .map(|x| pos.iter().map(|&p| x[p].clone()).collect())
            .collect();
        if tops.is_empty() {
            continue;
        }
        let ech = Echelon::new(f, Matrix::from_rows(tops, own.len()));
        drop.extend(ech.pivots.iter().map(|&p| own[p]));
    }
    if drop.is_empty() {
        return Ok(c.clone());
    }
    drop.sort_unstable();
    let mut diffs = c.diffs().to_vec();
    let mut slots = top_slots;
    for &s in drop.iter().rev() {
        if let Some(d) = diffs.last_mut() {
            d.remove_col(s);
        }
        slots.remove(s);
    }
    let mut all: Vec<Vec<usize>> = c.ranks().degrees().map(|n| c.ranks().slots(n)).collect();
    *all.last_mut().expect("nonempty") = slots;
    let ranks = ranks_from_slots(c.lo(), &all, alg.vertex_count());
    ProjComplex::new(alg, ranks, diffs)
}

/// Add the projective cover of Ker d_t in degree t+1. The new differential
/// lies in the radical when Ker d_t ⊆ rad P_t, i.e. for tilde-reduced input.
pub fn extend<F: Field>(c: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    let alg = c.algebra().clone();
    let f = alg.field();
    let s = alg.vertex_count();
    let t = c.top();
    let slots = c.ranks().slots(t);
    let kernels: Vec<Vec<Vec<F::Elem>>> = (0..s).map(|u| top_kernel(c, u)).collect();
    let bases: Vec<Vec<(usize, usize)>> = (0..s)
        .map(|u| BlockMatrix::<F::Elem>::module_basis(&alg, &slots, u))
        .collect();

    let mut new_slots = Vec::new();
    let mut cols: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for u in 0..s {
        let len = bases[u].len();
        if kernels[u].is_empty() {
            continue;
        }
        let index: std::collections::HashMap<(usize, usize), usize> =
            bases[u].iter().enumerate().map(|(k, &p)| (p, k)).collect();
        // K·J landing in P_t e_u
        let mut span: Vec<Vec<F::Elem>> = Vec::new();
        for w in 0..s {
            for x in &kernels[w] {
                for &a in alg.radical(w, u) {
                    let mut y = vec![f.zero(); len];
                    for (k, &(slot, b)) in bases[w].iter().enumerate() {
                        if f.is_zero(&x[k]) {
                            continue;
                        }
                        for (p, sc) in alg.product(b, a) {
                            let i = index[&(slot, *p)];
                            let m = f.mul(&x[k], sc);
                            y[i] = f.add(&y[i], &m);
                        }
                    }
                    span.push(y);
                }
            }
        }
        let mut ech = Echelon::new(f, Matrix::from_rows(span.clone(), len));
        for x in &kernels[u] {
            if ech.contains(f, x) {
                continue;
            }
            span.push(x.clone());
            ech = Echelon::new(f, Matrix::from_rows(span.clone(), len));
            let mut col = vec![alg.zero_vec(); slots.len()];
            for (k, &(slot, b)) in bases[u].iter().enumerate() {
                col[slot][b] = x[k].clone();
            }
            new_slots.push(u);
            cols.push(col);
        }
    }
    let mut d = BlockMatrix::zeros(&alg, slots, Vec::new());
    for (&u, col) in new_slots.iter().zip(cols) {
        d.push_col(u, col);
    }
    let mut tuples: Vec<Vec<usize>> = c.ranks().tuples().to_vec();
    let mut top = vec![0; s];
    for &u in &new_slots {
        top[u] += 1;
    }
    tuples.push(top);
    let mut diffs = c.diffs().to_vec();
    diffs.push(d);
    ProjComplex::new(alg, VectorRank::new(c.lo(), tuples)?, diffs)
}

/// Drop the top degree.
pub fn truncate<F: Field>(c: &ProjComplex<F>) -> Result<ProjComplex<F>> {
    if c.ranks().len() < 2 {
        return Err(Error::invalid("cannot truncate a complex concentrated in one degree"));
    }
    let tuples = c.ranks().tuples()[..c.ranks().len() - 1].to_vec();
    let diffs = c.diffs()[..c.diffs().len() - 1].to_vec();
    ProjComplex::new(c.algebra().clone(), VectorRank::new(c.lo(), tuples)?, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::homology::homology;
    use crate::corpus;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn dual() -> Arc<AlgebraData<PrimeField>> {
        Arc::new(corpus::load(PrimeField::new(3).unwrap(), corpus::DUAL_NUMBERS).unwrap())
    }

    fn mult_x(alg: &Arc<AlgebraData<PrimeField>>) -> ProjComplex<PrimeField> {
        let ranks = VectorRank::new(0, vec![vec![1], vec![1]]).unwrap();
        let mut c = ProjComplex::zero(alg.clone(), ranks);
        c.d_mut(1).unwrap().set(0, 0, alg.path_element("x").unwrap().coeffs);
        c
    }

    #[test]
    fn cancels_contractible_summand() {
        let alg = dual();
        let ranks = VectorRank::new(0, vec![vec![1], vec![1]]).unwrap();
        let mut cone = ProjComplex::zero(alg.clone(), ranks);
        cone.d_mut(1).unwrap().set(0, 0, alg.one_vec());
        let sum = mult_x(&alg).direct_sum(&cone).unwrap();
        let m = minimalize(&sum).unwrap();
        assert_eq!(m, mult_x(&alg));
        assert_eq!(homology(&m), homology(&sum));
    }

    #[test]
    fn periodic_extension() {
        let alg = dual();
        let c = mult_x(&alg);
        assert_eq!(tilde_reduce(&c).unwrap(), c);
        let e = extend(&c).unwrap();
        assert_eq!(e.ranks().at(2), vec![1]);
        assert_eq!(e.d(2).unwrap().get(0, 0), alg.path_element("x").unwrap().coeffs.as_slice());
        assert_eq!(truncate(&e).unwrap(), c);
    }

    #[test]
    fn stalk_cover_is_identity() {
        let alg = dual();
        let c = ProjComplex::stalk(alg.clone(), vec![1], 0).unwrap();
        let e = extend(&c).unwrap();
        assert_eq!(e.d(1).unwrap().get(0, 0), alg.one_vec().as_slice());
        assert_eq!(tilde_reduce(&c).unwrap().ranks().total(), 0);
    }
}
