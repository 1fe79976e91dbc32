use std::sync::Arc;

use crate::complexes::{BlockMatrix, ProjComplex, VectorRank};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::sliced::{BoxRelation, SlicedBox};

/// A representation of a sliced box: a space of dimension `dims[n - lo][i]`
/// at each object (i, n) and a matrix per arrow, mapping the source space
/// to the target space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxRepresentation<E> {
    pub lo: i64,
    pub dims: Vec<Vec<usize>>,
    /// Indexed like [`SlicedBox::arrows`].
    pub maps: Vec<Matrix<E>>,
}

impl<E: Clone + PartialEq> BoxRepresentation<E> {
    pub fn dim(&self, vertex: usize, degree: i64) -> usize {
        if degree < self.lo {
            return 0;
        }
        self.dims
            .get((degree - self.lo) as usize)
            .map(|t| t[vertex])
            .unwrap_or(0)
    }

    pub fn zero<F: Field<Elem = E>>(b: &SlicedBox<F>, dims: Vec<Vec<usize>>) -> Result<Self> {
        let (lo, top) = b.window();
        if dims.len() as i64 != top - lo + 1 || dims.iter().any(|t| t.len() != b.algebra().vertex_count()) {
            return Err(Error::shape("dimension vector does not match the box"));
        }
        let f = b.algebra().field();
        let maps = b
            .arrows()
            .iter()
            .map(|a| {
                Matrix::zeros(
                    f,
                    dims[(a.target.degree - lo) as usize][a.target.vertex],
                    dims[(a.source.degree - lo) as usize][a.source.vertex],
                )
            })
            .collect();
        Ok(Self { lo, dims, maps })
    }

    pub fn check_shape<F: Field<Elem = E>>(&self, b: &SlicedBox<F>) -> Result<()> {
        let (lo, top) = b.window();
        if self.lo != lo || self.dims.len() as i64 != top - lo + 1 || self.maps.len() != b.arrows().len() {
            return Err(Error::shape("representation does not match the box"));
        }
        for (m, a) in self.maps.iter().zip(b.arrows()) {
            let want = (self.dim(a.target.vertex, a.target.degree), self.dim(a.source.vertex, a.source.degree));
            if (m.rows(), m.cols()) != want {
                return Err(Error::shape(format!("matrix of {} has the wrong shape", a.label)));
            }
        }
        Ok(())
    }
}

/// Value of one relation on a representation: Σ c · M(β*) M(γ*).
pub fn relation_value<F: Field>(
    b: &SlicedBox<F>,
    rep: &BoxRepresentation<F::Elem>,
    r: &BoxRelation<F::Elem>,
) -> Matrix<F::Elem> {
    let f = b.algebra().field();
    let mut acc = Matrix::zeros(
        f,
        rep.dim(r.target.vertex, r.target.degree),
        rep.dim(r.source.vertex, r.source.degree),
    );
    for (g, be, c) in &r.terms {
        let p = rep.maps[*be].mul(f, &rep.maps[*g]);
        acc = acc.add(f, &p.scale(f, c));
    }
    acc
}

/// Whether every relation of the box vanishes on `rep`.
pub fn check_e22<F: Field>(b: &SlicedBox<F>, rep: &BoxRepresentation<F::Elem>) -> Result<bool> {
    rep.check_shape(b)?;
    let f = b.algebra().field();
    Ok(b.relations().iter().all(|r| relation_value(b, rep, r).is_zero(f)))
}

/// Positions of the slots of vertex v among `slots`.
pub(crate) fn slots_at(slots: &[usize], v: usize) -> Vec<usize> {
    slots.iter().enumerate().filter(|(_, &w)| w == v).map(|(k, _)| k).collect()
}

/// M(i, n) = multiplicity of e_i A in P_n; M(α*) holds the α-coefficients of
/// the blocks of d_n.
pub fn rep_from_complex<F: Field>(b: &SlicedBox<F>, c: &ProjComplex<F>) -> Result<BoxRepresentation<F::Elem>> {
    if b.algebra().id() != c.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    c.require_minimal()?;
    let (lo, top) = b.window();
    if c.lo() < lo || c.top() > top {
        return Err(Error::shape("complex does not fit in the box window"));
    }
    let c = c.widen(lo, top);
    let dims = c.ranks().tuples().to_vec();
    let mut rep = BoxRepresentation::zero(b, dims)?;
    for (k, a) in b.arrows().iter().enumerate() {
        let n = a.source.degree;
        let d = c.d(n).expect("inside window");
        let rows = slots_at(d.row_vertices(), a.target.vertex);
        let cols = slots_at(d.col_vertices(), a.source.vertex);
        let m = &mut rep.maps[k];
        for (x, &r) in rows.iter().enumerate() {
            for (y, &cc) in cols.iter().enumerate() {
                m[(x, y)] = d.get(r, cc)[a.dual_of].clone();
            }
        }
    }
    Ok(rep)
}

/// P_n = ⊕ e_i A ⊗ M(i, n) with d_n assembled from the arrow matrices.
pub fn complex_from_rep<F: Field>(b: &SlicedBox<F>, rep: &BoxRepresentation<F::Elem>) -> Result<ProjComplex<F>> {
    rep.check_shape(b)?;
    let alg: Arc<_> = b.algebra().clone();
    let ranks = VectorRank::new(rep.lo, rep.dims.clone())?;
    let mut diffs: Vec<BlockMatrix<F::Elem>> = (ranks.lo() + 1..=ranks.top())
        .map(|n| BlockMatrix::zeros(&alg, ranks.slots(n - 1), ranks.slots(n)))
        .collect();
    for (k, a) in b.arrows().iter().enumerate() {
        let d = &mut diffs[(a.source.degree - rep.lo - 1) as usize];
        let rows = slots_at(d.row_vertices(), a.target.vertex);
        let cols = slots_at(d.col_vertices(), a.source.vertex);
        let m = &rep.maps[k];
        for (x, &r) in rows.iter().enumerate() {
            for (y, &cc) in cols.iter().enumerate() {
                d.get_mut(r, cc)[a.dual_of] = m[(x, y)].clone();
            }
        }
    }
    ProjComplex::new(alg, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::PrimeField;

    #[test]
    fn identity_squares_are_caught() {
        let alg = Arc::new(corpus::load(PrimeField::new(3).unwrap(), corpus::CUBIC).unwrap());
        let b = SlicedBox::build(alg.clone(), 0, 2).unwrap();
        let f = alg.field();
        let mut rep = BoxRepresentation::zero(&b, vec![vec![1], vec![1], vec![1]]).unwrap();
        assert!(check_e22(&b, &rep).unwrap());
        let x = alg.parse_path("x").unwrap();
        let x = alg.index_of(&x).unwrap();
        rep.maps[b.arrow(1, x).unwrap()] = Matrix::identity(f, 1);
        rep.maps[b.arrow(2, x).unwrap()] = Matrix::identity(f, 1);
        assert!(!check_e22(&b, &rep).unwrap());
        let c = complex_from_rep(&b, &rep).unwrap();
        assert!(!c.is_complex());
        assert_eq!(rep_from_complex(&b, &c).unwrap(), rep);
    }
}
