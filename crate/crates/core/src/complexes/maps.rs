use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

use super::block::BlockMatrix;
use super::complex::ProjComplex;

/// A family of maps f_n : P_n → P'_n on the window `[lo, lo + maps.len())`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap<E> {
    pub lo: i64,
    pub maps: Vec<BlockMatrix<E>>,
}

impl<E: Clone + PartialEq> ChainMap<E> {
    pub fn top(&self) -> i64 {
        self.lo + self.maps.len() as i64 - 1
    }

    pub fn at(&self, n: i64) -> Option<&BlockMatrix<E>> {
        if n < self.lo {
            return None;
        }
        self.maps.get((n - self.lo) as usize)
    }

    pub fn compose<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>, first: &Self) -> Result<Self> {
        if self.lo != first.lo || self.maps.len() != first.maps.len() {
            return Err(Error::shape("chain maps live on different windows"));
        }
        let maps = self
            .maps
            .iter()
            .zip(&first.maps)
            .map(|(g, f)| {
                if g.col_vertices() != f.row_vertices() {
                    return Err(Error::shape("chain maps do not compose"));
                }
                Ok(g.compose(alg, f))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { lo: self.lo, maps })
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self {
            lo: self.lo,
            maps: self.maps.iter().zip(&o.maps).map(|(a, b)| a.add(f, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self {
            lo: self.lo,
            maps: self.maps.iter().map(|a| a.scale(f, s)).collect(),
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.maps.iter().all(|m| m.is_zero(f))
    }
}

fn window<F: Field>(a: &ProjComplex<F>, b: &ProjComplex<F>) -> (i64, i64) {
    (a.lo().min(b.lo()), a.top().max(b.top()))
}

pub fn identity_map<F: Field>(c: &ProjComplex<F>) -> ChainMap<F::Elem> {
    ChainMap {
        lo: c.lo(),
        maps: c
            .ranks()
            .degrees()
            .map(|n| BlockMatrix::identity(c.algebra(), c.ranks().slots(n)))
            .collect(),
    }
}

pub fn zero_map<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>) -> ChainMap<F::Elem> {
    let (lo, top) = window(c, c2);
    ChainMap {
        lo,
        maps: (lo..=top)
            .map(|n| BlockMatrix::zeros(c.algebra(), c2.ranks().slots(n), c.ranks().slots(n)))
            .collect(),
    }
}

/// f_{n-1} d_n = d'_n f_n in every degree.
pub fn is_chain_map<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>, m: &ChainMap<F::Elem>) -> bool {
    let alg = c.algebra();
    let f = c.field();
    let (lo, top) = window(c, c2);
    (lo..=top + 1).all(|n| {
        let fn_1 = m.at(n - 1);
        let fn_ = m.at(n);
        let left = fn_1.map(|g| g.compose(alg, &c.d_or_zero(n)));
        let right = fn_.map(|g| c2.d_or_zero(n).compose(alg, g));
        match (left, right) {
            (Some(l), Some(r)) => l.sub(f, &r).is_zero(f),
            (Some(l), None) => l.is_zero(f),
            (None, Some(r)) => r.is_zero(f),
            (None, None) => true,
        }
    })
}

/// Coordinates for maps P_n → P'_{n+shift}: one variable per
/// (degree, row, column, Peirce basis element).
#[derive(Clone, Debug)]
pub struct MapLayout {
    pub lo: i64,
    pub top: i64,
    pub shift: i64,
    /// (degree, row slot, column slot, basis index)
    pub vars: Vec<(i64, usize, usize, usize)>,
    index: std::collections::HashMap<(i64, usize, usize, usize), usize>,
}

impl MapLayout {
    fn new<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>, lo: i64, top: i64, shift: i64) -> Self {
        let alg = c.algebra();
        let mut vars = Vec::new();
        for n in lo..=top {
            let rows = c2.ranks().slots(n + shift);
            let cols = c.ranks().slots(n);
            for (r, &vr) in rows.iter().enumerate() {
                for (cc, &vc) in cols.iter().enumerate() {
                    for &b in alg.peirce(vr, vc) {
                        vars.push((n, r, cc, b));
                    }
                }
            }
        }
        let index = vars.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        Self {
            lo,
            top,
            shift,
            vars,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn position(&self, key: (i64, usize, usize, usize)) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn to_map<F: Field>(&self, c: &ProjComplex<F>, c2: &ProjComplex<F>, x: &[F::Elem]) -> ChainMap<F::Elem> {
        let alg = c.algebra();
        let mut maps: Vec<BlockMatrix<F::Elem>> = (self.lo..=self.top)
            .map(|n| BlockMatrix::zeros(alg, c2.ranks().slots(n + self.shift), c.ranks().slots(n)))
            .collect();
        for (k, &(n, r, cc, b)) in self.vars.iter().enumerate() {
            maps[(n - self.lo) as usize].get_mut(r, cc)[b] = x[k].clone();
        }
        ChainMap { lo: self.lo, maps }
    }

    pub fn coords<F: Field>(&self, f: &F, m: &ChainMap<F::Elem>) -> Vec<F::Elem> {
        self.vars
            .iter()
            .map(|&(n, r, cc, b)| m.at(n).map(|g| g.get(r, cc)[b].clone()).unwrap_or_else(|| f.zero()))
            .collect()
    }
}

/// The space of chain maps c → c2 as a layout plus a kernel basis.
pub struct ChainMapSpace<E> {
    pub layout: MapLayout,
    pub basis: Vec<Vec<E>>,
}

pub fn chain_map_space<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>) -> Result<ChainMapSpace<F::Elem>> {
    if c.algebra().id() != c2.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    let alg = c.algebra();
    let f = c.field();
    let d = alg.dim();
    let (lo, top) = window(c, c2);
    let layout = MapLayout::new(c, c2, lo, top, 0);

    // equation blocks E_n : P_n → P'_{n-1} for lo < n <= top
    let mut offsets = std::collections::HashMap::new();
    let mut rows = 0usize;
    for n in lo + 1..=top {
        let nr = c2.ranks().slots(n - 1).len();
        let nc = c.ranks().slots(n).len();
        offsets.insert(n, (rows, nc));
        rows += nr * nc * d;
    }
    let eq = |n: i64, r: usize, cc: usize, k: usize| -> usize {
        let (off, nc) = offsets[&n];
        off + (r * nc + cc) * d + k
    };
    let mut m = Matrix::zeros(f, rows, layout.len());
    for (j, &(n, r, cc, b)) in layout.vars.iter().enumerate() {
        let eb = alg.unit_vec(b);
        if n < top {
            let dn1 = c.d_or_zero(n + 1);
            for c2i in 0..dn1.cols() {
                let p = alg.mul_vec(&eb, dn1.get(cc, c2i));
                for (k, x) in p.into_iter().enumerate() {
                    if !f.is_zero(&x) {
                        let i = eq(n + 1, r, c2i, k);
                        m[(i, j)] = f.add(&m[(i, j)], &x);
                    }
                }
            }
        }
        if n > lo {
            let dn2 = c2.d_or_zero(n);
            for r3 in 0..dn2.rows() {
                let p = alg.mul_vec(dn2.get(r3, r), &eb);
                for (k, x) in p.into_iter().enumerate() {
                    if !f.is_zero(&x) {
                        let i = eq(n, r3, cc, k);
                        m[(i, j)] = f.sub(&m[(i, j)], &x);
                    }
                }
            }
        }
    }
    let basis = if layout.is_empty() { Vec::new() } else { m.kernel(f) };
    Ok(ChainMapSpace { layout, basis })
}

/// Basis of the space of chain maps c → c2.
pub fn chain_maps<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>) -> Result<Vec<ChainMap<F::Elem>>> {
    let space = chain_map_space(c, c2)?;
    Ok(space.basis.iter().map(|x| space.layout.to_map(c, c2, x)).collect())
}

/// Null-homotopic maps σ_{n-1} d_n + d'_{n+1} σ_n, as coordinate vectors in
/// the chain-map layout (an echelon basis of their span).
pub fn homotopy_span<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>, layout: &MapLayout) -> Vec<Vec<F::Elem>> {
    let alg = c.algebra();
    let f = c.field();
    let (lo, top) = (layout.lo, layout.top);
    let hl = MapLayout::new(c, c2, lo, top - 1, 1);
    let mut images = Vec::new();
    for &(n, r, cc, b) in &hl.vars {
        let eb = alg.unit_vec(b);
        let mut v = vec![f.zero(); layout.len()];
        // d'_{n+1} σ_n lands in degree n
        let dp = c2.d_or_zero(n + 1);
        for r3 in 0..dp.rows() {
            let p = alg.mul_vec(dp.get(r3, r), &eb);
            for (k, x) in p.into_iter().enumerate() {
                if !f.is_zero(&x) {
                    let i = layout.position((n, r3, cc, k)).expect("Peirce-compatible");
                    v[i] = f.add(&v[i], &x);
                }
            }
        }
        // σ_n d_{n+1} lands in degree n+1
        let dn = c.d_or_zero(n + 1);
        for c2i in 0..dn.cols() {
            let p = alg.mul_vec(&eb, dn.get(cc, c2i));
            for (k, x) in p.into_iter().enumerate() {
                if !f.is_zero(&x) {
                    let i = layout.position((n + 1, r, c2i, k)).expect("Peirce-compatible");
                    v[i] = f.add(&v[i], &x);
                }
            }
        }
        images.push(v);
    }
    if images.is_empty() || layout.is_empty() {
        return Vec::new();
    }
    Echelon::new(f, Matrix::from_rows(images, layout.len())).matrix.to_rows()
}

/// Basis of the null-homotopic chain maps c → c2.
pub fn homotopies<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>) -> Result<Vec<ChainMap<F::Elem>>> {
    if c.algebra().id() != c2.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    let (lo, top) = window(c, c2);
    let layout = MapLayout::new(c, c2, lo, top, 0);
    Ok(homotopy_span(c, c2, &layout)
        .iter()
        .map(|x| layout.to_map(c, c2, x))
        .collect())
}

/// (dim chain maps, dim null-homotopic maps).
pub fn hom_dims<F: Field>(c: &ProjComplex<F>, c2: &ProjComplex<F>) -> Result<(usize, usize)> {
    let space = chain_map_space(c, c2)?;
    let h = homotopy_span(c, c2, &space.layout);
    Ok((space.basis.len(), h.len()))
}
