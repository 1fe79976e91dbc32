use std::sync::Arc;

use rand::RngCore;

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::block::BlockMatrix;
use super::rank::VectorRank;

/// A bounded complex of projective right modules
/// `P_top → … → P_lo`, `P_n = ⊕ e_i A ⊗ k^{r_ni}`.
///
/// `d_n : P_n → P_{n-1}` is a [`BlockMatrix`] whose (row, column) entry lies
/// in A_ji for a row slot of vertex j in degree n-1 and a column slot of
/// vertex i in degree n. The complex is minimal when every entry lies in the
/// radical; the same type also holds non-minimal complexes.
#[derive(Clone, Debug)]
pub struct ProjComplex<F: Field> {
    alg: Arc<AlgebraData<F>>,
    ranks: VectorRank,
    diffs: Vec<BlockMatrix<F::Elem>>,
}

/// Complexes whose differentials may have entries outside the radical.
pub type GeneralComplex<F> = ProjComplex<F>;

impl<F: Field> PartialEq for ProjComplex<F> {
    fn eq(&self, o: &Self) -> bool {
        self.alg.id() == o.alg.id() && self.ranks == o.ranks && self.diffs == o.diffs
    }
}

impl<F: Field> ProjComplex<F> {
    /// `diffs[k]` is d_{lo+1+k}.
    pub fn new(alg: Arc<AlgebraData<F>>, ranks: VectorRank, diffs: Vec<BlockMatrix<F::Elem>>) -> Result<Self> {
        if ranks.vertex_count() != alg.vertex_count() {
            return Err(Error::shape(format!(
                "rank tuples have {} entries, algebra has {} vertices",
                ranks.vertex_count(),
                alg.vertex_count()
            )));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::shape(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            let n = ranks.lo() + 1 + k as i64;
            if d.col_vertices() != ranks.slots(n).as_slice() || d.row_vertices() != ranks.slots(n - 1).as_slice() {
                return Err(Error::shape(format!("d_{n} does not match the ranks")));
            }
            if !d.respects_peirce(&alg) {
                return Err(Error::shape(format!("d_{n} has an entry outside its Peirce block")));
            }
        }
        Ok(Self { alg, ranks, diffs })
    }

    pub fn zero(alg: Arc<AlgebraData<F>>, ranks: VectorRank) -> Self {
        let diffs = (ranks.lo() + 1..=ranks.top())
            .map(|n| BlockMatrix::zeros(&alg, ranks.slots(n - 1), ranks.slots(n)))
            .collect();
        Self { alg, ranks, diffs }
    }

    /// A single projective `⊕ e_i A ⊗ k^{r_i}` in degree `n`.
    pub fn stalk(alg: Arc<AlgebraData<F>>, tuple: Vec<usize>, n: i64) -> Result<Self> {
        let ranks = VectorRank::new(n, vec![tuple])?;
        Self::new(alg, ranks, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<AlgebraData<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn ranks(&self) -> &VectorRank {
        &self.ranks
    }

    pub fn lo(&self) -> i64 {
        self.ranks.lo()
    }

    pub fn top(&self) -> i64 {
        self.ranks.top()
    }

    /// d_n for lo < n <= top.
    pub fn d(&self, n: i64) -> Option<&BlockMatrix<F::Elem>> {
        if n <= self.lo() || n > self.top() {
            None
        } else {
            self.diffs.get((n - self.lo() - 1) as usize)
        }
    }

    pub fn d_mut(&mut self, n: i64) -> Option<&mut BlockMatrix<F::Elem>> {
        if n <= self.lo() || n > self.top() {
            None
        } else {
            let k = (n - self.lo() - 1) as usize;
            self.diffs.get_mut(k)
        }
    }

    pub fn diffs(&self) -> &[BlockMatrix<F::Elem>] {
        &self.diffs
    }

    /// d_n, or a zero map with the right shape outside the window.
    pub fn d_or_zero(&self, n: i64) -> BlockMatrix<F::Elem> {
        match self.d(n) {
            Some(d) => d.clone(),
            None => BlockMatrix::zeros(&self.alg, self.ranks.slots(n - 1), self.ranks.slots(n)),
        }
    }

    /// First degree n with d_{n-1} d_n != 0, if any.
    pub fn check_dsquared(&self) -> Option<i64> {
        let f = self.field();
        (self.lo() + 2..=self.top()).find(|&n| {
            let a = self.d(n - 1).expect("inside window");
            let b = self.d(n).expect("inside window");
            !a.compose(&self.alg, b).is_zero(f)
        })
    }

    pub fn is_complex(&self) -> bool {
        self.check_dsquared().is_none()
    }

    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical(&self.alg))
    }

    pub fn require_minimal(&self) -> Result<()> {
        match self
            .diffs
            .iter()
            .enumerate()
            .find(|(_, d)| !d.is_radical(&self.alg))
        {
            None => Ok(()),
            Some((k, _)) => Err(Error::NotMinimal(format!(
                "d_{} has an entry outside the radical",
                self.lo() + 1 + k as i64
            ))),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.alg.id() != o.alg.id() {
            return Err(Error::AlgebraMismatch);
        }
        let lo = self.lo().min(o.lo());
        let top = self.top().max(o.top());
        let a = self.widen(lo, top);
        let b = o.widen(lo, top);
        let ranks = a.ranks.sum(&b.ranks);
        let s = self.alg.vertex_count();
        let mut diffs = Vec::new();
        for n in lo + 1..=top {
            let da = a.d(n).expect("widened");
            let db = b.d(n).expect("widened");
            let sum = da.direct_sum(&self.alg, db);
            // bring slots of each degree into vertex order
            let rows = interleave(&a.ranks.at(n - 1), &b.ranks.at(n - 1), s);
            let cols = interleave(&a.ranks.at(n), &b.ranks.at(n), s);
            let mut sum = sum;
            sum.permute_rows(&rows);
            sum.permute_cols(&cols);
            diffs.push(sum);
        }
        Self::new(self.alg.clone(), ranks, diffs)
    }

    /// Same complex on a wider window, zero outside the old one.
    pub fn widen(&self, lo: i64, top: i64) -> Self {
        assert!(lo <= self.lo() && top >= self.top());
        let ranks = self.ranks.widen(lo, top);
        let diffs = (lo + 1..=top)
            .map(|n| match self.d(n) {
                Some(d) => d.clone(),
                None => BlockMatrix::zeros(&self.alg, ranks.slots(n - 1), ranks.slots(n)),
            })
            .collect();
        Self {
            alg: self.alg.clone(),
            ranks,
            diffs,
        }
    }

    /// Drop zero rank tuples at both ends of the window (keeping one degree).
    pub fn trim(&self) -> Self {
        let nonzero: Vec<i64> = self
            .ranks
            .degrees()
            .filter(|&n| self.ranks.at(n).iter().any(|&r| r > 0))
            .collect();
        let (lo, top) = match (nonzero.first(), nonzero.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (self.lo(), self.lo()),
        };
        let ranks = VectorRank::new(lo, (lo..=top).map(|n| self.ranks.at(n)).collect()).expect("nonempty");
        let diffs = (lo + 1..=top).map(|n| self.d(n).expect("inside").clone()).collect();
        Self {
            alg: self.alg.clone(),
            ranks,
            diffs,
        }
    }

    /// Relabel degrees: P'_n = P_{n-k}.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            alg: self.alg.clone(),
            ranks: self.ranks.shift(k),
            diffs: self.diffs.clone(),
        }
    }

    /// Dense matrix of d_n on P_n e_u.
    pub fn linear_map(&self, n: i64, u: usize) -> Matrix<F::Elem> {
        self.d_or_zero(n).linear_map(&self.alg, u)
    }
}

/// Permutation putting the slots of a direct sum into vertex order: for each
/// vertex, the slots of the first summand then those of the second.
fn interleave(a: &[usize], b: &[usize], s: usize) -> Vec<usize> {
    let na: usize = a.iter().sum();
    let mut out = Vec::new();
    let (mut pa, mut pb) = (0, na);
    for v in 0..s {
        out.extend(pa..pa + a[v]);
        pa += a[v];
        out.extend(pb..pb + b[v]);
        pb += b[v];
    }
    out
}

/// Random minimal complex with the given ranks: each column of d_n is a
/// random element of Ker d_{n-1} ∩ rad P_{n-1}.
pub fn random_minimal<F: Field>(
    alg: &Arc<AlgebraData<F>>,
    ranks: &VectorRank,
    rng: &mut dyn RngCore,
) -> ProjComplex<F> {
    let f = alg.field();
    let mut c = ProjComplex::zero(alg.clone(), ranks.clone());
    for n in ranks.lo() + 1..=ranks.top() {
        let rows = ranks.slots(n - 1);
        let cols = ranks.slots(n);
        let mut d = BlockMatrix::zeros(alg, rows.clone(), cols.clone());
        for (col, &u) in cols.iter().enumerate() {
            let basis: Vec<(usize, usize)> = BlockMatrix::<F::Elem>::module_basis(alg, &rows, u)
                .into_iter()
                .filter(|&(_, b)| alg.is_radical(b))
                .collect();
            if basis.is_empty() {
                continue;
            }
            let choices: Vec<Vec<F::Elem>> = match c.d(n - 1) {
                None => basis
                    .iter()
                    .enumerate()
                    .map(|(k, _)| {
                        let mut v = vec![f.zero(); basis.len()];
                        v[k] = f.one();
                        v
                    })
                    .collect(),
                Some(prev) => {
                    let full = prev.linear_map(alg, u);
                    let all = BlockMatrix::<F::Elem>::module_basis(alg, &rows, u);
                    let idx: Vec<usize> = basis
                        .iter()
                        .map(|p| all.iter().position(|q| q == p).expect("subset"))
                        .collect();
                    let mut sub = Matrix::zeros(f, full.rows(), idx.len());
                    for i in 0..full.rows() {
                        for (j, &k) in idx.iter().enumerate() {
                            sub[(i, j)] = full[(i, k)].clone();
                        }
                    }
                    sub.kernel(f)
                }
            };
            let mut v = vec![f.zero(); basis.len()];
            for k in &choices {
                let t = f.random_elem(rng);
                for (x, y) in v.iter_mut().zip(k) {
                    f.add_mul_assign(x, &t, y);
                }
            }
            for (&(slot, b), coef) in basis.iter().zip(v) {
                d.get_mut(slot, col)[b] = coef;
            }
        }
        *c.d_mut(n).expect("inside window") = d;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_square_to_zero() {
        let f = PrimeField::new(3).unwrap();
        let alg = Arc::new(corpus::load(f, corpus::BRUSTLE_A0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ranks = VectorRank::new(0, vec![vec![1, 1, 1, 0, 1, 1], vec![1, 1, 0, 1, 0, 0], vec![1, 0, 0, 1, 0, 0]]).unwrap();
        for _ in 0..10 {
            let c = random_minimal(&alg, &ranks, &mut rng);
            assert!(c.is_complex());
            assert!(c.is_minimal());
        }
    }

    #[test]
    fn cubic_composite_is_nonzero() {
        let f = PrimeField::new(5).unwrap();
        let alg = Arc::new(corpus::load(f, corpus::CUBIC).unwrap());
        let ranks = VectorRank::new(0, vec![vec![1], vec![1], vec![1]]).unwrap();
        let mut c = ProjComplex::zero(alg.clone(), ranks);
        let x = alg.path_element("x").unwrap().coeffs;
        c.d_mut(1).unwrap().set(0, 0, x.clone());
        c.d_mut(2).unwrap().set(0, 0, x);
        assert_eq!(c.check_dsquared(), Some(2));
    }
}
