//! The space H(R•, I) of differentials with entries in an ideal I ⊆ J and
//! the quadratic equations cutting out D(R•, I).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::algebra::AlgebraData;
use crate::complexes::{BlockMatrix, ProjComplex, VectorRank};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

/// An ideal inside the radical: J itself or one of its powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ideal {
    Radical,
    RadicalPower(usize),
}

impl Ideal {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "J" | "J^1" => Ok(Ideal::Radical),
            t => t
                .strip_prefix("J^")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(Ideal::RadicalPower)
                .ok_or_else(|| Error::invalid(format!("unknown ideal `{t}`; use J or J^k"))),
        }
    }

    fn power(self) -> usize {
        match self {
            Ideal::Radical => 1,
            Ideal::RadicalPower(k) => k,
        }
    }

    /// Whether `self ⊆ other`.
    pub fn is_contained_in(self, other: Ideal) -> bool {
        self.power() >= other.power()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power() {
            1 => write!(f, "J"),
            k => write!(f, "J^{k}"),
        }
    }
}

/// Basis of e_j J^k e_i for every pair (j, i), as algebra vectors.
pub fn ideal_blocks<F: Field>(alg: &AlgebraData<F>, ideal: Ideal) -> Vec<Vec<Vec<Vec<F::Elem>>>> {
    let f = alg.field();
    let s = alg.vertex_count();
    let d = alg.dim();
    let mut gens: Vec<Vec<F::Elem>> = (0..d).filter(|&k| alg.is_radical(k)).map(|k| alg.unit_vec(k)).collect();
    for _ in 1..ideal.power() {
        let mut next = Vec::new();
        for g in &gens {
            for k in (0..d).filter(|&k| alg.is_radical(k)) {
                let p = alg.mul_vec(g, &alg.unit_vec(k));
                if p.iter().any(|x| !f.is_zero(x)) {
                    next.push(p);
                }
            }
        }
        gens = if next.is_empty() {
            Vec::new()
        } else {
            Echelon::new(f, Matrix::from_rows(next, d)).matrix.to_rows()
        };
    }
    let mut out = vec![vec![Vec::new(); s]; s];
    for (j, row) in out.iter_mut().enumerate() {
        for (i, blk) in row.iter_mut().enumerate() {
            let own = alg.peirce(j, i);
            let parts: Vec<Vec<F::Elem>> = gens
                .iter()
                .map(|g| {
                    let mut v = alg.zero_vec();
                    for &k in own {
                        v[k] = g[k].clone();
                    }
                    v
                })
                .filter(|v| v.iter().any(|x| !f.is_zero(x)))
                .collect();
            if !parts.is_empty() {
                *blk = Echelon::new(f, Matrix::from_rows(parts, d)).matrix.to_rows();
            }
        }
    }
    out
}

/// One coordinate of H: degree n of d_n, row slot, column slot, and the
/// index of an ideal basis vector of that block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomVar {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub element: usize,
}

/// Σ c · x_a · x_b
#[derive(Clone, Debug)]
pub struct Quadric<E> {
    pub terms: Vec<(usize, usize, E)>,
}

/// H(R•, I) = ⊕_n Hom(R_n A, I·R_{n-1} A) with coordinates and the
/// equations h_{n-1} h_n = 0.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    alg: Arc<AlgebraData<F>>,
    ranks: VectorRank,
    ideal: Ideal,
    blocks: Vec<Vec<Vec<Vec<F::Elem>>>>,
    vars: Vec<HomVar>,
    /// Echelon form of each nonempty ideal block, for coordinates.
    echelons: HashMap<(usize, usize), Echelon<F::Elem>>,
    equations: Vec<Quadric<F::Elem>>,
}

/// A point of D(R•, I): a nonzero h with h_{n-1} h_n = 0, normalized so
/// its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DPoint<E> {
    pub coords: Vec<E>,
}

impl<F: Field> HomSpace<F> {
    pub fn new(alg: Arc<AlgebraData<F>>, ranks: VectorRank, ideal: Ideal) -> Result<Self> {
        if ranks.vertex_count() != alg.vertex_count() {
            return Err(Error::shape("rank tuples do not match the algebra"));
        }
        let f = alg.field().clone();
        let blocks = ideal_blocks(&alg, ideal);
        let mut vars = Vec::new();
        for n in ranks.lo() + 1..=ranks.top() {
            let rows = ranks.slots(n - 1);
            let cols = ranks.slots(n);
            for (r, &j) in rows.iter().enumerate() {
                for (c, &i) in cols.iter().enumerate() {
                    for element in 0..blocks[j][i].len() {
                        vars.push(HomVar {
                            degree: n,
                            row: r,
                            col: c,
                            element,
                        });
                    }
                }
            }
        }
        let mut echelons = HashMap::new();
        for (j, row) in blocks.iter().enumerate() {
            for (i, blk) in row.iter().enumerate() {
                if !blk.is_empty() {
                    echelons.insert((j, i), Echelon::new(&f, Matrix::from_rows(blk.clone(), alg.dim())));
                }
            }
        }
        let mut by_block: HashMap<(i64, usize, usize), Vec<usize>> = HashMap::new();
        for (k, v) in vars.iter().enumerate() {
            by_block.entry((v.degree, v.row, v.col)).or_default().push(k);
        }
        let mut equations = Vec::new();
        for n in ranks.lo() + 2..=ranks.top() {
            let (rows, mids, cols) = (ranks.slots(n - 2), ranks.slots(n - 1), ranks.slots(n));
            for (r, &j) in rows.iter().enumerate() {
                for (c, &i) in cols.iter().enumerate() {
                    // coordinate w of (h_{n-1} h_n)[r][c]
                    let mut acc: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); alg.dim()];
                    for (m, &l) in mids.iter().enumerate() {
                        let (Some(left), Some(right)) = (by_block.get(&(n - 1, r, m)), by_block.get(&(n, m, c))) else {
                            continue;
                        };
                        for &a in left {
                            for &b in right {
                                let p = alg.mul_vec(&blocks[j][l][vars[a].element], &blocks[l][i][vars[b].element]);
                                for (w, x) in p.into_iter().enumerate() {
                                    if !f.is_zero(&x) {
                                        acc[w].push((a, b, x));
                                    }
                                }
                            }
                        }
                    }
                    equations.extend(acc.into_iter().filter(|t| !t.is_empty()).map(|terms| Quadric { terms }));
                }
            }
        }
        Ok(Self {
            alg,
            ranks,
            ideal,
            blocks,
            vars,
            echelons,
            equations,
        })
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

    pub fn ideal(&self) -> Ideal {
        self.ideal
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[HomVar] {
        &self.vars
    }

    pub fn equations(&self) -> &[Quadric<F::Elem>] {
        &self.equations
    }

    /// Dimension of H in degree n only.
    pub fn dim_at(&self, n: i64) -> usize {
        self.vars.iter().filter(|v| v.degree == n).count()
    }

    /// dim G(R•) = Σ_n dim End(R_n A).
    pub fn group_dim(&self) -> usize {
        self.ranks
            .degrees()
            .map(|n| {
                let sl = self.ranks.slots(n);
                sl.iter()
                    .flat_map(|&a| sl.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| self.alg.peirce(a, b).len())
                    .sum::<usize>()
            })
            .sum()
    }

    pub fn satisfies(&self, h: &[F::Elem]) -> bool {
        let f = self.field();
        self.equations.iter().all(|q| {
            let mut acc = f.zero();
            for (a, b, c) in &q.terms {
                if f.is_zero(&h[*a]) || f.is_zero(&h[*b]) {
                    continue;
                }
                let t = f.mul(&h[*a], &h[*b]);
                f.add_mul_assign(&mut acc, &t, c);
            }
            f.is_zero(&acc)
        })
    }

    /// Polarization B(u, v) of the equations, one value per equation.
    pub fn polar(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        self.equations
            .iter()
            .map(|q| {
                let mut acc = f.zero();
                for (a, b, c) in &q.terms {
                    let t = f.add(&f.mul(&u[*a], &v[*b]), &f.mul(&v[*a], &u[*b]));
                    f.add_mul_assign(&mut acc, &t, c);
                }
                acc
            })
            .collect()
    }

    /// Jacobian of the equations at h: row e is u ↦ B_e(h, u).
    pub fn jacobian(&self, h: &[F::Elem]) -> Matrix<F::Elem> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.equations.len(), self.dim());
        for (e, q) in self.equations.iter().enumerate() {
            for (a, b, c) in &q.terms {
                let x = f.mul(c, &h[*b]);
                m[(e, *a)] = f.add(&m[(e, *a)], &x);
                let y = f.mul(c, &h[*a]);
                m[(e, *b)] = f.add(&m[(e, *b)], &y);
            }
        }
        m
    }

    /// The differentials of the complex with coordinates h.
    pub fn to_complex(&self, h: &[F::Elem]) -> ProjComplex<F> {
        let f = self.field();
        let mut c = ProjComplex::zero(self.alg.clone(), self.ranks.clone());
        for (v, x) in self.vars.iter().zip(h) {
            if f.is_zero(x) {
                continue;
            }
            let j = self.ranks.slots(v.degree - 1)[v.row];
            let i = self.ranks.slots(v.degree)[v.col];
            let e = c.d_mut(v.degree).expect("inside window").get_mut(v.row, v.col);
            for (y, b) in e.iter_mut().zip(&self.blocks[j][i][v.element]) {
                f.add_mul_assign(y, x, b);
            }
        }
        c
    }

    /// Inverse of [`to_complex`](Self::to_complex) on differentials with
    /// entries in the ideal.
    pub fn coords_of(&self, diffs: &[BlockMatrix<F::Elem>]) -> Result<Vec<F::Elem>> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        let mut k = 0;
        for n in self.ranks.lo() + 1..=self.ranks.top() {
            let d = &diffs[(n - self.ranks.lo() - 1) as usize];
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let e = d.get(r, c);
                    let key = (d.row_vertices()[r], d.col_vertices()[c]);
                    match self.echelons.get(&key) {
                        Some(ech) => {
                            let x = ech
                                .coordinates(f, e)
                                .ok_or_else(|| Error::invalid("entry lies outside the ideal"))?;
                            // echelon rows are the stored block basis
                            for y in x {
                                out[k] = y;
                                k += 1;
                            }
                        }
                        None => {
                            if e.iter().any(|x| !f.is_zero(x)) {
                                return Err(Error::invalid("entry lies outside the ideal"));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Scale so the first nonzero coordinate is 1; `None` for zero.
    pub fn normalize(&self, h: &[F::Elem]) -> Option<DPoint<F::Elem>> {
        let f = self.field();
        let p = h.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&h[p]).expect("nonzero");
        Some(DPoint {
            coords: h.iter().map(|x| f.mul(x, &inv)).collect(),
        })
    }

    /// Number of normalized candidates, (q^dim - 1)/(q - 1).
    pub fn candidate_count(&self) -> Option<f64> {
        let q = self.field().size()? as f64;
        Some((q.powi(self.dim() as i32) - 1.0) / (q - 1.0))
    }

    /// Every point of D over a finite field, in lexicographic order of the
    /// normalized candidates.
    pub fn enumerate_points(&self, cap: u64, exec: Execution) -> Result<Vec<DPoint<F::Elem>>> {
        let f = self.field();
        let elems = f
            .enumerate()
            .ok_or_else(|| Error::invalid("exhaustive enumeration needs a finite field"))?;
        let dim = self.dim();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let estimate = self.candidate_count().expect("finite");
        if estimate > cap as f64 {
            return Err(Error::Infeasible {
                what: format!("enumerating P(H) with dim H = {dim}"),
                estimate,
                cap,
            });
        }
        let q = elems.len() as u64;
        // candidates with leading 1 at position p: q^(dim-1-p) of them
        let mut jobs = Vec::new();
        for p in 0..dim {
            let tail = q.pow((dim - 1 - p) as u32);
            let chunk = 4096u64;
            let mut start = 0;
            while start < tail {
                jobs.push((p, start, (start + chunk).min(tail)));
                start += chunk;
            }
        }
        let found = exec.map(jobs, |(p, from, to)| {
            let mut out = Vec::new();
            for code in from..to {
                let mut h = vec![f.zero(); dim];
                h[p] = f.one();
                let mut rest = code;
                for x in h[p + 1..].iter_mut().rev() {
                    *x = elems[(rest % q) as usize].clone();
                    rest /= q;
                }
                if self.satisfies(&h) {
                    out.push(DPoint { coords: h });
                }
            }
            out
        });
        Ok(found.into_iter().flatten().collect())
    }

    /// Random points built degree by degree: each new block is a random
    /// combination of a random part of the kernel of h ↦ h_{n-1}·h.
    pub fn sample_points(&self, rng: &mut dyn RngCore, count: usize, retries: usize) -> SampleResult<F::Elem> {
        let f = self.field();
        let mut points = Vec::new();
        let mut attempts = 0;
        if self.dim() == 0 {
            return SampleResult {
                points,
                attempts,
                strategy: "degreewise-kernel",
                diagnostic: Some("H is zero".into()),
            };
        }
        while points.len() < count && attempts < count * retries.max(1) {
            attempts += 1;
            let mut h = vec![f.zero(); self.dim()];
            for n in self.ranks.lo() + 1..=self.ranks.top() {
                let idx: Vec<usize> = (0..self.dim()).filter(|&k| self.vars[k].degree == n).collect();
                if idx.is_empty() {
                    continue;
                }
                let choices = self.linear_constraint_kernel(&h, n, &idx);
                if choices.is_empty() {
                    continue;
                }
                let keep = rng.gen_range(0..=choices.len());
                let mut order: Vec<usize> = (0..choices.len()).collect();
                for a in (1..order.len()).rev() {
                    order.swap(a, rng.gen_range(0..=a));
                }
                for &k in order.iter().take(keep) {
                    let t = f.random_elem(rng);
                    for (pos, y) in idx.iter().zip(&choices[k]) {
                        f.add_mul_assign(&mut h[*pos], &t, y);
                    }
                }
            }
            if let Some(p) = self.normalize(&h) {
                debug_assert!(self.satisfies(&p.coords));
                points.push(p);
            }
        }
        let diagnostic = if points.is_empty() {
            Some(format!("no nonzero point found in {attempts} attempts"))
        } else {
            None
        };
        SampleResult {
            points,
            attempts,
            strategy: "degreewise-kernel",
            diagnostic,
        }
    }

    /// Kernel of the linear map (coordinates `idx` of degree n) ↦ the
    /// equations between degree n-1 (already fixed in h) and degree n.
    fn linear_constraint_kernel(&self, h: &[F::Elem], n: i64, idx: &[usize]) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut rows = Vec::new();
        for q in &self.equations {
            let mut row = vec![f.zero(); idx.len()];
            let mut relevant = false;
            for (a, b, c) in &q.terms {
                // a lives in degree n-1, b in degree n
                if let Some(&k) = pos.get(b) {
                    if self.vars[*a].degree == n - 1 {
                        relevant = true;
                        let t = f.mul(c, &h[*a]);
                        row[k] = f.add(&row[k], &t);
                    }
                }
            }
            if relevant {
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Matrix::identity(f, idx.len()).to_rows();
        }
        Matrix::from_rows(rows, idx.len()).kernel(f)
    }
}

#[derive(Clone, Debug)]
pub struct SampleResult<E> {
    pub points: Vec<DPoint<E>>,
    pub attempts: usize,
    pub strategy: &'static str,
    pub diagnostic: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual_space(ranks: Vec<Vec<usize>>, ideal: Ideal) -> HomSpace<PrimeField> {
        let alg = Arc::new(corpus::load(PrimeField::new(3).unwrap(), corpus::DUAL_NUMBERS).unwrap());
        HomSpace::new(alg, VectorRank::new(0, ranks).unwrap(), ideal).unwrap()
    }

    #[test]
    fn dual_number_dims() {
        assert_eq!(dual_space(vec![vec![1], vec![1]], Ideal::Radical).dim(), 1);
        assert_eq!(dual_space(vec![vec![1], vec![1], vec![1]], Ideal::Radical).dim(), 2);
        assert_eq!(dual_space(vec![vec![1], vec![1]], Ideal::RadicalPower(2)).dim(), 0);
    }

    #[test]
    fn dual_number_points() {
        let s = dual_space(vec![vec![1], vec![1]], Ideal::Radical);
        assert_eq!(s.enumerate_points(1000, Execution::Sequential).unwrap().len(), 1);
        let s = dual_space(vec![vec![1], vec![1], vec![1]], Ideal::Radical);
        assert_eq!(s.enumerate_points(1000, Execution::default()).unwrap().len(), 4);
    }

    #[test]
    fn samples_are_points() {
        let f = PrimeField::new(3).unwrap();
        let alg = Arc::new(corpus::load(f, corpus::BRUSTLE_A0).unwrap());
        let ranks = VectorRank::parse("1,1,1,0,1,1/1,1,0,1,0,0/1,0,0,0,0,0", 0).unwrap();
        let s = HomSpace::new(alg, ranks, Ideal::Radical).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = s.sample_points(&mut rng, 20, 10);
        assert!(!r.points.is_empty());
        for p in &r.points {
            assert!(s.satisfies(&p.coords));
            assert!(s.to_complex(&p.coords).is_complex());
            let c = s.to_complex(&p.coords);
            assert_eq!(s.coords_of(c.diffs()).unwrap(), p.coords);
        }
    }
}
