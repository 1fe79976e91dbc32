use crate::algebra::AlgebraData;
use crate::field::Field;
use crate::linalg::Matrix;

/// A homomorphism ⊕_c e_{v(c)} A → ⊕_r e_{v(r)} A of right modules, stored as
/// a matrix of algebra elements: entry (r, c) lies in e_{v(r)} A e_{v(c)} and
/// acts by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockMatrix<E> {
    row_vertices: Vec<usize>,
    col_vertices: Vec<usize>,
    dim: usize,
    entries: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> BlockMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(alg: &AlgebraData<F>, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let n = rows.len() * cols.len();
        Self {
            dim: alg.dim(),
            entries: vec![alg.zero_vec(); n],
            row_vertices: rows,
            col_vertices: cols,
        }
    }

    pub fn identity<F: Field<Elem = E>>(alg: &AlgebraData<F>, slots: Vec<usize>) -> Self {
        let mut m = Self::zeros(alg, slots.clone(), slots.clone());
        for (k, &v) in slots.iter().enumerate() {
            m.set(k, k, alg.unit_vec(alg.idempotent(v)));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_vertices.len()
    }

    pub fn cols(&self) -> usize {
        self.col_vertices.len()
    }

    pub fn row_vertices(&self) -> &[usize] {
        &self.row_vertices
    }

    pub fn col_vertices(&self) -> &[usize] {
        &self.col_vertices
    }

    pub fn get(&self, r: usize, c: usize) -> &[E] {
        &self.entries[r * self.col_vertices.len() + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Vec<E> {
        let n = self.col_vertices.len();
        &mut self.entries[r * n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Vec<E>) {
        assert_eq!(v.len(), self.dim);
        let n = self.col_vertices.len();
        self.entries[r * n + c] = v;
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.entries.iter().flatten().all(|x| f.is_zero(x))
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>, other: &Self) -> Self {
        assert_eq!(self.col_vertices, other.row_vertices, "block shapes do not compose");
        let f = alg.field();
        let mut out = Self::zeros(alg, self.row_vertices.clone(), other.col_vertices.clone());
        for r in 0..self.rows() {
            for m in 0..self.cols() {
                let a = self.get(r, m);
                if a.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                for c in 0..other.cols() {
                    let b = other.get(m, c);
                    if b.iter().all(|x| f.is_zero(x)) {
                        continue;
                    }
                    let p = alg.mul_vec(a, b);
                    let e = out.get_mut(r, c);
                    for (x, y) in e.iter_mut().zip(p) {
                        *x = f.add(x, &y);
                    }
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!((&self.row_vertices, &self.col_vertices), (&o.row_vertices, &o.col_vertices));
        let mut out = self.clone();
        for (e, g) in out.entries.iter_mut().zip(&o.entries) {
            for (x, y) in e.iter_mut().zip(g) {
                *x = f.add(x, y);
            }
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.scale(f, &f.neg(&f.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        let mut out = self.clone();
        for x in out.entries.iter_mut().flatten() {
            *x = f.mul(x, s);
        }
        out
    }

    /// Every entry (r, c) is supported on A_{v(r) v(c)}.
    pub fn respects_peirce<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>) -> bool {
        let f = alg.field();
        (0..self.rows()).all(|r| {
            (0..self.cols()).all(|c| {
                self.get(r, c).iter().enumerate().all(|(k, x)| {
                    f.is_zero(x) || (alg.target(k) == self.row_vertices[r] && alg.source(k) == self.col_vertices[c])
                })
            })
        })
    }

    /// Every entry lies in the radical.
    pub fn is_radical<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>) -> bool {
        let f = alg.field();
        self.entries
            .iter()
            .all(|e| e.iter().enumerate().all(|(k, x)| f.is_zero(x) || alg.is_radical(k)))
    }

    /// Coefficient of the idempotent e_v in entry (r, c); nonzero exactly
    /// when the entry is invertible modulo the radical.
    pub fn top_coeff<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>, r: usize, c: usize) -> E {
        let (vr, vc) = (self.row_vertices[r], self.col_vertices[c]);
        if vr != vc {
            return alg.field().zero();
        }
        self.get(r, c)[alg.idempotent(vr)].clone()
    }

    pub fn remove_row(&mut self, r: usize) {
        let n = self.cols();
        self.entries.drain(r * n..(r + 1) * n);
        self.row_vertices.remove(r);
    }

    pub fn remove_col(&mut self, c: usize) {
        let n = self.cols();
        let mut k = 0;
        self.entries.retain(|_| {
            let keep = k % n != c;
            k += 1;
            keep
        });
        self.col_vertices.remove(c);
    }

    /// Append a column with the given entries (one per row).
    pub fn push_col(&mut self, v: usize, col: Vec<Vec<E>>) {
        assert_eq!(col.len(), self.rows());
        let n = self.cols();
        let mut entries = Vec::with_capacity(self.entries.len() + col.len());
        for (r, e) in col.into_iter().enumerate() {
            entries.extend(self.entries[r * n..(r + 1) * n].iter().cloned());
            entries.push(e);
        }
        self.entries = entries;
        self.col_vertices.push(v);
    }

    /// Reorder columns so slot vertices are nondecreasing (stable).
    pub fn sort_cols(&mut self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cols()).collect();
        order.sort_by_key(|&c| self.col_vertices[c]);
        self.permute_cols(&order);
        order
    }

    pub fn permute_cols(&mut self, order: &[usize]) {
        let n = self.cols();
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in 0..self.rows() {
            for &c in order {
                entries.push(self.entries[r * n + c].clone());
            }
        }
        self.entries = entries;
        self.col_vertices = order.iter().map(|&c| self.col_vertices[c]).collect();
    }

    pub fn permute_rows(&mut self, order: &[usize]) {
        let n = self.cols();
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in order {
            entries.extend(self.entries[r * n..(r + 1) * n].iter().cloned());
        }
        self.entries = entries;
        self.row_vertices = order.iter().map(|&r| self.row_vertices[r]).collect();
    }

    /// Block-diagonal sum.
    pub fn direct_sum<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>, o: &Self) -> Self {
        let mut rows = self.row_vertices.clone();
        rows.extend(&o.row_vertices);
        let mut cols = self.col_vertices.clone();
        cols.extend(&o.col_vertices);
        let mut out = Self::zeros(alg, rows, cols);
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(r, c, self.get(r, c).to_vec());
            }
        }
        for r in 0..o.rows() {
            for c in 0..o.cols() {
                out.set(self.rows() + r, self.cols() + c, o.get(r, c).to_vec());
            }
        }
        out
    }

    /// Basis of P e_u for a slot list: pairs (slot, algebra basis index).
    pub fn module_basis<F: Field<Elem = E>>(alg: &AlgebraData<F>, slots: &[usize], u: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, &v) in slots.iter().enumerate() {
            for &b in alg.peirce(v, u) {
                out.push((s, b));
            }
        }
        out
    }

    /// The k-linear map P_col e_u → P_row e_u as a dense matrix.
    pub fn linear_map<F: Field<Elem = E>>(&self, alg: &AlgebraData<F>, u: usize) -> Matrix<E> {
        let f = alg.field();
        let dom = Self::module_basis(alg, &self.col_vertices, u);
        let cod = Self::module_basis(alg, &self.row_vertices, u);
        let pos: std::collections::HashMap<(usize, usize), usize> =
            cod.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut m = Matrix::zeros(f, cod.len(), dom.len());
        for (j, &(c, b)) in dom.iter().enumerate() {
            for r in 0..self.rows() {
                let e = self.get(r, c);
                if e.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                for (k, coef) in e.iter().enumerate() {
                    if f.is_zero(coef) {
                        continue;
                    }
                    for (w, sc) in alg.product(k, b) {
                        let i = pos[&(r, *w)];
                        let t = f.mul(coef, sc);
                        m[(i, j)] = f.add(&m[(i, j)], &t);
                    }
                }
            }
        }
        m
    }
}
