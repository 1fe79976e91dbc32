//! Dense exact linear algebra over any [`Field`].

use crate::field::Field;

/// Row-major dense matrix. The field handle is passed to each operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m[(i, i)] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !f.is_zero(b) {
                        f.add_mul_assign(&mut out.data[i * o.cols + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        Echelon::new(f, self.clone()).rank()
    }

    /// Basis of the right null space {v : Mv = 0}, one vector per free column.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        Echelon::new(f, self.clone()).kernel(f)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = f.one();
        }
        let e = Echelon::new(f, aug);
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&m[(r, c)])) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pv = m[(c, c)].clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).expect("nonzero pivot");
            for r in c + 1..n {
                if f.is_zero(&m[(r, c)]) {
                    continue;
                }
                let factor = f.mul(&m[(r, c)], &inv);
                for k in c..n {
                    let t = f.mul(&factor, &m[(c, k)]);
                    m[(r, k)] = f.sub(&m[(r, k)], &t);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form with pivot bookkeeping.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, mut m: Matrix<E>) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(&m[(r, c)]).expect("nonzero pivot");
            if !f.is_one(&inv) {
                for k in c..m.cols {
                    m[(r, k)] = f.mul(&m[(r, k)], &inv);
                }
            }
            let prow = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                let row = m.row_mut(i);
                for (k, pv) in prow.iter().enumerate() {
                    if !f.is_zero(pv) {
                        let t = f.mul(&factor, pv);
                        row[c + k] = f.sub(&row[c + k], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Self { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let n = self.matrix.cols;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); n];
                v[free] = f.one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = f.neg(&self.matrix[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Reduce `v` against the echelon rows; zero iff `v` lies in the row space.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (k, a) in self.matrix.row(r).iter().enumerate().skip(p) {
                if !f.is_zero(a) {
                    let t = f.mul(&factor, a);
                    v[k] = f.sub(&v[k], &t);
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|a| f.is_zero(a))
    }

    /// Coordinates of `v` in terms of the echelon rows, if it lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![f.zero(); v.len()];
        for (r, c) in coords.iter().enumerate() {
            for (k, a) in self.matrix.row(r).iter().enumerate() {
                f.add_mul_assign(&mut rebuilt[k], c, a);
            }
        }
        rebuilt
            .iter()
            .zip(v)
            .all(|(a, b)| f.is_zero(&f.sub(a, b)))
            .then_some(coords)
    }
}

/// Solve `M x = b`; returns one particular solution.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows(), b.len());
    let n = m.cols();
    let mut aug = Matrix::zeros(f, m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let e = Echelon::new(f, aug);
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![f.zero(); n];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.matrix[(r, n)].clone();
    }
    Some(x)
}

/// Dimension of the span of a list of vectors of length `len`.
pub fn span_dim<F: Field>(f: &F, vectors: &[Vec<F::Elem>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), len).rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_kernel_inverse() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 4], vec![1, 3, 2]], 3);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&f, &k[0]).iter().all(|x| *x == 0));
        assert!(m.inverse(&f).is_none());
        assert_eq!(m.determinant(&f), 0);

        let g = Matrix::from_rows(vec![vec![2, 1], vec![1, 1]], 2);
        let gi = g.inverse(&f).unwrap();
        assert_eq!(g.mul(&f, &gi), Matrix::identity(&f, 2));
        assert_eq!(g.determinant(&f), 1);
    }

    #[test]
    fn solve_and_coordinates() {
        let f = Rationals;
        let m = Matrix::from_rows(
            vec![
                vec![f.from_i64(1), f.from_i64(1)],
                vec![f.from_i64(1), f.from_i64(-1)],
            ],
            2,
        );
        let x = solve(&f, &m, &[f.from_i64(3), f.from_i64(1)]).unwrap();
        assert_eq!(x, vec![f.from_i64(2), f.from_i64(1)]);
        let e = Echelon::new(&f, m);
        assert!(e.coordinates(&f, &[f.from_i64(5), f.from_i64(7)]).is_some());
    }
}
