use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

use super::groebner::{groebner_basis, normal_paths, reduce, PathPoly};
use super::path::{Path, Quiver};
use super::presentation::Presentation;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// One summand β*⊗γ* of ν(α*) with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTerm<E> {
    pub beta: usize,
    pub gamma: usize,
    pub coeff: E,
}

/// A basic finite-dimensional algebra kQ/I with a path basis.
#[derive(Clone, Debug)]
pub struct AlgebraData<F: Field> {
    field: F,
    quiver: Quiver,
    bound: usize,
    groebner: Vec<PathPoly<F::Elem>>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `table[u][v]` is the product `basis[u] * basis[v]`.
    table: Vec<Vec<Vec<(usize, F::Elem)>>>,
    peirce: Vec<Vec<Vec<usize>>>,
    radical: Vec<Vec<Vec<usize>>>,
    nu: Vec<Vec<NuTerm<F::Elem>>>,
    nilpotency: Option<usize>,
    id: u64,
}

/// Element of a specific [`AlgebraData`], in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<E> {
    pub alg: u64,
    pub coeffs: Vec<E>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct InvariantReport {
    pub associative: bool,
    pub unit: bool,
    pub idempotents: bool,
    pub peirce: bool,
    pub nilpotent: bool,
    pub nu_coassociative: bool,
    pub failures: Vec<String>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.associative && self.unit && self.idempotents && self.peirce && self.nilpotent && self.nu_coassociative
    }
}

impl<F: Field> AlgebraData<F> {
    /// Quotient of the path algebra by the ideal generated by `relations`.
    /// `bound` is the truncation witness: every path longer than it must
    /// reduce into the ideal.
    pub fn from_relations(
        field: F,
        quiver: Quiver,
        relations: Vec<PathPoly<F::Elem>>,
        bound: usize,
    ) -> Result<Self> {
        let longest = relations
            .iter()
            .filter_map(|r| r.tip().map(|t| t.0.len()))
            .max()
            .unwrap_or(0);
        let cap = (2 * (bound + 1)).max(longest + 1);
        let groebner = groebner_basis(&field, &relations, cap, bound)?;
        let basis = normal_paths::<F>(&quiver, &groebner, bound)?;
        Ok(Self::assemble(field, quiver, bound, groebner, basis))
    }

    /// The same algebra over a larger field `g`, with `embed` mapping
    /// coefficients. The normal-path basis does not change.
    pub fn base_change<G: Field>(&self, g: G, embed: impl Fn(&F::Elem) -> G::Elem) -> AlgebraData<G> {
        let groebner = self.groebner.iter().map(|p| p.map_coeffs(&g, &embed)).collect();
        AlgebraData::assemble(g, self.quiver.clone(), self.bound, groebner, self.basis.clone())
    }

    fn assemble(
        field: F,
        quiver: Quiver,
        bound: usize,
        groebner: Vec<PathPoly<F::Elem>>,
        basis: Vec<Path>,
    ) -> Self {
        let s = quiver.vertex_count();
        let d = basis.len();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let mut table = vec![vec![Vec::new(); d]; d];
        for (u, pu) in basis.iter().enumerate() {
            for (v, pv) in basis.iter().enumerate() {
                if let Some(p) = pu.compose(pv) {
                    let nf = reduce(&field, &groebner, &PathPoly::monomial(&field, p, field.one()));
                    table[u][v] = nf
                        .terms()
                        .map(|(q, c)| (index[q], c.clone()))
                        .collect();
                }
            }
        }
        let mut peirce = vec![vec![Vec::new(); s]; s];
        let mut radical = vec![vec![Vec::new(); s]; s];
        for (k, p) in basis.iter().enumerate() {
            peirce[p.target][p.source].push(k);
            if !p.is_trivial() {
                radical[p.target][p.source].push(k);
            }
        }
        let mut alg = Self {
            field,
            quiver,
            bound,
            groebner,
            basis,
            index,
            table,
            peirce,
            radical,
            nu: Vec::new(),
            nilpotency: None,
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        };
        alg.nu = alg.compute_nu();
        alg.nilpotency = alg.compute_nilpotency();
        alg
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn groebner(&self) -> &[PathPoly<F::Elem>] {
        &self.groebner
    }

    pub fn label(&self, k: usize) -> String {
        self.quiver.format_path(&self.basis[k])
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis index of the trivial path at `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    /// Basis indices spanning A_ji = e_j A e_i (paths from i to j).
    pub fn peirce(&self, j: usize, i: usize) -> &[usize] {
        &self.peirce[j][i]
    }

    /// Basis indices spanning J_ji, the positive-length part of A_ji.
    pub fn radical(&self, j: usize, i: usize) -> &[usize] {
        &self.radical[j][i]
    }

    pub fn is_radical(&self, k: usize) -> bool {
        !self.basis[k].is_trivial()
    }

    pub fn source(&self, k: usize) -> usize {
        self.basis[k].source
    }

    pub fn target(&self, k: usize) -> usize {
        self.basis[k].target
    }

    pub fn peirce_dims(&self) -> Vec<Vec<usize>> {
        self.peirce.iter().map(|r| r.iter().map(Vec::len).collect()).collect()
    }

    pub fn radical_dims(&self) -> Vec<Vec<usize>> {
        self.radical.iter().map(|r| r.iter().map(Vec::len).collect()).collect()
    }

    /// Structure constants of `basis[u] * basis[v]`.
    pub fn product(&self, u: usize, v: usize) -> &[(usize, F::Elem)] {
        &self.table[u][v]
    }

    /// Smallest n with J^n = 0, or `None` when the arrow ideal is not
    /// nilpotent (the presentation then does not describe kQ/I with I
    /// admissible).
    pub fn nilpotency_index(&self) -> Option<usize> {
        self.nilpotency
    }

    pub fn arrow_ideal_nilpotent(&self) -> bool {
        self.nilpotency.is_some()
    }

    pub fn zero_vec(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit_vec(&self, k: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        v[k] = self.field.one();
        v
    }

    pub fn one_vec(&self) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        for i in 0..self.vertex_count() {
            v[self.idempotent(i)] = self.field.one();
        }
        v
    }

    pub fn mul_vec(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero_vec();
        for (u, cu) in a.iter().enumerate() {
            if f.is_zero(cu) {
                continue;
            }
            for (v, cv) in b.iter().enumerate() {
                if f.is_zero(cv) {
                    continue;
                }
                let uv = f.mul(cu, cv);
                for (w, c) in &self.table[u][v] {
                    f.add_mul_assign(&mut out[*w], &uv, c);
                }
            }
        }
        out
    }

    pub fn element(&self, coeffs: Vec<F::Elem>) -> Result<Element<F::Elem>> {
        if coeffs.len() != self.dim() {
            return Err(Error::shape(format!(
                "element has {} coordinates, algebra has dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(Element { alg: self.id, coeffs })
    }

    pub fn basis_element(&self, k: usize) -> Element<F::Elem> {
        Element {
            alg: self.id,
            coeffs: self.unit_vec(k),
        }
    }

    /// Element named by a path written in arrow names, e.g. `"b1*alpha"` or `"e2"`.
    pub fn path_element(&self, written: &str) -> Result<Element<F::Elem>> {
        let p = self.parse_path(written)?;
        let nf = reduce(&self.field, &self.groebner, &PathPoly::monomial(&self.field, p, self.field.one()));
        Ok(Element {
            alg: self.id,
            coeffs: self.coords(&nf),
        })
    }

    pub fn parse_path(&self, written: &str) -> Result<Path> {
        let w = written.trim();
        if let Some(v) = w.strip_prefix('e').and_then(|r| r.parse::<usize>().ok()) {
            if v >= 1 && v <= self.vertex_count() && self.quiver.arrow_index(w).is_none() {
                return Ok(Path::trivial(v - 1));
            }
        }
        let arrows = w
            .split('*')
            .map(|n| {
                self.quiver
                    .arrow_index(n.trim())
                    .ok_or_else(|| Error::invalid(format!("unknown arrow `{}`", n.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        self.quiver
            .path(&arrows)
            .ok_or_else(|| Error::invalid(format!("`{w}` is not a path")))
    }

    /// Coordinates of a path combination after reduction to normal form.
    pub fn normal_form(&self, p: &PathPoly<F::Elem>) -> Vec<F::Elem> {
        let nf = reduce(&self.field, &self.groebner, p);
        self.coords(&nf)
    }

    fn coords(&self, nf: &PathPoly<F::Elem>) -> Vec<F::Elem> {
        let mut v = self.zero_vec();
        for (q, c) in nf.terms() {
            v[self.index[q]] = c.clone();
        }
        v
    }

    pub fn multiply(&self, a: &Element<F::Elem>, b: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        if a.alg != self.id || b.alg != self.id {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element {
            alg: self.id,
            coeffs: self.mul_vec(&a.coeffs, &b.coeffs),
        })
    }

    /// Matrix of x ↦ a·x on basis coordinates.
    pub fn left_mult_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for v in 0..d {
            let col = self.mul_vec(a, &self.unit_vec(v));
            for (w, c) in col.into_iter().enumerate() {
                m[(w, v)] = c;
            }
        }
        m
    }

    /// Matrix of x ↦ x·a on basis coordinates.
    pub fn right_mult_matrix(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let d = self.dim();
        let mut m = Matrix::zeros(&self.field, d, d);
        for u in 0..d {
            let col = self.mul_vec(&self.unit_vec(u), a);
            for (w, c) in col.into_iter().enumerate() {
                m[(w, u)] = c;
            }
        }
        m
    }

    fn compute_nu(&self) -> Vec<Vec<NuTerm<F::Elem>>> {
        let f = &self.field;
        let mut nu = vec![Vec::new(); self.dim()];
        let rad: Vec<usize> = (0..self.dim()).filter(|&k| self.is_radical(k)).collect();
        for &beta in &rad {
            for &gamma in &rad {
                for (alpha, c) in &self.table[beta][gamma] {
                    if self.is_radical(*alpha) && !f.is_zero(c) {
                        nu[*alpha].push(NuTerm {
                            beta,
                            gamma,
                            coeff: c.clone(),
                        });
                    }
                }
            }
        }
        nu
    }

    /// ν(α*) as a list of β*⊗γ* terms, for a radical basis index α. The
    /// coefficient of β*⊗γ* equals the coefficient of α in β·γ.
    pub fn nu(&self, alpha: usize) -> &[NuTerm<F::Elem>] {
        &self.nu[alpha]
    }

    /// ν restricted to J_ji*: pairs (α, ν(α*)).
    pub fn nu_block(&self, j: usize, i: usize) -> Vec<(usize, &[NuTerm<F::Elem>])> {
        self.radical[j][i].iter().map(|&a| (a, self.nu(a))).collect()
    }

    fn compute_nilpotency(&self) -> Option<usize> {
        let f = &self.field;
        let d = self.dim();
        let rad: Vec<usize> = (0..d).filter(|&k| self.is_radical(k)).collect();
        if rad.is_empty() {
            return Some(1);
        }
        let mut power: Vec<Vec<F::Elem>> = rad.iter().map(|&k| self.unit_vec(k)).collect();
        let mut prev_rank = usize::MAX;
        for n in 1..=d + 1 {
            let m = Matrix::from_rows(power.clone(), d);
            let ech = crate::linalg::Echelon::new(f, m);
            let rank = ech.rank();
            if rank == 0 {
                return Some(n);
            }
            if rank == prev_rank {
                return None;
            }
            prev_rank = rank;
            let rows: Vec<Vec<F::Elem>> = ech.matrix.to_rows();
            power = rows
                .iter()
                .flat_map(|r| rad.iter().map(move |&k| (r, k)))
                .map(|(r, k)| self.mul_vec(r, &self.unit_vec(k)))
                .collect();
        }
        None
    }

    /// Dimension of the radical of the trace form (a, b) ↦ tr(L_{ab}).
    /// This is the Jacobson radical when the characteristic is 0 or exceeds
    /// the dimension.
    pub fn trace_form_radical_dim(&self) -> usize {
        let f = &self.field;
        let d = self.dim();
        let trace = |k: usize| -> F::Elem {
            let mut t = f.zero();
            for v in 0..d {
                for (w, c) in &self.table[k][v] {
                    if *w == v {
                        t = f.add(&t, c);
                    }
                }
            }
            t
        };
        let traces: Vec<F::Elem> = (0..d).map(trace).collect();
        let mut gram = Matrix::zeros(f, d, d);
        for a in 0..d {
            for b in 0..d {
                let mut t = f.zero();
                for (w, c) in &self.table[a][b] {
                    f.add_mul_assign(&mut t, c, &traces[*w]);
                }
                gram[(a, b)] = t;
            }
        }
        d - gram.rank(f)
    }

    pub fn check_invariants(&self) -> InvariantReport {
        let f = &self.field;
        let d = self.dim();
        let mut rep = InvariantReport {
            associative: true,
            unit: true,
            idempotents: true,
            peirce: true,
            nilpotent: true,
            nu_coassociative: true,
            failures: Vec::new(),
        };

        'assoc: for u in 0..d {
            for v in 0..d {
                let uv = self.mul_vec(&self.unit_vec(u), &self.unit_vec(v));
                for w in 0..d {
                    let left = self.mul_vec(&uv, &self.unit_vec(w));
                    let vw = self.mul_vec(&self.unit_vec(v), &self.unit_vec(w));
                    let right = self.mul_vec(&self.unit_vec(u), &vw);
                    if left != right {
                        rep.associative = false;
                        rep.failures.push(format!(
                            "({}*{})*{} != {}*({}*{})",
                            self.label(u),
                            self.label(v),
                            self.label(w),
                            self.label(u),
                            self.label(v),
                            self.label(w)
                        ));
                        break 'assoc;
                    }
                }
            }
        }

        let one = self.one_vec();
        for k in 0..d {
            let b = self.unit_vec(k);
            if self.mul_vec(&one, &b) != b || self.mul_vec(&b, &one) != b {
                rep.unit = false;
                rep.failures.push(format!("1 does not act trivially on {}", self.label(k)));
                break;
            }
        }

        let s = self.vertex_count();
        for i in 0..s {
            for j in 0..s {
                let p = self.mul_vec(&self.unit_vec(self.idempotent(i)), &self.unit_vec(self.idempotent(j)));
                let expect = if i == j { self.unit_vec(self.idempotent(i)) } else { self.zero_vec() };
                if p != expect {
                    rep.idempotents = false;
                    rep.failures.push(format!("e{} e{} != δ e{}", i + 1, j + 1, i + 1));
                }
            }
        }

        let total: usize = self.peirce_dims().iter().flatten().sum();
        if total != d {
            rep.peirce = false;
            rep.failures.push(format!("Peirce blocks sum to {total}, dimension is {d}"));
        }
        for k in 0..d {
            let (i, j) = (self.source(k), self.target(k));
            for a in 0..s {
                for b in 0..s {
                    let ea = self.unit_vec(self.idempotent(a));
                    let eb = self.unit_vec(self.idempotent(b));
                    let sand = self.mul_vec(&self.mul_vec(&ea, &self.unit_vec(k)), &eb);
                    let expect = if a == j && b == i { self.unit_vec(k) } else { self.zero_vec() };
                    if sand != expect {
                        rep.peirce = false;
                        rep.failures.push(format!("e{} {} e{} misplaced", a + 1, self.label(k), b + 1));
                    }
                }
            }
        }
        for u in 0..d {
            for v in 0..d {
                for (w, _) in &self.table[u][v] {
                    if self.source(*w) != self.source(v) || self.target(*w) != self.target(u) {
                        rep.peirce = false;
                        rep.failures.push(format!(
                            "{}*{} leaves its Peirce block",
                            self.label(u),
                            self.label(v)
                        ));
                    }
                }
            }
        }
        for j in 0..s {
            for i in 0..s {
                if i != j && self.peirce[j][i] != self.radical[j][i] {
                    rep.peirce = false;
                    rep.failures.push(format!("J_{}{} != A_{}{}", j + 1, i + 1, j + 1, i + 1));
                }
            }
        }

        match self.nilpotency {
            Some(n) if n <= self.bound + 1 => {}
            Some(n) => {
                rep.nilpotent = false;
                rep.failures.push(format!("J^{} != 0 (nilpotency index {n})", self.bound + 1));
            }
            None => {
                rep.nilpotent = false;
                rep.failures.push("arrow ideal is not nilpotent".into());
            }
        }

        if let Err(msg) = self.check_nu_coassociative() {
            rep.nu_coassociative = false;
            rep.failures.push(msg);
        }
        let _ = f;
        rep
    }

    /// (ν⊗1)∘ν = (1⊗ν)∘ν on every dual basis vector.
    pub fn check_nu_coassociative(&self) -> std::result::Result<(), String> {
        let f = &self.field;
        for alpha in 0..self.dim() {
            if !self.is_radical(alpha) {
                continue;
            }
            let mut left: BTreeMap<(usize, usize, usize), F::Elem> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), F::Elem> = BTreeMap::new();
            for t in self.nu(alpha) {
                for s in self.nu(t.beta) {
                    let e = left.entry((s.beta, s.gamma, t.gamma)).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(&t.coeff, &s.coeff));
                }
                for s in self.nu(t.gamma) {
                    let e = right.entry((t.beta, s.beta, s.gamma)).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(&t.coeff, &s.coeff));
                }
            }
            left.retain(|_, c| !f.is_zero(c));
            right.retain(|_, c| !f.is_zero(c));
            if left != right {
                return Err(format!("ν is not coassociative at {}*", self.label(alpha)));
            }
        }
        Ok(())
    }
}

/// Build the algebra of a presentation whose relations are admissible and
/// free of the family parameter.
pub fn build_algebra<F: Field>(field: F, pres: &Presentation) -> Result<AlgebraData<F>> {
    let mut rels = Vec::new();
    for r in &pres.relations {
        let mut p = PathPoly::zero();
        for (c, path) in &r.terms {
            if !c.is_constant() {
                return Err(Error::invalid(format!(
                    "relation on line {} depends on lambda; load it as a family",
                    r.line
                )));
            }
            if path.len() < 2 {
                return Err(Error::NonAdmissible {
                    term: pres.quiver.format_path(path),
                    length: path.len(),
                });
            }
            p.add_term(&field, path.clone(), field.from_rational(&c.constant_term())?);
        }
        rels.push(p);
    }
    AlgebraData::from_relations(field, pres.quiver.clone(), rels, pres.bound)
}
