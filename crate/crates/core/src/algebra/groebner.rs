//! Noncommutative Gröbner bases in path algebras under the deglex order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

use super::path::{Path, Quiver};

/// Linear combination of paths sharing source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathPoly<E> {
    terms: BTreeMap<Path, E>,
}

impl<E: Clone + PartialEq> Default for PathPoly<E> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<E: Clone + PartialEq> PathPoly<E> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, p: Path, c: E) -> Self {
        let mut out = Self::zero();
        out.add_term(f, p, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn tip(&self) -> Option<(&Path, &E)> {
        self.terms.iter().next_back()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, p: &Path) -> E {
        self.terms.get(p).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, f: &F, p: Path, c: E) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                let s = f.add(v, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&p);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled<F: Field<Elem = E>>(&mut self, f: &F, o: &Self, s: &E) {
        for (p, c) in &o.terms {
            self.add_term(f, p.clone(), f.mul(c, s));
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        let mut out = Self::zero();
        out.add_scaled(f, self, s);
        out
    }

    pub fn make_monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.tip() {
            Some((_, c)) => {
                let inv = f.inv(c).expect("nonzero coefficient");
                self.scale(f, &inv)
            }
            None => self.clone(),
        }
    }

    /// `left * self * right`; terms that do not compose are dropped.
    pub fn sandwich<F: Field<Elem = E>>(&self, f: &F, left: &Path, right: &Path) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            if let Some(q) = p.compose(right).and_then(|q| left.compose(&q)) {
                out.add_term(f, q, c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, m: impl Fn(&E) -> G::Elem) -> PathPoly<G::Elem> {
        let mut out = PathPoly::zero();
        for (p, c) in &self.terms {
            out.add_term(g, p.clone(), m(c));
        }
        out
    }

    /// Split into components e_j · self · e_i.
    pub fn uniform_parts(&self) -> Vec<Self> {
        let mut parts: BTreeMap<(usize, usize), Self> = BTreeMap::new();
        for (p, c) in &self.terms {
            parts
                .entry((p.source, p.target))
                .or_insert_with(Self::zero)
                .terms
                .insert(p.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = f.neg(c);
            let (sign, mag) = if f.format(c).starts_with('-') {
                ("-", neg)
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if !f.is_one(&mag) {
                let m = f.format(&mag);
                if m.contains(['+', ' ']) || m.contains("-") {
                    s.push_str(&format!("({m})*"));
                } else {
                    s.push_str(&format!("{m}*"));
                }
            }
            s.push_str(&q.format_path(p));
        }
        s
    }
}

/// Fully reduce `p` modulo a list of monic polynomials.
pub fn reduce<F: Field>(f: &F, basis: &[PathPoly<F::Elem>], p: &PathPoly<F::Elem>) -> PathPoly<F::Elem> {
    let mut rem = PathPoly::zero();
    let mut work = p.clone();
    while let Some((t, c)) = work.tip().map(|(t, c)| (t.clone(), c.clone())) {
        let hit = basis.iter().find_map(|g| {
            let (gt, _) = g.tip()?;
            t.find(gt).map(|pos| (g, t.split_at(pos, gt)))
        });
        match hit {
            Some((g, (l, r))) => {
                let s = g.sandwich(f, &l, &r);
                work.add_scaled(f, &s, &f.neg(&c));
            }
            None => {
                work.terms.remove(&t);
                rem.add_term(f, t, c);
            }
        }
    }
    rem
}

fn interreduce<F: Field>(f: &F, mut g: Vec<PathPoly<F::Elem>>) -> Vec<PathPoly<F::Elem>> {
    g.retain(|p| !p.is_zero());
    let mut g: Vec<_> = g.into_iter().map(|p| p.make_monic(f)).collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < g.len() {
            let others: Vec<_> = g
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce(f, &others, &g[i]).make_monic(f);
            if r != g[i] {
                changed = true;
                if r.is_zero() {
                    g.remove(i);
                    continue;
                }
                g[i] = r;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    g.sort_by(|a, b| a.tip().map(|t| t.0).cmp(&b.tip().map(|t| t.0)));
    g
}

/// Overlap polynomials between the tips of `a` and `b`.
fn overlaps<F: Field>(f: &F, a: &PathPoly<F::Elem>, b: &PathPoly<F::Elem>) -> Vec<PathPoly<F::Elem>> {
    let (Some((ta, _)), Some((tb, _))) = (a.tip(), b.tip()) else {
        return Vec::new();
    };
    let (k, l) = (ta.len(), tb.len());
    let mut out = Vec::new();
    for j in 1..k.min(l) {
        if ta.arrows[k - j..] != tb.arrows[..j] {
            continue;
        }
        // ta = u*w, tb = w*v
        let w_src = ta.source;
        let v = Path {
            source: tb.source,
            target: w_src,
            arrows: tb.arrows[j..].to_vec(),
        };
        let u = Path {
            source: tb.target,
            target: ta.target,
            arrows: ta.arrows[..k - j].to_vec(),
        };
        let id_l = Path::trivial(ta.target);
        let id_r = Path::trivial(tb.source);
        let mut s = a.sandwich(f, &id_l, &v);
        s.add_scaled(f, &b.sandwich(f, &u, &id_r), &f.neg(&f.one()));
        out.push(s);
    }
    out
}

/// Reduced Gröbner basis of the two-sided ideal generated by `gens`.
///
/// Fails with [`Error::InfiniteDimensional`] when a tip longer than `cap`
/// appears, which for the presentations handled here means the quotient is
/// not finite-dimensional within the advertised bound.
pub fn groebner_basis<F: Field>(
    f: &F,
    gens: &[PathPoly<F::Elem>],
    cap: usize,
    bound: usize,
) -> Result<Vec<PathPoly<F::Elem>>> {
    let split: Vec<_> = gens.iter().flat_map(|g| g.uniform_parts()).collect();
    let mut g = interreduce(f, split);
    let mut seen = std::collections::HashSet::new();
    loop {
        let mut fresh = Vec::new();
        for a in &g {
            for b in &g {
                let key = (a.clone(), b.clone());
                if seen.contains(&key) {
                    continue;
                }
                for s in overlaps(f, a, b) {
                    let r = reduce(f, &g, &s);
                    if !r.is_zero() {
                        fresh.push(r);
                    }
                }
                seen.insert(key);
            }
        }
        if fresh.is_empty() {
            return Ok(g);
        }
        g.extend(fresh);
        g = interreduce(f, g);
        if let Some(long) = g.iter().filter_map(|p| p.tip()).find(|(t, _)| t.len() > cap) {
            return Err(Error::InfiniteDimensional {
                bound,
                detail: format!(
                    "Gröbner completion produced a tip of length {} (cap {cap})",
                    long.0.len()
                ),
            });
        }
        if g.len() > 20_000 {
            return Err(Error::InfiniteDimensional {
                bound,
                detail: "Gröbner completion did not settle".into(),
            });
        }
    }
}

/// Normal-form paths up to length `bound`; errors if some path of length
/// `bound + 1` is still a normal form.
pub fn normal_paths<F: Field>(
    q: &Quiver,
    basis: &[PathPoly<F::Elem>],
    bound: usize,
) -> Result<Vec<Path>> {
    let tips: Vec<&Path> = basis.iter().filter_map(|g| g.tip().map(|t| t.0)).collect();
    let is_normal = |p: &Path| tips.iter().all(|t| p.find(t).is_none());
    let mut out = Vec::new();
    let mut level: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    for len in 0..=bound + 1 {
        if len == bound + 1 {
            if let Some(p) = level.first() {
                return Err(Error::InfiniteDimensional {
                    bound,
                    detail: format!("path `{}` of length {} is not in the ideal", q.format_path(p), len),
                });
            }
            break;
        }
        out.extend(level.iter().cloned());
        let mut next = Vec::new();
        for p in &level {
            for a in 0..q.arrows().len() {
                if let Some(r) = q.arrow_path(a).compose(p) {
                    if is_normal(&r) {
                        next.push(r);
                    }
                }
            }
        }
        level = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn poly(f: &Rationals, q: &Quiver, terms: &[(i64, &[usize])]) -> PathPoly<num_rational::BigRational> {
        let mut p = PathPoly::zero();
        for (c, w) in terms {
            p.add_term(f, q.path(w).unwrap(), f.from_i64(*c));
        }
        p
    }

    #[test]
    fn commutativity_relation_completes() {
        // k<x,y>/(yx - xy, x^2, y^2) has basis 1, x, y, xy
        let f = Rationals;
        let q = Quiver::from_list(1, &[("x", 1, 1), ("y", 1, 1)]).unwrap();
        let gens = vec![
            poly(&f, &q, &[(1, &[1, 0]), (-1, &[0, 1])]),
            poly(&f, &q, &[(1, &[0, 0])]),
            poly(&f, &q, &[(1, &[1, 1])]),
        ];
        let g = groebner_basis(&f, &gens, 8, 2).unwrap();
        let nf = normal_paths::<Rationals>(&q, &g, 2).unwrap();
        assert_eq!(nf.len(), 4);
    }

    #[test]
    fn free_loop_is_infinite() {
        let f = PrimeField::new(3).unwrap();
        let q = Quiver::from_list(1, &[("x", 1, 1)]).unwrap();
        let g: Vec<PathPoly<u64>> = Vec::new();
        assert!(matches!(
            normal_paths::<PrimeField>(&q, &g, 3),
            Err(Error::InfiniteDimensional { .. })
        ));
        let _ = f;
    }

    #[test]
    fn reduction_is_idempotent() {
        let f = Rationals;
        let q = Quiver::from_list(1, &[("x", 1, 1)]).unwrap();
        // x^2 = 2x
        let gens = vec![poly(&f, &q, &[(1, &[0, 0]), (-2, &[0])])];
        let g = groebner_basis(&f, &gens, 8, 2).unwrap();
        let p = poly(&f, &q, &[(1, &[0, 0, 0, 0])]);
        let r = reduce(&f, &g, &p);
        assert_eq!(r, poly(&f, &q, &[(8, &[0])]));
        assert_eq!(reduce(&f, &g, &r), r);
    }
}
