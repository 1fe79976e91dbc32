//! Flat limits of a family at a point.
//!
//! Let R be the local ring of the line at λ0 and A_K the algebra over
//! K = k(λ). When the structure constants of A_K in its normal-path basis
//! lie in R, the image of R⟨Γ⟩ in A_K is the free lattice on that basis and
//! the flat fibre is the lattice modulo the maximal ideal. Its defining
//! ideal is the Grassmannian limit of I(λ) at λ0: the kernel of
//! p ↦ NF(p)(λ0) on paths.

use serde::Serialize;

use crate::algebra::{groebner_basis, reduce, AlgebraData, Path, PathPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{RatFn, RationalFunctions};

use super::family::AlgebraFamily;

#[derive(Clone, Debug)]
pub struct FlatLimit<F: Field> {
    pub lambda: String,
    pub generic_dim: usize,
    /// Dimension of the naive fibre kΓ/I(λ0), when it is finite.
    pub naive_dim: Option<usize>,
    /// The flat fibre kΓ/I_lim.
    pub quotient: AlgebraData<F>,
    /// Reduced Gröbner basis of I_lim modulo I(λ0), nonzero entries only.
    pub extra: Vec<PathPoly<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatLimitReport {
    pub lambda: String,
    pub generic_dim: usize,
    pub naive_dim: Option<usize>,
    pub limit_dim: usize,
    pub limit_relations: Vec<String>,
    pub extra_relations: Vec<String>,
}

impl<F: Field> FlatLimit<F> {
    pub fn describe(&self) -> FlatLimitReport {
        let f = self.quotient.field();
        let q = self.quotient.quiver();
        FlatLimitReport {
            lambda: self.lambda.clone(),
            generic_dim: self.generic_dim,
            naive_dim: self.naive_dim,
            limit_dim: self.quotient.dim(),
            limit_relations: self.quotient.groebner().iter().map(|g| g.format(f, q)).collect(),
            extra_relations: self.extra.iter().map(|g| g.format(f, q)).collect(),
        }
    }
}

fn at<F: Field>(f: &F, x: &RatFn<F::Elem>, l0: &F::Elem) -> Option<F::Elem> {
    let d = x.den.eval(f, l0);
    f.div(&x.num.eval(f, l0), &d)
}

/// The flat fibre of `fam` at λ0.
pub fn flat_limit<F: Field>(fam: &AlgebraFamily, f: F, l0: &F::Elem) -> Result<FlatLimit<F>> {
    let lambda = f.format(l0);
    let generic = fam.generic(f.clone())?;
    let d = generic.dim();
    let k: &RationalFunctions<F> = generic.field();
    let pole = |what: String| Error::invalid(format!("no flat limit at lambda = {lambda}: {what} has a pole there"));
    for u in 0..d {
        for v in 0..d {
            for (w, c) in generic.product(u, v) {
                if !f.is_zero(&c.den.eval(&f, l0)) {
                    continue;
                }
                return Err(pole(format!(
                    "structure constant of {} in {} * {}",
                    generic.label(*w),
                    generic.label(u),
                    generic.label(v)
                )));
            }
        }
    }

    let q = fam.quiver();
    let basis: Vec<Path> = generic.basis().to_vec();
    let longest = basis.iter().map(Path::len).max().unwrap_or(0);
    let mut rels = Vec::new();
    for len in 1..=longest + 1 {
        for p in q.paths_of_length(len) {
            if generic.index_of(&p).is_some() {
                continue;
            }
            let nf = generic.normal_form(&PathPoly::monomial(k, p.clone(), k.one()));
            let mut r = PathPoly::monomial(&f, p.clone(), f.one());
            for (b, c) in nf.iter().enumerate() {
                if k.is_zero(c) {
                    continue;
                }
                let c0 = at(&f, c, l0).ok_or_else(|| pole(format!("the normal form of {}", q.format_path(&p))))?;
                r.add_term(&f, basis[b].clone(), f.neg(&c0));
            }
            if r.terms().any(|(t, _)| t.is_trivial()) {
                return Err(Error::NonAdmissible {
                    term: q.format_path(&p),
                    length: 0,
                });
            }
            rels.push(r);
        }
    }
    let quotient = AlgebraData::from_relations(f.clone(), q.clone(), rels, fam.presentation().bound)?;
    if quotient.dim() != d {
        return Err(Error::Invariant(format!(
            "flat limit at lambda = {lambda} has dimension {} but the generic fibre has {d}",
            quotient.dim()
        )));
    }

    let naive = fam.relations_at(&f, l0)?;
    for r in &naive {
        if !reduce(&f, quotient.groebner(), r).is_zero() {
            return Err(Error::Invariant(format!(
                "relation {} is not in the limit ideal",
                r.format(&f, q)
            )));
        }
    }
    let bound = fam.presentation().bound;
    let cap = 2 * (bound + 1) + longest;
    let naive_gb = groebner_basis(&f, &naive, cap, bound).ok();
    let naive_dim = fam.evaluate(f.clone(), l0).ok().map(|a| a.dim());
    let extra: Vec<PathPoly<F::Elem>> = match &naive_gb {
        Some(gb) => {
            let rem: Vec<_> = quotient
                .groebner()
                .iter()
                .map(|g| reduce(&f, gb, g))
                .filter(|r| !r.is_zero())
                .map(|r| r.make_monic(&f))
                .collect();
            minimal_extra(&f, gb, rem)
        }
        None => quotient.groebner().to_vec(),
    };
    Ok(FlatLimit {
        lambda,
        generic_dim: d,
        naive_dim,
        quotient,
        extra,
    })
}

/// Drop extra relations already implied by the naive ideal and the earlier
/// extras. Gröbner completion of long lists can be expensive, so this only
/// reduces by the tips it has.
fn minimal_extra<F: Field>(f: &F, naive: &[PathPoly<F::Elem>], rem: Vec<PathPoly<F::Elem>>) -> Vec<PathPoly<F::Elem>> {
    let mut kept: Vec<PathPoly<F::Elem>> = Vec::new();
    for r in rem {
        let mut basis = naive.to_vec();
        basis.extend(kept.iter().cloned());
        let red = reduce(f, &basis, &r);
        if !red.is_zero() {
            kept.push(red.make_monic(f));
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::deformations::family::brustle_family;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    #[test]
    fn brustle_limit_adds_one_relation() {
        let fam = brustle_family();
        let zero = BigRational::from_integer(0.into());
        let lim = flat_limit(&fam, Rationals, &zero).unwrap();
        assert_eq!((lim.generic_dim, lim.naive_dim, lim.quotient.dim()), (15, Some(16), 15));
        let r = lim.describe();
        assert_eq!(r.extra_relations, vec!["xi1*alpha".to_string()]);
    }

    #[test]
    fn flat_family_limit_is_the_fibre() {
        let fam = AlgebraFamily::parse(corpus::X2_MINUS_LAMBDA_X).unwrap();
        let f = PrimeField::new(11).unwrap();
        for l in [0u64, 3] {
            let lim = flat_limit(&fam, f, &l).unwrap();
            assert!(lim.extra.is_empty());
            let fibre = fam.evaluate(f, &l).unwrap();
            assert_eq!(lim.quotient.groebner(), fibre.groebner());
        }
    }

    #[test]
    fn divides_out_lambda() {
        let text = "[field]\nQ\n[vertices]\n1\n[arrows]\nx: 1 -> 1\n[relations]\nlambda*x*x\nx*x*x\n[truncation]\n3\n";
        let fam = AlgebraFamily::parse(text).unwrap();
        let zero = BigRational::from_integer(0.into());
        let lim = flat_limit(&fam, Rationals, &zero).unwrap();
        assert_eq!(lim.describe().extra_relations, vec!["x*x".to_string()]);
    }
}
