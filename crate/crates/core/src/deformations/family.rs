use std::path::Path as FsPath;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{AlgebraData, PathPoly, Presentation, Quiver};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{format_rational, parse_rational, Field, FieldSpec};
use crate::poly::{RatFn, RationalFunctions};

/// A one-parameter family of algebras kΓ/I(λ): relations whose coefficients
/// are polynomials in λ, with the truncation bound of the presentation as
/// the finite-dimensionality witness at every fibre.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFamily {
    pres: Presentation,
}

impl AlgebraFamily {
    pub fn new(pres: Presentation) -> Result<Self> {
        for r in &pres.relations {
            if let Some((_, p)) = r.terms.iter().find(|(c, p)| p.is_trivial() && !c.is_zero()) {
                return Err(Error::NonAdmissible {
                    term: pres.quiver.format_path(p),
                    length: 0,
                });
            }
        }
        Ok(Self { pres })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(Presentation::parse(text)?)
    }

    pub fn read(path: &FsPath) -> Result<Self> {
        Self::new(Presentation::read(path)?)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.pres.field
    }

    /// I(λ0) as path polynomials over `f`; relations vanishing at λ0 are
    /// dropped.
    pub fn relations_at<F: Field>(&self, f: &F, l0: &F::Elem) -> Result<Vec<PathPoly<F::Elem>>> {
        let mut out = Vec::new();
        for r in &self.pres.relations {
            let mut p = PathPoly::zero();
            for (c, path) in &r.terms {
                p.add_term(f, path.clone(), c.map_into(f)?.eval(f, l0));
            }
            if let Some((t, _)) = p.terms().find(|(t, _)| t.is_trivial()) {
                return Err(Error::NonAdmissible {
                    term: self.pres.quiver.format_path(t),
                    length: 0,
                });
            }
            if !p.is_zero() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// The relations over k(λ).
    pub fn generic_relations<F: Field>(&self, k: &RationalFunctions<F>) -> Result<Vec<PathPoly<RatFn<F::Elem>>>> {
        let mut out = Vec::new();
        for r in &self.pres.relations {
            let mut p = PathPoly::zero();
            for (c, path) in &r.terms {
                p.add_term(k, path.clone(), k.from_poly(c.map_into(k.base())?));
            }
            if !p.is_zero() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// The fibre A(λ0). Relations may have linear terms away from the
    /// special points, so fibres need not be basic algebras with J the arrow
    /// ideal (x² − λx is k × k for λ ≠ 0).
    pub fn evaluate<F: Field>(&self, f: F, l0: &F::Elem) -> Result<AlgebraData<F>> {
        let rels = self.relations_at(&f, l0)?;
        AlgebraData::from_relations(f, self.pres.quiver.clone(), rels, self.pres.bound)
    }

    /// The algebra over k(λ).
    pub fn generic<F: Field>(&self, f: F) -> Result<AlgebraData<RationalFunctions<F>>> {
        let k = RationalFunctions::new(f);
        let rels = self.generic_relations(&k)?;
        AlgebraData::from_relations(k, self.pres.quiver.clone(), rels, self.pres.bound)
    }

    pub fn generic_dim<F: Field>(&self, f: F) -> Result<usize> {
        Ok(self.generic(f)?.dim())
    }
}

/// β1α = 0, γ1β1 = λξ1, γ2β2 = λξ2 on the six-vertex quiver with arrows
/// α, ξ1, β1, γ1, γ2, β2, ξ2.
pub fn brustle_family() -> AlgebraFamily {
    AlgebraFamily::parse(corpus::BRUSTLE_FAMILY).expect("bundled family parses")
}

/// Evaluation points for λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grid {
    /// Every element of a finite field.
    All,
    Points(Vec<BigRational>),
}

impl Grid {
    /// `all`, an integer range `a..b` (inclusive) or a comma list of
    /// rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(Grid::All);
        }
        let bad = || Error::invalid(format!("cannot read grid `{s}`"));
        if let Some((a, b)) = s.split_once("..") {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            return Ok(Grid::Points((a..=b).map(|x| BigRational::from_integer(BigInt::from(x))).collect()));
        }
        let pts = s
            .split(',')
            .map(|t| parse_rational(t.trim()).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        if pts.is_empty() {
            return Err(bad());
        }
        Ok(Grid::Points(pts))
    }

    /// Labelled field elements, in grid order. Repeated points are kept once.
    pub fn points<F: Field>(&self, f: &F) -> Result<Vec<(String, F::Elem)>> {
        let raw: Vec<F::Elem> = match self {
            Grid::All => f
                .enumerate()
                .ok_or_else(|| Error::invalid("grid `all` needs a finite field"))?,
            Grid::Points(v) => v.iter().map(|q| f.from_rational(q)).collect::<Result<_>>()?,
        };
        let mut seen = std::collections::HashSet::new();
        Ok(raw
            .into_iter()
            .filter(|x| seen.insert(x.clone()))
            .map(|x| (f.format(&x), x))
            .collect())
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Grid::All => f.write_str("all"),
            Grid::Points(v) => {
                let s: Vec<String> = v.iter().map(format_rational).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibreDim {
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Fibre dimensions on a grid against the dimension over k(λ). Flatness here
/// is evidence on the grid, not a proof over the whole line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub field: String,
    pub generic_dim: usize,
    pub fibres: Vec<FibreDim>,
    /// Grid points whose fibre dimension differs from the generic one.
    pub jumps: Vec<String>,
    pub flat_on_grid: bool,
}

pub fn dim_scan<F: Field>(fam: &AlgebraFamily, f: &F, grid: &Grid, exec: Execution) -> Result<FlatnessReport> {
    let generic_dim = fam.generic_dim(f.clone())?;
    let pts = grid.points(f)?;
    let fibres = exec.map(pts, |(lambda, x)| match fam.evaluate(f.clone(), &x) {
        Ok(a) => FibreDim {
            lambda,
            dim: Some(a.dim()),
            error: None,
        },
        Err(e) => FibreDim {
            lambda,
            dim: None,
            error: Some(e.to_string()),
        },
    });
    let jumps: Vec<String> = fibres
        .iter()
        .filter(|d| d.dim != Some(generic_dim))
        .map(|d| d.lambda.clone())
        .collect();
    Ok(FlatnessReport {
        field: f.name(),
        generic_dim,
        flat_on_grid: jumps.is_empty(),
        fibres,
        jumps,
    })
}

pub fn is_flat_on<F: Field>(fam: &AlgebraFamily, f: &F, grid: &Grid) -> Result<bool> {
    Ok(dim_scan(fam, f, grid, Execution::default())?.flat_on_grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn grid_forms() {
        assert_eq!(Grid::parse("all").unwrap(), Grid::All);
        let g = Grid::parse("-1..1").unwrap();
        assert_eq!(g.points(&Rationals).unwrap().len(), 3);
        let g = Grid::parse("0, 1/2, 0").unwrap();
        assert_eq!(g.points(&Rationals).unwrap().len(), 2);
        assert!(Grid::parse("3..1").is_err());
        assert!(Grid::All.points(&Rationals).is_err());
        assert_eq!(Grid::All.points(&PrimeField::new(5).unwrap()).unwrap().len(), 5);
    }

    #[test]
    fn trivial_terms_are_rejected() {
        let mut pres = corpus::presentation(corpus::X2_MINUS_LAMBDA_X);
        let one = crate::poly::Poly::constant(&Rationals, BigRational::from_integer(1.into()));
        pres.relations[0].terms.push((one, crate::algebra::Path::trivial(0)));
        assert!(matches!(AlgebraFamily::new(pres), Err(Error::NonAdmissible { length: 0, .. })));
    }
}
