use num_rational::BigRational;
use serde::Serialize;

use crate::error::Result;
use crate::families::{estimate_finite, estimate_local, free_ranks, Ideal, ParEstimate, ParMode, ParOptions};
use crate::field::{format_rational, ExtensionField, Field, FieldSpec, PrimeField, Rationals};

use super::family::{dim_scan, AlgebraFamily, Grid};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParScanRow {
    pub lambda: String,
    pub algebra_dim: usize,
    pub estimate: ParEstimate,
}

/// par(b·(1, …, 1), A(λ)) across a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParScan {
    pub field: String,
    pub free_ranks: Vec<usize>,
    pub mode: ParMode,
    pub generic_dim: usize,
    pub flat_on_grid: bool,
    pub special: String,
    pub rows: Vec<ParScanRow>,
    /// For flat families: the special point attains the maximum over the
    /// grid. Compared on lower bounds outside exact mode. Not asserted for
    /// families that are not flat on the grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semicontinuity: Option<bool>,
}

fn scan_with<F: Field>(
    fam: &AlgebraFamily,
    f: F,
    grid: &Grid,
    estimate: impl Fn(&F::Elem) -> Result<(usize, ParEstimate)> + Send + Sync,
    opts: &ParOptions,
) -> Result<(Vec<ParScanRow>, usize, bool)> {
    let flat = dim_scan(fam, &f, grid, opts.exec)?;
    let pts = grid.points(&f)?;
    let rows = opts
        .exec
        .map(pts, |(lambda, x)| estimate(&x).map(|(d, e)| (lambda, d, e)))
        .into_iter()
        .map(|r| {
            r.map(|(lambda, algebra_dim, estimate)| ParScanRow {
                lambda,
                algebra_dim,
                estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, flat.generic_dim, flat.flat_on_grid))
}

/// Scan par over `grid` for the free ranks b·(1, …, 1) with I = J. The
/// special point is usually 0.
pub fn par_scan(
    fam: &AlgebraFamily,
    field: FieldSpec,
    b: &[usize],
    grid: &Grid,
    special: &BigRational,
    opts: &ParOptions,
) -> Result<ParScan> {
    let ranks = free_ranks(b, fam.quiver().vertex_count(), 0)?;
    let ideal = Ideal::Radical;
    let (rows, generic_dim, flat, special_label, name) = match field {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            let label = f.format(&f.from_rational(special)?);
            let ext = (opts.mode == ParMode::ExactFq && opts.extension)
                .then(|| ExtensionField::new(p, 2))
                .transpose()?;
            let est = |x: &u64| {
                let alg = fam.evaluate(f, x)?;
                let d = alg.dim();
                let e = ext
                    .as_ref()
                    .map(|e| fam.evaluate(e.clone(), &e.from_i64(*x as i64)))
                    .transpose()?;
                Ok((d, estimate_finite(alg, e, &ranks, ideal, opts)?))
            };
            let (rows, g, flat) = scan_with(fam, f, grid, est, opts)?;
            (rows, g, flat, label, f.name())
        }
        FieldSpec::Rationals => {
            let est = |x: &BigRational| {
                let alg = fam.evaluate(Rationals, x)?;
                let d = alg.dim();
                Ok((d, estimate_local(alg, &ranks, ideal, opts)?))
            };
            let (rows, g, flat) = scan_with(fam, Rationals, grid, est, opts)?;
            (rows, g, flat, format_rational(special), Rationals.name())
        }
    };
    let semicontinuity = flat.then(|| {
        let value = |r: &ParScanRow| r.estimate.lo;
        match rows.iter().find(|r| r.lambda == special_label) {
            Some(s) => rows.iter().all(|r| value(r) <= value(s)),
            None => false,
        }
    });
    Ok(ParScan {
        field: name,
        free_ranks: b.to_vec(),
        mode: opts.mode,
        generic_dim,
        flat_on_grid: flat,
        special: special_label,
        rows,
        semicontinuity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn flat_family_scan_is_zero() {
        let fam = AlgebraFamily::parse(corpus::X2_MINUS_LAMBDA_X).unwrap();
        let zero = BigRational::from_integer(0.into());
        for b in [vec![1, 1], vec![1, 1, 1]] {
            let s = par_scan(&fam, FieldSpec::Prime(11), &b, &Grid::All, &zero, &ParOptions::default()).unwrap();
            assert_eq!(s.rows.len(), 11);
            assert!(s.flat_on_grid);
            assert_eq!(s.semicontinuity, Some(true));
            assert!(s.rows.iter().all(|r| r.estimate.value() == Some(0)));
            assert!(s.rows.iter().skip(1).all(|r| r.estimate.semisimple));
        }
    }
}
