use serde::Serialize;

use crate::field::Field;

use super::block::BlockMatrix;
use super::complex::ProjComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDegree {
    pub degree: i64,
    /// dim H_n e_i for each vertex i.
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub degrees: Vec<HomologyDegree>,
}

impl HomologyReport {
    pub fn at(&self, n: i64) -> Vec<usize> {
        self.degrees
            .iter()
            .find(|d| d.degree == n)
            .map(|d| d.dims.clone())
            .unwrap_or_default()
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().flat_map(|d| &d.dims).sum()
    }

    /// Nonzero degrees only, so reports over different windows compare equal.
    pub fn normalized(&self) -> Vec<(i64, Vec<usize>)> {
        self.degrees
            .iter()
            .filter(|d| d.dims.iter().any(|&x| x > 0))
            .map(|d| (d.degree, d.dims.clone()))
            .collect()
    }
}

/// H_n = Ker d_n / Im d_{n+1}, split by the right idempotents e_i.
pub fn homology<F: Field>(c: &ProjComplex<F>) -> HomologyReport {
    let alg = c.algebra();
    let f = c.field();
    let s = alg.vertex_count();
    let rank_of = |n: i64, u: usize| -> usize {
        match c.d(n) {
            Some(d) => d.linear_map(alg, u).rank(f),
            None => 0,
        }
    };
    let degrees = c
        .ranks()
        .degrees()
        .map(|n| {
            let slots = c.ranks().slots(n);
            let dims = (0..s)
                .map(|u| {
                    let total = BlockMatrix::<F::Elem>::module_basis(alg, &slots, u).len();
                    total - rank_of(n, u) - rank_of(n + 1, u)
                })
                .collect();
            HomologyDegree { degree: n, dims }
        })
        .collect();
    HomologyReport { degrees }
}
