//! Text format for complexes.
//!
//! ```text
//! [algebra]
//! dual_numbers.alg
//! [ranks]
//! 0: 1
//! 1: 1
//! [entries]
//! # degree row col path coefficient
//! 1 1 1 x 1
//! ```
//!
//! Degrees must be consecutive; the window is `[first, last]`. An entry
//! `n r c p a` adds `a·p` to the (row r, column c) block of d_n, with rows
//! counting slots of degree n-1 and columns slots of degree n, both 1-based
//! and ordered by vertex. The algebra path is relative to the complex file.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};

use super::block::BlockMatrix;
use super::complex::ProjComplex;
use super::rank::VectorRank;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEntry {
    pub degree: i64,
    pub row: usize,
    pub col: usize,
    pub path: String,
    pub coeff: BigRational,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFile {
    pub algebra: String,
    pub ranks: VectorRank,
    pub entries: Vec<ComplexEntry>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut section = String::new();
        let mut algebra = None;
        let mut ranks: Vec<(i64, Vec<usize>)> = Vec::new();
        let mut entries = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("");
            let t = body.trim();
            if t.is_empty() {
                continue;
            }
            let col = body.find(t).unwrap_or(0) + 1;
            if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                section = name.trim().to_string();
                if !matches!(section.as_str(), "algebra" | "ranks" | "entries") {
                    return Err(parse_err(line, col, format!("unknown section `{section}`")));
                }
                continue;
            }
            match section.as_str() {
                "algebra" => algebra = Some(t.to_string()),
                "ranks" => {
                    let (d, rest) = t
                        .split_once(':')
                        .ok_or_else(|| parse_err(line, col, "expected `degree: r1 r2 ...`"))?;
                    let d: i64 = d.trim().parse().map_err(|_| parse_err(line, col, "bad degree"))?;
                    let tuple = rest
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|x| !x.is_empty())
                        .map(|x| x.parse::<usize>().map_err(|_| parse_err(line, col, format!("bad rank `{x}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    ranks.push((d, tuple));
                }
                "entries" => {
                    let w: Vec<&str> = t.split_whitespace().collect();
                    if w.len() != 5 {
                        return Err(parse_err(line, col, "expected `degree row col path coefficient`"));
                    }
                    let num = |s: &str, what: &str| {
                        s.parse::<i64>().map_err(|_| parse_err(line, col, format!("bad {what} `{s}`")))
                    };
                    let degree = num(w[0], "degree")?;
                    let row = num(w[1], "row")?;
                    let c = num(w[2], "column")?;
                    if row < 1 || c < 1 {
                        return Err(parse_err(line, col, "slots are numbered from 1"));
                    }
                    let coeff =
                        parse_rational(w[4]).ok_or_else(|| parse_err(line, col, format!("bad coefficient `{}`", w[4])))?;
                    entries.push(ComplexEntry {
                        degree,
                        row: row as usize - 1,
                        col: c as usize - 1,
                        path: w[3].to_string(),
                        coeff,
                        line,
                    });
                }
                _ => return Err(parse_err(line, col, "content outside a section")),
            }
        }
        let algebra = algebra.ok_or_else(|| parse_err(0, 0, "missing [algebra] section"))?;
        if ranks.is_empty() {
            return Err(parse_err(0, 0, "missing [ranks] section"));
        }
        let lo = ranks[0].0;
        for (k, (d, _)) in ranks.iter().enumerate() {
            if *d != lo + k as i64 {
                return Err(parse_err(0, 0, "rank degrees must be consecutive and increasing"));
            }
        }
        let ranks = VectorRank::new(lo, ranks.into_iter().map(|(_, t)| t).collect())?;
        Ok(Self {
            algebra,
            ranks,
            entries,
        })
    }

    pub fn build<F: Field>(&self, alg: Arc<AlgebraData<F>>) -> Result<ProjComplex<F>> {
        let f = alg.field().clone();
        let mut diffs: Vec<BlockMatrix<F::Elem>> = (self.ranks.lo() + 1..=self.ranks.top())
            .map(|n| BlockMatrix::zeros(&alg, self.ranks.slots(n - 1), self.ranks.slots(n)))
            .collect();
        for e in &self.entries {
            let bad = |m: String| parse_err(e.line, 1, m);
            if e.degree <= self.ranks.lo() || e.degree > self.ranks.top() {
                return Err(bad(format!("d_{} lies outside the window", e.degree)));
            }
            let d = &mut diffs[(e.degree - self.ranks.lo() - 1) as usize];
            if e.row >= d.rows() || e.col >= d.cols() {
                return Err(bad(format!("slot ({}, {}) is out of range", e.row + 1, e.col + 1)));
            }
            let p = alg.parse_path(&e.path).map_err(|err| bad(err.to_string()))?;
            let k = alg
                .index_of(&p)
                .ok_or_else(|| bad(format!("`{}` is not a basis path", e.path)))?;
            let a = f.from_rational(&e.coeff)?;
            let slot = d.get_mut(e.row, e.col);
            slot[k] = f.add(&slot[k], &a);
        }
        ProjComplex::new(alg, self.ranks.clone(), diffs)
    }
}

pub fn read_complex_file(path: &std::path::Path) -> Result<ComplexFile> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    ComplexFile::parse(&text)
}

/// Serialize a complex; coefficients are written as field representatives.
pub fn write_complex<F: Field>(c: &ProjComplex<F>, algebra: &str) -> String {
    let alg = c.algebra();
    let f = c.field();
    let mut out = format!("[algebra]\n{algebra}\n[ranks]\n");
    for n in c.ranks().degrees() {
        let t: Vec<String> = c.ranks().at(n).iter().map(|r| r.to_string()).collect();
        out.push_str(&format!("{n}: {}\n", t.join(" ")));
    }
    out.push_str("[entries]\n");
    for n in c.lo() + 1..=c.top() {
        let d = c.d(n).expect("inside window");
        for r in 0..d.rows() {
            for cc in 0..d.cols() {
                for (k, x) in d.get(r, cc).iter().enumerate() {
                    if !f.is_zero(x) {
                        out.push_str(&format!("{n} {} {} {} {}\n", r + 1, cc + 1, alg.label(k), f.format(x)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::PrimeField;

    #[test]
    fn round_trip() {
        let alg = Arc::new(corpus::load(PrimeField::new(5).unwrap(), corpus::CUBIC).unwrap());
        let text = "[algebra]\ncubic.alg\n[ranks]\n0: 1\n1: 1\n[entries]\n1 1 1 x*x 3\n1 1 1 x -1\n";
        let c = ComplexFile::parse(text).unwrap().build(alg.clone()).unwrap();
        let again = ComplexFile::parse(&write_complex(&c, "cubic.alg")).unwrap().build(alg).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn reports_bad_slots() {
        let alg = Arc::new(corpus::load(PrimeField::new(5).unwrap(), corpus::CUBIC).unwrap());
        let text = "[algebra]\ncubic.alg\n[ranks]\n0: 1\n1: 1\n[entries]\n1 2 1 x 1\n";
        let err = ComplexFile::parse(text).unwrap().build(alg).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 7, .. }));
    }
}
