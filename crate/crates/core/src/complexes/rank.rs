use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Multiplicities of the indecomposable projectives e_i A in each degree of
/// a window `[lo, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VectorRank {
    lo: i64,
    ranks: Vec<Vec<usize>>,
}

impl VectorRank {
    /// `ranks[k]` is the tuple in degree `lo + k`.
    pub fn new(lo: i64, ranks: Vec<Vec<usize>>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::invalid("a vector rank needs at least one degree"));
        }
        let s = ranks[0].len();
        if s == 0 || ranks.iter().any(|r| r.len() != s) {
            return Err(Error::shape("rank tuples must all have one entry per vertex"));
        }
        Ok(Self { lo, ranks })
    }

    pub fn zero(lo: i64, top: i64, s: usize) -> Self {
        Self {
            lo,
            ranks: vec![vec![0; s]; (top - lo + 1).max(1) as usize],
        }
    }

    /// Parse `"1,0/0,1"`: tuples from the lowest degree upwards.
    pub fn parse(s: &str, lo: i64) -> Result<Self> {
        let ranks = s
            .split('/')
            .map(|t| {
                t.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::invalid(format!("bad rank entry `{}`", x.trim())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lo, ranks)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn top(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.ranks[0].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.lo..=self.top()
    }

    /// Rank tuple in degree `n`; zero outside the window.
    pub fn at(&self, n: i64) -> Vec<usize> {
        if n < self.lo || n > self.top() {
            vec![0; self.vertex_count()]
        } else {
            self.ranks[(n - self.lo) as usize].clone()
        }
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.ranks
    }

    /// Vertex of every slot in degree `n`: vertices in order, each repeated.
    pub fn slots(&self, n: i64) -> Vec<usize> {
        slots_of(&self.at(n))
    }

    /// |R| = Σ r_ki.
    pub fn total(&self) -> usize {
        self.ranks.iter().flatten().sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self {
            lo: self.lo + k,
            ranks: self.ranks.clone(),
        }
    }

    /// Same ranks on the window `[lo, top]`, padding with zeros.
    pub fn widen(&self, lo: i64, top: i64) -> Self {
        let ranks = (lo..=top).map(|n| self.at(n)).collect();
        Self { lo, ranks }
    }

    pub fn sum(&self, o: &Self) -> Self {
        let lo = self.lo.min(o.lo);
        let top = self.top().max(o.top());
        let ranks = (lo..=top)
            .map(|n| self.at(n).iter().zip(o.at(n)).map(|(a, b)| a + b).collect())
            .collect();
        Self { lo, ranks }
    }
}

pub fn slots_of(tuple: &[usize]) -> Vec<usize> {
    tuple
        .iter()
        .enumerate()
        .flat_map(|(v, &r)| std::iter::repeat_n(v, r))
        .collect()
}

impl fmt::Display for VectorRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ranks
            .iter()
            .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}@{}", parts.join("/"), self.lo)
    }
}
