//! Quivers and paths.
//!
//! Vertices are 0-based internally and printed 1-based. A path stores its
//! arrows in written order: `b1*alpha` is `[b1, alpha]`, i.e. `alpha` is
//! traversed first.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::invalid("a quiver needs at least one vertex"));
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::invalid(format!(
                    "arrow `{}` has an endpoint outside 1..{vertices}",
                    a.name
                )));
            }
            if arrows[..k].iter().any(|b| b.name == a.name) {
                return Err(Error::invalid(format!("duplicate arrow name `{}`", a.name)));
            }
            if a.name.is_empty() || a.name == "lambda" {
                return Err(Error::invalid(format!("reserved arrow name `{}`", a.name)));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Convenience constructor with 1-based vertex numbers.
    pub fn from_list(vertices: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let arrows = arrows
            .iter()
            .map(|&(n, s, t)| {
                if s == 0 || t == 0 {
                    return Err(Error::invalid("vertices are numbered from 1"));
                }
                Ok(Arrow {
                    name: n.to_string(),
                    source: s - 1,
                    target: t - 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// Build a path from written-order arrow indices, checking composability.
    pub fn path(&self, written: &[usize]) -> Option<Path> {
        let (&last, _) = written.split_last()?;
        let mut p = self.arrow_path(last);
        for &a in written[..written.len() - 1].iter().rev() {
            p = self.arrow_path(a).compose(&p)?;
        }
        Some(p)
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.source + 1);
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Every path of length exactly `len`.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut level: Vec<Path> = (0..self.vertices).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &level {
                for a in 0..self.arrows.len() {
                    if let Some(q) = self.arrow_path(a).compose(p) {
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        level.sort();
        level
    }
}

/// A path in a quiver. Ordered degree-lexicographically: shorter paths first,
/// then by written arrow indices, then by endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Same as [`is_trivial`](Self::is_trivial).
    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `self * other`: traverse `other`, then `self`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: other.source,
            target: self.target,
            arrows,
        })
    }

    /// Positions where `sub` occurs as a contiguous subpath.
    pub fn find(&self, sub: &Path) -> Option<usize> {
        if sub.is_trivial() {
            return None;
        }
        let n = sub.len();
        if n > self.len() {
            return None;
        }
        (0..=self.len() - n).find(|&k| self.arrows[k..k + n] == sub.arrows[..])
    }

    /// Split `self = left * sub * right` given an occurrence at `pos`.
    pub fn split_at(&self, pos: usize, sub: &Path) -> (Path, Path) {
        let n = sub.len();
        let left = Path {
            source: sub.target,
            target: self.target,
            arrows: self.arrows[..pos].to_vec(),
        };
        let right = Path {
            source: self.source,
            target: sub.source,
            arrows: self.arrows[pos + n..].to_vec(),
        };
        (left, right)
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source + 1)
        } else {
            let s: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", s.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_to_left() {
        let q = Quiver::from_list(3, &[("alpha", 1, 2), ("beta", 2, 3)]).unwrap();
        let a = q.arrow_path(0);
        let b = q.arrow_path(1);
        let ba = b.compose(&a).unwrap();
        assert_eq!(q.format_path(&ba), "beta*alpha");
        assert_eq!((ba.source, ba.target), (0, 2));
        assert!(a.compose(&b).is_none());
        assert_eq!(q.path(&[1, 0]), Some(ba));
    }

    #[test]
    fn split_recovers_factors() {
        let q = Quiver::from_list(1, &[("x", 1, 1), ("y", 1, 1)]).unwrap();
        let p = q.path(&[0, 1, 1, 0]).unwrap();
        let sub = q.path(&[1, 1]).unwrap();
        let pos = p.find(&sub).unwrap();
        let (l, r) = p.split_at(pos, &sub);
        assert_eq!(l.compose(&sub).unwrap().compose(&r).unwrap(), p);
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::from_list(2, &[("a", 1, 3)]).is_err());
        assert!(Quiver::from_list(2, &[("a", 1, 2), ("a", 2, 1)]).is_err());
    }
}
