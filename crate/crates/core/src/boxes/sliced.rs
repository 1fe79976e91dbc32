use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::field::Field;

/// An object (i, n) of the box: vertex i in degree n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoxObject {
    pub vertex: usize,
    pub degree: i64,
}

/// The arrow α*: (i, n) → (j, n-1) dual to a radical basis element α ∈ J_ji.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxArrow {
    pub label: String,
    /// Radical basis index of α.
    pub dual_of: usize,
    pub source: BoxObject,
    pub target: BoxObject,
}

/// Σ c · (β* after γ*) over the terms of ν(α*), a relation from (i, n+1)
/// to (j, n-1). Arrow indices refer to [`SlicedBox::arrows`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxRelation<E> {
    pub dual_of: usize,
    pub source: BoxObject,
    pub target: BoxObject,
    /// (first arrow γ*, second arrow β*, coefficient)
    pub terms: Vec<(usize, usize, E)>,
}

/// The sliced box of the derived category on a degree window: objects are
/// sliced by degree, arrows lower the degree by one and the relations are
/// the images of ν.
#[derive(Clone, Debug)]
pub struct SlicedBox<F: Field> {
    alg: Arc<AlgebraData<F>>,
    lo: i64,
    top: i64,
    objects: Vec<BoxObject>,
    arrows: Vec<BoxArrow>,
    relations: Vec<BoxRelation<F::Elem>>,
    arrow_index: HashMap<(i64, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxCensus {
    pub objects: usize,
    pub arrows: usize,
    pub relations: usize,
}

impl<F: Field> SlicedBox<F> {
    pub fn build(alg: Arc<AlgebraData<F>>, lo: i64, top: i64) -> Result<Self> {
        if top < lo {
            return Err(Error::invalid(format!("empty window [{lo}, {top}]")));
        }
        let s = alg.vertex_count();
        let objects: Vec<BoxObject> = (lo..=top)
            .flat_map(|degree| (0..s).map(move |vertex| BoxObject { vertex, degree }))
            .collect();
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        for n in lo + 1..=top {
            for i in 0..s {
                for j in 0..s {
                    for &a in alg.radical(j, i) {
                        arrow_index.insert((n, a), arrows.len());
                        arrows.push(BoxArrow {
                            label: format!("{}*@{n}", alg.label(a)),
                            dual_of: a,
                            source: BoxObject { vertex: i, degree: n },
                            target: BoxObject {
                                vertex: j,
                                degree: n - 1,
                            },
                        });
                    }
                }
            }
        }
        let mut relations = Vec::new();
        for n in lo + 1..top {
            for i in 0..s {
                for j in 0..s {
                    for &a in alg.radical(j, i) {
                        let nu = alg.nu(a);
                        if nu.is_empty() {
                            continue;
                        }
                        let terms = nu
                            .iter()
                            .map(|t| (arrow_index[&(n + 1, t.gamma)], arrow_index[&(n, t.beta)], t.coeff.clone()))
                            .collect();
                        relations.push(BoxRelation {
                            dual_of: a,
                            source: BoxObject { vertex: i, degree: n + 1 },
                            target: BoxObject {
                                vertex: j,
                                degree: n - 1,
                            },
                            terms,
                        });
                    }
                }
            }
        }
        Ok(Self {
            alg,
            lo,
            top,
            objects,
            arrows,
            relations,
            arrow_index,
        })
    }

    pub fn algebra(&self) -> &Arc<AlgebraData<F>> {
        &self.alg
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.top)
    }

    pub fn objects(&self) -> &[BoxObject] {
        &self.objects
    }

    pub fn arrows(&self) -> &[BoxArrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[BoxRelation<F::Elem>] {
        &self.relations
    }

    /// The arrow dual to radical basis element `a` leaving degree `n`.
    pub fn arrow(&self, n: i64, a: usize) -> Option<usize> {
        self.arrow_index.get(&(n, a)).copied()
    }

    pub fn census(&self) -> BoxCensus {
        BoxCensus {
            objects: self.objects.len(),
            arrows: self.arrows.len(),
            relations: self.relations.len(),
        }
    }

    /// Objects, arrows and relation coefficients with 1-based vertices.
    pub fn describe(&self) -> BoxDescription {
        let f = self.alg.field();
        let obj = |o: &BoxObject| (o.vertex + 1, o.degree);
        BoxDescription {
            window: (self.lo, self.top),
            objects: self.objects.iter().map(obj).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDescription {
                    label: a.label.clone(),
                    source: obj(&a.source),
                    target: obj(&a.target),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationDescription {
                    dual_of: format!("{}*", self.alg.label(r.dual_of)),
                    source: obj(&r.source),
                    target: obj(&r.target),
                    terms: r
                        .terms
                        .iter()
                        .map(|(g, b, c)| (self.arrows[*g].label.clone(), self.arrows[*b].label.clone(), f.format(c)))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowDescription {
    pub label: String,
    pub source: (usize, i64),
    pub target: (usize, i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationDescription {
    pub dual_of: String,
    pub source: (usize, i64),
    pub target: (usize, i64),
    /// (first arrow, second arrow, coefficient)
    pub terms: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxDescription {
    pub window: (i64, i64),
    pub objects: Vec<(usize, i64)>,
    pub arrows: Vec<ArrowDescription>,
    pub relations: Vec<RelationDescription>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Rationals;

    fn boxed(text: &str, lo: i64, top: i64) -> SlicedBox<Rationals> {
        SlicedBox::build(Arc::new(corpus::load(Rationals, text).unwrap()), lo, top).unwrap()
    }

    #[test]
    fn censuses() {
        let c = boxed(corpus::DUAL_NUMBERS, 0, 2).census();
        assert_eq!((c.objects, c.arrows, c.relations), (3, 2, 0));
        let c = boxed(corpus::A2, 0, 2).census();
        assert_eq!((c.objects, c.arrows, c.relations), (6, 2, 0));
        let c = boxed(corpus::CUBIC, 0, 2).census();
        // x and x² dual arrows in two degrees; ν(x²*) = x*⊗x* once
        assert_eq!((c.objects, c.arrows, c.relations), (3, 4, 1));
    }

    #[test]
    fn cubic_relation_is_x_after_x() {
        let b = boxed(corpus::CUBIC, 0, 2);
        let r = &b.relations()[0];
        assert_eq!(r.terms.len(), 1);
        let (g, be, _) = &r.terms[0];
        assert_eq!(b.arrows()[*g].label, "x*@2");
        assert_eq!(b.arrows()[*be].label, "x*@1");
    }

    #[test]
    fn empty_window_is_rejected() {
        let alg = Arc::new(corpus::load(Rationals, corpus::A2).unwrap());
        assert!(SlicedBox::build(alg, 1, 0).is_err());
    }
}
