use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::sliced::SlicedBox;

/// A generator of a normal box: a solid arrow together with whether its
/// differential vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxGenerator {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub minimal: bool,
}

/// Hand-written or externally reduced box data: vertices, generators and,
/// for each relation, the names of the generators it involves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalBoxPresentation {
    pub vertices: usize,
    pub generators: Vec<BoxGenerator>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// A vertex a with a minimal loop α and a minimal arrow β: a → b, b ≠ a,
/// with β in no relation. Such a sub-box is wild.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildCertificate {
    pub vertex: usize,
    pub loop_name: String,
    pub arrow_name: String,
}

impl NormalBoxPresentation {
    pub fn validate(&self) -> Result<()> {
        let mut names = std::collections::HashSet::new();
        for g in &self.generators {
            if g.source >= self.vertices || g.target >= self.vertices {
                return Err(Error::invalid(format!("generator {} has an endpoint outside the box", g.name)));
            }
            if !names.insert(g.name.as_str()) {
                return Err(Error::invalid(format!("generator name {} is repeated", g.name)));
            }
        }
        for r in &self.relations {
            if let Some(n) = r.iter().find(|n| !names.contains(n.as_str())) {
                return Err(Error::invalid(format!("relation mentions unknown generator {n}")));
            }
        }
        Ok(())
    }

    /// Arrows of a sliced box as generators; their minimality flags are set
    /// and none of them is a loop.
    pub fn from_sliced<F: Field>(b: &SlicedBox<F>) -> Self {
        let s = b.algebra().vertex_count();
        let (lo, _) = b.window();
        let index = |v: usize, n: i64| (n - lo) as usize * s + v;
        let generators = b
            .arrows()
            .iter()
            .map(|a| BoxGenerator {
                name: a.label.clone(),
                source: index(a.source.vertex, a.source.degree),
                target: index(a.target.vertex, a.target.degree),
                minimal: true,
            })
            .collect();
        let relations = b
            .relations()
            .iter()
            .map(|r| {
                let mut names: Vec<String> = r
                    .terms
                    .iter()
                    .flat_map(|(g, be, _)| [b.arrows()[*g].label.clone(), b.arrows()[*be].label.clone()])
                    .collect();
                names.sort();
                names.dedup();
                names
            })
            .collect();
        Self {
            vertices: b.objects().len(),
            generators,
            relations,
        }
    }
}

/// First occurrence of the wild pattern, if any. `None` says nothing about
/// tameness.
pub fn wild_pattern_detect(p: &NormalBoxPresentation) -> Result<Option<WildCertificate>> {
    p.validate()?;
    let related = |name: &str| p.relations.iter().any(|r| r.iter().any(|n| n == name));
    for a in 0..p.vertices {
        let Some(lp) = p.generators.iter().find(|g| g.minimal && g.source == a && g.target == a) else {
            continue;
        };
        if let Some(be) = p
            .generators
            .iter()
            .find(|g| g.minimal && g.source == a && g.target != a && !related(&g.name))
        {
            return Ok(Some(WildCertificate {
                vertex: a,
                loop_name: lp.name.clone(),
                arrow_name: be.name.clone(),
            }));
        }
    }
    Ok(None)
}
