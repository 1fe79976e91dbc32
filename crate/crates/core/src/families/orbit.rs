//! The action of G(R•) = ∏ Aut(R_n A) on D(R•, I): (g_n)·(h_n) = (g_{n-1} h_n g_n^{-1}).

use std::collections::HashMap;

use serde::Serialize;

use crate::complexes::BlockMatrix;
use crate::exec::Execution;
use crate::field::{Field, FiniteField};
use crate::linalg::span_dim;

use super::space::{ideal_blocks, DPoint, HomSpace, Ideal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInfo {
    pub group_dim: usize,
    pub affine_stabilizer: usize,
    pub projective_stabilizer: usize,
    /// Dimension of the orbit in P(H).
    pub orbit_dim: usize,
}

/// Images x·h = (x_{n-1} h_n - h_n x_n) of a basis of Lie G, flattened to
/// full algebra coordinates block by block.
fn lie_images<F: Field>(space: &HomSpace<F>, h: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let alg = space.algebra();
    let f = space.field();
    let ranks = space.ranks();
    let c = space.to_complex(h);
    let d = alg.dim();
    // offsets of each differential in the flattened ambient vector
    let mut offsets = HashMap::new();
    let mut len = 0;
    for n in ranks.lo() + 1..=ranks.top() {
        offsets.insert(n, len);
        len += ranks.slots(n - 1).len() * ranks.slots(n).len() * d;
    }
    let at = |n: i64, r: usize, cc: usize| offsets[&n] + (r * ranks.slots(n).len() + cc) * d;
    let mut out = Vec::new();
    for n in ranks.degrees() {
        let sl = ranks.slots(n);
        for (r, &vr) in sl.iter().enumerate() {
            for (cc, &vc) in sl.iter().enumerate() {
                for &b in alg.peirce(vr, vc) {
                    let eb = alg.unit_vec(b);
                    let mut v = vec![f.zero(); len];
                    // -h_n x: column cc of d_n picks up d_n[r'][r]·b
                    if let Some(dn) = c.d(n) {
                        for r2 in 0..dn.rows() {
                            let p = alg.mul_vec(dn.get(r2, r), &eb);
                            let o = at(n, r2, cc);
                            for (k, x) in p.into_iter().enumerate() {
                                v[o + k] = f.sub(&v[o + k], &x);
                            }
                        }
                    }
                    // x h_{n+1}: row r of d_{n+1} picks up b·d_{n+1}[cc][c']
                    if let Some(dn1) = c.d(n + 1) {
                        for c2 in 0..dn1.cols() {
                            let p = alg.mul_vec(&eb, dn1.get(cc, c2));
                            let o = at(n + 1, r, c2);
                            for (k, x) in p.into_iter().enumerate() {
                                v[o + k] = f.add(&v[o + k], &x);
                            }
                        }
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

fn ambient_len<F: Field>(space: &HomSpace<F>) -> usize {
    let r = space.ranks();
    (r.lo() + 1..=r.top())
        .map(|n| r.slots(n - 1).len() * r.slots(n).len() * space.algebra().dim())
        .sum()
}

/// Stabilizer and orbit dimensions from the linearized action. The
/// homothety h ↦ t·h is always in the image of Lie G, so the projective
/// stabilizer is one larger than the affine one.
pub fn orbit_info<F: Field>(space: &HomSpace<F>, h: &DPoint<F::Elem>) -> OrbitInfo {
    let imgs = lie_images(space, &h.coords);
    let g = imgs.len();
    let rank = span_dim(space.field(), &imgs, ambient_len(space));
    OrbitInfo {
        group_dim: g,
        affine_stabilizer: g - rank,
        projective_stabilizer: g - rank + 1,
        orbit_dim: rank.saturating_sub(1),
    }
}

/// Dimension of the projective tangent space of D at h: solutions of the
/// linearized equations modulo the line through h.
pub fn tangent_dim<F: Field>(space: &HomSpace<F>, h: &DPoint<F::Elem>) -> usize {
    let f = space.field();
    let jac = space.jacobian(&h.coords);
    let rank = if jac.rows() == 0 { 0 } else { jac.rank(f) };
    (space.dim() - rank).saturating_sub(1)
}

/// Lower bound for the dimension of G·L, L a linear family through h, in
/// P(H): rank of Lie(G)·h together with the directions of L, minus one.
pub fn sweep_dim<F: Field>(space: &HomSpace<F>, h: &DPoint<F::Elem>, dirs: &[Vec<F::Elem>]) -> usize {
    let mut vecs = lie_images(space, &h.coords);
    for u in dirs {
        let c = space.to_complex(u);
        let mut v = Vec::new();
        for d in c.diffs() {
            for r in 0..d.rows() {
                for cc in 0..d.cols() {
                    v.extend(d.get(r, cc).iter().cloned());
                }
            }
        }
        vecs.push(v);
    }
    span_dim(space.field(), &vecs, ambient_len(space)).saturating_sub(1)
}

/// An element of G(R•) acting in one degree, with its inverse.
struct Generator<E> {
    degree: i64,
    g: BlockMatrix<E>,
    g_inv: BlockMatrix<E>,
}

/// Generators of G(F_q): scalings of one slot by a primitive element and
/// unipotent elements 1 + t·E_rc·y, with y running over bases of the
/// blocks of J, J², … (so every layer of 1 + rad is reached) and over
/// e_v between distinct slots of the same vertex; t runs over an F_p-basis
/// of F_q.
fn generators<F: FiniteField>(space: &HomSpace<F>) -> Vec<Generator<F::Elem>> {
    let alg = space.algebra();
    let f = space.field();
    let w = f.primitive_element();
    let w_inv = f.inv(&w).expect("nonzero");
    let mut steps = vec![f.one()];
    let mut size = f.characteristic();
    while size < f.order() {
        let next = f.mul(steps.last().expect("nonempty"), &w);
        steps.push(next);
        size *= f.characteristic();
    }
    let mut layers: Vec<Vec<Vec<Vec<Vec<F::Elem>>>>> = Vec::new();
    for k in 1..=alg.dim() {
        let blocks = ideal_blocks(alg, Ideal::RadicalPower(k));
        if blocks.iter().flatten().all(|b| b.is_empty()) {
            break;
        }
        layers.push(blocks);
    }
    let mut out = Vec::new();
    for n in space.ranks().degrees() {
        let sl = space.ranks().slots(n);
        let id = BlockMatrix::identity(alg, sl.clone());
        let mut moves: Vec<BlockMatrix<F::Elem>> = Vec::new();
        for (r, &v) in sl.iter().enumerate() {
            if !f.is_one(&w) {
                let e = alg.idempotent(v);
                let (mut g, mut gi) = (id.clone(), id.clone());
                g.get_mut(r, r)[e] = w.clone();
                gi.get_mut(r, r)[e] = w_inv.clone();
                out.push(Generator { degree: n, g, g_inv: gi });
            }
            for (c, &u) in sl.iter().enumerate() {
                let mut ys: Vec<Vec<F::Elem>> = layers.iter().flat_map(|l| l[v][u].iter().cloned()).collect();
                if r != c && u == v {
                    ys.push(alg.unit_vec(alg.idempotent(v)));
                }
                for y in ys {
                    for t in &steps {
                        let mut x = BlockMatrix::zeros(alg, sl.clone(), sl.clone());
                        x.set(r, c, y.iter().map(|a| f.mul(a, t)).collect());
                        moves.push(x);
                    }
                }
            }
        }
        for x in moves {
            let g = id.add(f, &x);
            // (1 + x)^{-1} = Σ (-x)^k for nilpotent x
            let neg = x.scale(f, &f.neg(&f.one()));
            let mut term = id.clone();
            let mut gi = BlockMatrix::zeros(alg, sl.clone(), sl.clone());
            let mut steps_left = alg.dim() * sl.len() + 2;
            while !term.is_zero(f) {
                assert!(steps_left > 0, "radical element is not nilpotent");
                steps_left -= 1;
                gi = gi.add(f, &term);
                term = term.compose(alg, &neg);
            }
            out.push(Generator { degree: n, g, g_inv: gi });
        }
    }
    out
}

fn act<F: Field>(space: &HomSpace<F>, gen: &Generator<F::Elem>, h: &[F::Elem]) -> Option<DPoint<F::Elem>> {
    let alg = space.algebra();
    let mut c = space.to_complex(h);
    if let Some(d) = c.d_mut(gen.degree) {
        *d = d.compose(alg, &gen.g_inv);
    }
    if let Some(d) = c.d_mut(gen.degree + 1) {
        *d = gen.g.compose(alg, d);
    }
    let coords = space.coords_of(c.diffs()).expect("the ideal is two-sided");
    space.normalize(&coords)
}

#[derive(Clone, Debug)]
pub struct Orbit<E> {
    pub representative: DPoint<E>,
    pub size: usize,
    pub info: OrbitInfo,
    /// Indices into the point list.
    pub members: Vec<usize>,
}

/// Partition the points into G(F_q)-orbits by closing under generators.
/// Orbits are listed by their first member.
pub fn orbit_census<F: FiniteField>(
    space: &HomSpace<F>,
    points: &[DPoint<F::Elem>],
    exec: Execution,
) -> Vec<Orbit<F::Elem>> {
    let index: HashMap<&DPoint<F::Elem>, usize> = points.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let gens = generators(space);
    let edges: Vec<Vec<usize>> = exec.map_range(points.len(), |k| {
        gens.iter()
            .filter_map(|g| act(space, g, &points[k].coords))
            .map(|p| *index.get(&p).expect("the action preserves D"))
            .collect()
    });
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, targets) in edges.iter().enumerate() {
        for &b in targets {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for k in 0..points.len() {
        let r = find(&mut parent, k);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(k);
    }
    exec.map(groups, |members| {
        let representative = points[members[0]].clone();
        Orbit {
            info: orbit_info(space, &representative),
            size: members.len(),
            representative,
            members,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::VectorRank;
    use crate::corpus;
    use crate::families::space::Ideal;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn dual_space(ranks: &str) -> HomSpace<PrimeField> {
        let alg = Arc::new(corpus::load(PrimeField::new(3).unwrap(), corpus::DUAL_NUMBERS).unwrap());
        HomSpace::new(alg, VectorRank::parse(ranks, 0).unwrap(), Ideal::Radical).unwrap()
    }

    #[test]
    fn single_point_is_fixed() {
        let s = dual_space("1/1");
        let pts = s.enumerate_points(100, Execution::Sequential).unwrap();
        let info = orbit_info(&s, &pts[0]);
        assert_eq!(info.orbit_dim, 0);
        assert_eq!(info.group_dim, 4);
        assert_eq!(tangent_dim(&s, &pts[0]), 0);
    }

    #[test]
    fn projective_line_census() {
        let s = dual_space("1/1/1");
        let pts = s.enumerate_points(100, Execution::Sequential).unwrap();
        let orbits = orbit_census(&s, &pts, Execution::default());
        let mut sizes: Vec<(usize, usize)> = orbits.iter().map(|o| (o.size, o.info.orbit_dim)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 0), (1, 0), (2, 1)]);
        for p in &pts {
            assert_eq!(tangent_dim(&s, p), 1);
        }
    }
}
