//! A 63-point set such that every two-coloring leaves a translate of a given
//! triangle holding exactly 4 points, all of one color.
//!
//! Vertices: centers `p_0, p_1, p_2`; for each family `i`, a cluster
//! `q_{i,0..4}` and sixteen points `r_{i,j,k}`. Family `i` serves the two
//! centers other than `p_i`. Edges: the `q` cluster of each family, each
//! `r_{i,j,·}` cluster, and `{p_a, p_b, q_{i,j}, r_{i,j,k}}`.
//!
//! Some pair of centers shares a color; the family serving it has a `q` of
//! that color (its cluster is an edge), that `q` has an `r` of that color,
//! and the four together form a monochromatic edge.
//!
//! The geometry is built in barycentric-like coordinates `(u, v, w)` with
//! `u + v + w = 0`, where translates of the triangle `{u > 0, v > 0, w > -1}`
//! are the sets `{u > c_u, v > c_v, w > c_w}` with `c_u + c_v + c_w = -1`.
//! Clusters sit at two nested scales `δ1` and `δ2 = δ1²` near boundary
//! features of hand-placed anchor translates, and a third scale `δ2²`
//! separates tied coordinates.

use serde::{Deserialize, Serialize};

use crate::coord::{Coord, Point2};
use crate::error::{Error, Result};
use crate::hypergraph::{search_proper_two_coloring, Hypergraph, SearchStats};
use crate::reductions::{planar_points_to_octant_instance, translate_to_octant_apex, MidriffWitness};
use crate::triangle::{enumerate_translate_classes, TriangleShape, Vec2};

pub const VERTICES: usize = 63;

fn q_id(i: usize, j: usize) -> usize {
    3 + 20 * i + j
}

fn r_id(i: usize, j: usize, k: usize) -> usize {
    3 + 20 * i + 4 + 4 * j + k
}

/// `p0`, `q{i}{j}`, `r{i}{j}{k}` for every vertex id.
pub fn vertex_names() -> Vec<String> {
    let mut names: Vec<String> = (0..3).map(|c| format!("p{c}")).collect();
    for i in 0..3 {
        names.extend((0..4).map(|j| format!("q{i}{j}")));
        for j in 0..4 {
            names.extend((0..4).map(|k| format!("r{i}{j}{k}")));
        }
    }
    names
}

/// Intended edges, family by family: the `q` cluster, then for each `j` the
/// `r_{i,j,·}` cluster followed by its four mixed edges.
fn intended_edges() -> Vec<Vec<usize>> {
    let mut edges = Vec::with_capacity(VERTICES);
    for i in 0..3 {
        let pair: Vec<usize> = (0..3).filter(|&c| c != i).collect();
        edges.push((0..4).map(|j| q_id(i, j)).collect());
        for j in 0..4 {
            edges.push((0..4).map(|k| r_id(i, j, k)).collect());
            for k in 0..4 {
                let mut e = vec![pair[0], pair[1], q_id(i, j), r_id(i, j, k)];
                e.sort_unstable();
                edges.push(e);
            }
        }
    }
    edges
}

/// The 63-vertex, 63-edge 4-uniform hypergraph with no two-coloring that
/// makes every edge bichromatic.
pub fn build_abstract_hypergraph() -> Hypergraph {
    Hypergraph::new(VERTICES, intended_edges()).expect("ids in range")
}

/// Where one family's clusters are anchored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAnchor {
    /// Frame of the translate holding the two served centers; sums to -1.
    pub anchor: [Coord; 3],
    /// Offset of the translate cutting out the `q` cluster, in `(0, 1)`.
    pub t: Coord,
    /// Axis permutation from the family's local frame to `(u, v, w)`.
    pub perm: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub triangle: TriangleShape,
    pub delta1: Coord,
    pub delta2: Coord,
    pub delta3: Coord,
    /// `(u, v)` of each center.
    pub centers: [[Coord; 2]; 3],
    pub families: [FamilyAnchor; 3],
}

impl ConstructionSpec {
    /// The shipped placement, for any triangle.
    pub fn standard(triangle: TriangleShape) -> Self {
        let r = Coord::ratio;
        let d1 = r(1, 2000);
        let d2 = &d1 * &d1;
        let d3 = &d2 * &d2;
        let fam = |a: i64, ad: i64, b: i64, bd: i64, t: Coord, perm: [usize; 3]| {
            let (a, b) = (r(a, ad), r(b, bd));
            let c = &(&Coord::int(-1) - &a) - &b;
            FamilyAnchor { anchor: [a, b, c], t, perm }
        };
        ConstructionSpec {
            triangle,
            delta1: d1,
            delta2: d2,
            delta3: d3,
            centers: [[r(-7, 25), r(19, 100)], [r(1, 20), r(-7, 50)], [r(3, 50), r(19, 100)]],
            families: [
                fam(-3, 25, -31, 100, r(9, 10), [1, 2, 0]),
                fam(-31, 50, 3, 100, r(9, 10), [0, 1, 2]),
                fam(-9, 20, -12, 25, r(77, 100), [2, 0, 1]),
            ],
        }
    }

    /// `0 < δ3 ≤ δ2² `, `0 < δ2 ≤ δ1²`, `0 < δ1 ≤ 1/2000`, and each `t` in
    /// `(0, 1)`.
    pub fn check_scales(&self) -> Result<()> {
        let ok = self.delta3.is_positive()
            && self.delta3 <= &self.delta2 * &self.delta2
            && self.delta2.is_positive()
            && self.delta2 <= &self.delta1 * &self.delta1
            && self.delta1.is_positive()
            && self.delta1 <= Coord::ratio(1, 2000)
            && self.families.iter().all(|f| f.t.is_positive() && f.t < Coord::one());
        if ok {
            Ok(())
        } else {
            Err(Error::not_applicable("realize", "scale inequalities do not hold"))
        }
    }
}

type Frame = [Coord; 3];

fn permute(p: &Frame, perm: &[usize; 3]) -> Frame {
    [p[perm[0]].clone(), p[perm[1]].clone(), p[perm[2]].clone()]
}

fn inverse(perm: &[usize; 3]) -> [usize; 3] {
    let mut inv = [0; 3];
    for (i, &x) in perm.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn add(a: &Frame, b: &Frame) -> Frame {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// A zero-sum offset from its first two components.
fn offset(u: Coord, v: Coord) -> Frame {
    let w = -&(&u + &v);
    [u, v, w]
}

/// Points in `(u, v, w)` and translate frames for the intended edges, in the
/// order of [`build_abstract_hypergraph`].
fn frame_layout(spec: &ConstructionSpec) -> (Vec<Frame>, Vec<Frame>) {
    let (d1, d2) = (&spec.delta1, &spec.delta2);
    let int = Coord::int;
    let half = Coord::ratio(1, 2);
    let mut pts: Vec<Frame> = spec.centers.iter().map(|c| offset(c[0].clone(), c[1].clone())).collect();
    let mut frames = Vec::with_capacity(VERTICES);
    for f in &spec.families {
        let act = |p: Frame| permute(&p, &f.perm);
        let [al, be, ga] = permute(&f.anchor, &inverse(&f.perm));
        let q_base = [al.clone(), be.clone(), -&(&al + &be)];
        let r_base = [al.clone(), -&(&al + &ga), ga.clone()];
        for j in 1..=4 {
            let du = d1 * &int(3 * j);
            let dv = d1 * &(&Coord::ratio(-19, 2) - &int(2 * j));
            pts.push(act(add(&q_base, &offset(du, dv))));
        }
        for j in 1..=4 {
            let (uj, wj) = (int(3 * j), int(10 - j));
            for k in 1..=4 {
                let (a, b) = (int(k - 5), int(5 - k));
                let du = &(d1 * &uj) + &(d2 * &a);
                let dw = &(d1 * &wj) + &(d2 * &b);
                let dv = -&(&du + &dw);
                pts.push(act(add(&r_base, &[du, dv, dw])));
            }
        }
        let one = Coord::one();
        frames.push(act([&al - &f.t, &(&be - &one) + &f.t, &ga + &one]));
        let c_base = [al.clone(), -&(&al + &ga), &ga - &one];
        for j in 1..=4 {
            let fu = &(d1 * &int(3 * j)) - &(d2 * &int(5));
            let fv = -&(d1 * &int(11 + 2 * j));
            frames.push(act(add(&c_base, &offset(fu, fv))));
            for k in 1..=4 {
                let eu = &(d1 * &int(3 * j)) + &(d2 * &(&int(k - 5) - &half));
                let ew = &(d1 * &int(10 - j)) + &(d2 * &(&int(5 - k) - &half));
                let ev = -&(&eu + &ew);
                frames.push(act(add(&[al.clone(), be.clone(), ga.clone()], &[eu, ev, ew])));
            }
        }
    }
    // Separate tied coordinates without crossing any translate boundary.
    for (i, p) in pts.iter_mut().enumerate() {
        let i = i as i64;
        let tweak = offset(&spec.delta3 * &int(i), &spec.delta3 * &int(i * i));
        *p = add(p, &tweak);
    }
    (pts, frames)
}

/// The realization: 63 points, the intended edge for each translate, and a
/// translation vector cutting out exactly that edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub triangle: TriangleShape,
    pub points: Vec<Point2>,
    pub edges: Vec<Vec<usize>>,
    pub witnesses: Vec<Vec2>,
}

/// Places the construction for `spec.triangle` by the affine map taking the
/// right triangle `(0,0), (1,0), (0,1)` onto it; translates map to translates.
pub fn realize_geometrically(spec: &ConstructionSpec) -> Result<Realization> {
    spec.check_scales()?;
    let (pts, frames) = frame_layout(spec);
    let [v0, v1, v2] = spec.triangle.vertices();
    let e1 = (&v1.0 - &v0.0, &v1.1 - &v0.1);
    let e2 = (&v2.0 - &v0.0, &v2.1 - &v0.1);
    let linear = |u: &Coord, v: &Coord| (&(&e1.0 * u) + &(&e2.0 * v), &(&e1.1 * u) + &(&e2.1 * v));
    let points = pts
        .iter()
        .enumerate()
        .map(|(id, p)| {
            let (x, y) = linear(&p[0], &p[1]);
            Point2::new(&x + &v0.0, &y + &v0.1, id)
        })
        .collect();
    let witnesses = frames.iter().map(|c| linear(&c[0], &c[1])).collect();
    let real = Realization { triangle: spec.triangle.clone(), points, edges: intended_edges(), witnesses };
    if let Some(f) = check_witnesses(&real).into_iter().next() {
        return Err(Error::internal(format!("intended edge {} is not cut out: {}", f.edge, f.reason)));
    }
    Ok(real)
}

/// The shipped realization for `triangle`.
pub fn standard_realization(triangle: &TriangleShape) -> Result<Realization> {
    realize_geometrically(&ConstructionSpec::standard(triangle.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFailure {
    pub edge: usize,
    pub vertices: Vec<usize>,
    pub reason: String,
}

fn check_witnesses(real: &Realization) -> Vec<EdgeFailure> {
    let vs: Vec<Vec2> = real.points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    real.edges
        .iter()
        .zip(&real.witnesses)
        .enumerate()
        .filter_map(|(e, (want, t))| {
            let got: Vec<usize> = (0..vs.len()).filter(|&i| real.triangle.translate_contains(t, &vs[i])).collect();
            (&got != want).then(|| EdgeFailure {
                edge: e,
                vertices: want.clone(),
                reason: format!("witness translate holds {got:?}"),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub ok: bool,
    pub points: usize,
    pub translate_classes: usize,
    pub classes_of_size_four: usize,
    pub intended_realized: usize,
    pub failures: Vec<EdgeFailure>,
    /// Whether the hypergraph of all 4-point translate classes has no
    /// two-coloring making every class bichromatic.
    pub unsat: bool,
    pub search: SearchStats,
}

/// Enumerates every translate class of `points`, checks that each intended
/// edge is a class of exactly 4 points, and searches the hypergraph of all
/// 4-point classes for a coloring that makes each bichromatic.
pub fn certify_realization(points: &[Point2], intended: &[Vec<usize>], shape: &TriangleShape) -> CertificationReport {
    let vs: Vec<Vec2> = points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let classes = enumerate_translate_classes(shape, &vs);
    let fours: Vec<Vec<usize>> = classes
        .iter()
        .filter(|c| c.members.len() == 4)
        .map(|c| c.members.iter().map(|&i| points[i].id).collect())
        .collect();
    let mut failures = Vec::new();
    for (e, want) in intended.iter().enumerate() {
        let mut want = want.clone();
        want.sort_unstable();
        if !fours.iter().any(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f == want
        }) {
            failures.push(EdgeFailure {
                edge: e,
                vertices: want,
                reason: "no translate holds exactly these points".to_string(),
            });
        }
    }
    let n = points.iter().map(|p| p.id + 1).max().unwrap_or(0);
    let (unsat, search) = match Hypergraph::new(n, fours.iter().cloned()) {
        Ok(h) => {
            let r = search_proper_two_coloring(&h, 4);
            (!r.is_sat(), r.stats)
        }
        Err(_) => (false, SearchStats::default()),
    };
    CertificationReport {
        ok: failures.is_empty() && unsat,
        points: points.len(),
        translate_classes: classes.len(),
        classes_of_size_four: fours.len(),
        intended_realized: intended.len() - failures.len(),
        failures,
        unsat,
        search,
    }
}

/// Lifts a realization to the plane `x + y + z = 0`. Each intended translate
/// becomes an octant holding exactly its four images, and those edges admit
/// no two-coloring that makes all of them bichromatic, so some octant class
/// of size 4 is monochromatic under every coloring.
pub fn octant_witness(real: &Realization) -> Result<MidriffWitness> {
    let points = planar_points_to_octant_instance(&real.points, &real.triangle);
    for (e, (want, t)) in real.edges.iter().zip(&real.witnesses).enumerate() {
        let (x, y, z) = translate_to_octant_apex(&real.triangle, t);
        let got: Vec<usize> = points.iter().filter(|p| p.x < x && p.y < y && p.z < z).map(|p| p.id).collect();
        if &got != want {
            return Err(Error::internal(format!("octant for edge {e} holds {got:?}, not {want:?}")));
        }
    }
    let h = Hypergraph::new(points.len(), real.edges.iter().cloned())?;
    let r = search_proper_two_coloring(&h, 4);
    if r.is_sat() {
        return Err(Error::internal("the lifted edges admit a proper coloring"));
    }
    Ok(MidriffWitness { points, edges: real.edges.clone(), search_nodes: r.stats.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstract_shape() {
        let h = build_abstract_hypergraph();
        assert_eq!(h.n(), 63);
        assert_eq!(h.edges().len(), 63);
        assert!(h.edges().iter().all(|e| e.len() == 4));
        assert_eq!(vertex_names()[r_id(2, 3, 3)], "r233");
    }

    #[test]
    fn witnesses_cut_out_intended_edges() {
        let real = standard_realization(&TriangleShape::unit_right()).unwrap();
        assert_eq!(real.points.len(), 63);
        assert!(check_witnesses(&real).is_empty());
    }
}
