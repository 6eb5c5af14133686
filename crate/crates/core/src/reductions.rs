//! Maps between octants, wedges, triangles and intervals, each with a
//! brute-force checker comparing edge families on both sides.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coord::{check_distinct_3d, Coord, OrderedPointSet, Point2, Point3};
use crate::error::{Error, Result};
use crate::geom::{enumerate_wedge_classes, Interval, Octant};
use crate::staircase::{color_points, TwoColoring};
use crate::triangle::{TriangleShape, Vec2};

/// A family of vertex-id sets.
pub type EdgeFamily = BTreeSet<Vec<usize>>;

/// Outcome of comparing two edge families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyComparison {
    pub ok: bool,
    pub left: usize,
    pub right: usize,
    /// Edges of the left family missing on the right.
    pub missing: Vec<Vec<usize>>,
    /// Edges of the right family missing on the left.
    pub extra: Vec<Vec<usize>>,
}

impl FamilyComparison {
    pub fn equal(left: &EdgeFamily, right: &EdgeFamily) -> Self {
        let missing: Vec<_> = left.difference(right).cloned().collect();
        let extra: Vec<_> = right.difference(left).cloned().collect();
        FamilyComparison {
            ok: missing.is_empty() && extra.is_empty(),
            left: left.len(),
            right: right.len(),
            missing,
            extra,
        }
    }

    /// Only requires `left ⊆ right`.
    pub fn subfamily(left: &EdgeFamily, right: &EdgeFamily) -> Self {
        let mut c = Self::equal(left, right);
        c.ok = c.missing.is_empty();
        c
    }
}

// ---------------------------------------------------------------------------
// Octants and dynamic quadrants

/// The apex of an open wedge `(-∞, x) × (-∞, y)`.
pub type Apex = (Coord, Coord);

/// A wedge that must see both colors among the first `prefix` arrivals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub point: usize,
    pub apex: (Coord, Coord),
    pub prefix: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantInstance {
    pub points: OrderedPointSet,
    /// `octant_at[i]` is the octant arriving at time `i + 1`.
    pub octant_at: Vec<usize>,
    pub constraints: Vec<Constraint>,
}

impl QuadrantInstance {
    /// For each constraint, the octants whose planar points lie in its
    /// wedge within its prefix.
    pub fn constraint_edges(&self) -> Vec<Vec<usize>> {
        self.constraints
            .iter()
            .map(|c| {
                let mut e: Vec<usize> = self.points.points()[..c.prefix]
                    .iter()
                    .filter(|p| p.x < c.apex.0 && p.y < c.apex.1)
                    .map(|p| self.octant_at[p.id])
                    .collect();
                e.sort_unstable();
                e
            })
            .collect()
    }
}

fn check_octant_instance(octants: &[Octant], points: &[Point3]) -> Result<()> {
    let all: Vec<Point3> = octants
        .iter()
        .enumerate()
        .map(|(i, o)| Point3 { id: i, ..o.apex.clone() })
        .chain(points.iter().enumerate().map(|(i, p)| Point3 { id: octants.len() + i, ..p.clone() }))
        .collect();
    check_distinct_3d(&all)
}

/// The octants containing each point, as octant indices.
pub fn octant_point_edges(octants: &[Octant], points: &[Point3]) -> Vec<Vec<usize>> {
    points.iter().map(|p| (0..octants.len()).filter(|&i| octants[i].contains(p)).collect()).collect()
}

/// Octant apex `(x, y, z)` becomes the planar point `(-x, -y)`, arriving in
/// order of decreasing `z`. Point `(a, b, c)` becomes the wedge with apex
/// `(-a, -b)` over the arrivals with `z > c`.
///
/// Coordinates are checked for collisions per axis across octant apexes and
/// points together; collision ids number the octants first, then the points.
pub fn octants_to_dynamic_quadrants(octants: &[Octant], points: &[Point3]) -> Result<QuadrantInstance> {
    check_octant_instance(octants, points)?;
    let mut octant_at: Vec<usize> = (0..octants.len()).collect();
    octant_at.sort_by(|&a, &b| octants[b].apex.z.cmp(&octants[a].apex.z));
    let planar = OrderedPointSet::new(octant_at.iter().map(|&i| (-&octants[i].apex.x, -&octants[i].apex.y)).collect())?;
    let constraints = points
        .iter()
        .enumerate()
        .map(|(i, p)| Constraint {
            point: i,
            apex: (-&p.x, -&p.y),
            prefix: octant_at.iter().take_while(|&&o| octants[o].apex.z > p.z).count(),
        })
        .collect();
    Ok(QuadrantInstance { points: planar, octant_at, constraints })
}

/// Checks that each point's octants are exactly the octants in its wedge.
pub fn certify_octant_bijection(octants: &[Octant], points: &[Point3]) -> Result<bool> {
    let inst = octants_to_dynamic_quadrants(octants, points)?;
    Ok(inst.constraint_edges() == octant_point_edges(octants, points))
}

/// A split of an octant family into two parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Color of every octant, by octant index.
    pub colors: Vec<u8>,
    pub parts: [Vec<usize>; 2],
}

/// Splits a 9-fold covering of `points` by `octants` into two coverings.
pub fn decompose_covering(octants: &[Octant], points: &[Point3]) -> Result<Decomposition> {
    for (i, e) in octant_point_edges(octants, points).iter().enumerate() {
        if e.len() < 9 {
            return Err(Error::UnderCovered { point: i, count: e.len(), needed: 9 });
        }
    }
    let inst = octants_to_dynamic_quadrants(octants, points)?;
    let run = color_points(&inst.points)?;
    let mut colors = vec![0u8; octants.len()];
    for (t, &o) in inst.octant_at.iter().enumerate() {
        colors[o] = run.coloring.get(t).expect("finalize colors every arrival");
    }
    let parts = [0u8, 1].map(|c| (0..octants.len()).filter(|&i| colors[i] == c).collect());
    Ok(Decomposition { colors, parts })
}

/// Orders 3-space points by increasing `z` and projects them to `(x, y)`.
/// Returns the ordered set and the original id of each arrival.
pub fn points3_to_ordered(points: &[Point3]) -> Result<(OrderedPointSet, Vec<usize>)> {
    check_distinct_3d(points)?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].z.cmp(&points[b].z));
    let set = OrderedPointSet::new(order.iter().map(|&i| (points[i].x.clone(), points[i].y.clone())).collect())?;
    Ok((set, order.iter().map(|&i| points[i].id).collect()))
}

/// Colors 3-space points so that every octant with at least 9 of them sees
/// both colors. The coloring is indexed by point id.
pub fn color_points3(points: &[Point3]) -> Result<TwoColoring> {
    let (set, ids) = points3_to_ordered(points)?;
    let run = color_points(&set)?;
    let n = ids.iter().map(|&i| i + 1).max().unwrap_or(0);
    let mut colors = vec![None; n];
    for (t, &id) in ids.iter().enumerate() {
        colors[id] = run.coloring.get(t);
    }
    Ok(TwoColoring::partial(colors))
}

// ---------------------------------------------------------------------------
// Triangles and octants

/// Embeds planar points into the plane `x + y + z = 0` by the affine map
/// sending `shape` to the triangle `(-2,1,1), (1,-2,1), (1,1,-2)`. Homothets
/// of `shape` then cut out exactly the subsets that octants cut out of the
/// images.
pub fn planar_points_to_octant_instance(points: &[Point2], shape: &TriangleShape) -> Vec<Point3> {
    let k = shape.area2();
    let one = Coord::one();
    let three = Coord::int(3);
    points
        .iter()
        .map(|p| {
            let l = shape.lambda(&(p.x.clone(), p.y.clone()));
            let c = |i: usize| &one - &(&three * &l[i] / k.clone());
            Point3::new(c(0), c(1), c(2), p.id)
        })
        .collect()
}

/// The octant apex whose octant meets the embedding plane in the open
/// translate `shape + t`.
pub fn translate_to_octant_apex(shape: &TriangleShape, t: &Vec2) -> (Coord, Coord, Coord) {
    let k = shape.area2();
    let origin = (Coord::zero(), Coord::zero());
    let at_t = shape.lambda(t);
    let at_0 = shape.lambda(&origin);
    let c = |i: usize| &Coord::one() - &(&Coord::int(3) * &(&at_t[i] - &at_0[i]) / k.clone());
    (c(0), c(1), c(2))
}

// ---------------------------------------------------------------------------
// Intervals

fn candidate_endpoints(intervals: &[Interval]) -> Vec<Coord> {
    let mut ends: Vec<Coord> = intervals.iter().flat_map(|i| [i.lo().clone(), i.hi().clone()]).collect();
    ends.sort();
    ends.dedup();
    let mut out = ends.clone();
    for w in ends.windows(2) {
        out.push(Coord::midpoint(&w[0], &w[1]));
    }
    if let (Some(lo), Some(hi)) = (ends.first(), ends.last()) {
        out.push(lo - &Coord::one());
        out.push(hi + &Coord::one());
    }
    out.sort();
    out
}

fn interval_family(intervals: &[Interval], keep: impl Fn(&Interval, &Coord, &Coord) -> bool) -> EdgeFamily {
    let cand = candidate_endpoints(intervals);
    let mut out = EdgeFamily::new();
    for (i, a) in cand.iter().enumerate() {
        for b in &cand[i..] {
            let e: Vec<usize> = (0..intervals.len()).filter(|&v| keep(&intervals[v], a, b)).collect();
            if !e.is_empty() {
                out.insert(e);
            }
        }
    }
    out
}

/// Interval-Bigger-Interval: vertices contained in some interval.
pub fn ibi_family(intervals: &[Interval]) -> EdgeFamily {
    interval_family(intervals, |v, a, b| a <= v.lo() && v.hi() <= b)
}

/// Interval-Smaller-Interval: vertices containing some interval.
pub fn isi_family(intervals: &[Interval]) -> EdgeFamily {
    interval_family(intervals, |v, a, b| v.lo() <= a && b <= v.hi())
}

/// Interval-Crossing-Interval: vertices meeting some interval.
pub fn ici_family(intervals: &[Interval]) -> EdgeFamily {
    interval_family(intervals, |v, a, b| v.lo() <= b && a <= v.hi())
}

/// Point-Quadrant: every wedge class, by point id.
pub fn point_quadrant_family(points: &[Point2]) -> EdgeFamily {
    enumerate_wedge_classes(points).into_iter().map(|c| c.members).collect()
}

/// Wedge classes realizable by an open wedge whose apex has `x + y < 0`.
pub fn point_quadrant_family_below_line(points: &[Point2]) -> EdgeFamily {
    enumerate_wedge_classes(points)
        .into_iter()
        .filter(|c| {
            let mx = c.members.iter().map(|&i| &points.iter().find(|p| p.id == i).expect("member").x).max();
            let my = c.members.iter().map(|&i| &points.iter().find(|p| p.id == i).expect("member").y).max();
            (mx.expect("nonempty") + my.expect("nonempty")).is_negative()
        })
        .map(|c| c.members)
        .collect()
}

/// Wedge classes realizable by an open wedge whose apex has `x + y > 0`.
pub fn point_quadrant_family_above_line(points: &[Point2]) -> EdgeFamily {
    let mut xs: Vec<&Coord> = points.iter().map(|p| &p.x).collect();
    let mut ys: Vec<&Coord> = points.iter().map(|p| &p.y).collect();
    xs.sort();
    ys.sort();
    let mut out = EdgeFamily::new();
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            // Apexes in [xs[i], xs[i+1]) × [ys[j], ys[j+1]) share one class.
            let above = match (xs.get(i + 1), ys.get(j + 1)) {
                (Some(x), Some(y)) => (*x + *y).is_positive(),
                _ => true,
            };
            if !above {
                continue;
            }
            let mut e: Vec<usize> = points.iter().filter(|p| &p.x <= xs[i] && &p.y <= ys[j]).map(|p| p.id).collect();
            if !e.is_empty() {
                e.sort_unstable();
                out.insert(e);
            }
        }
    }
    out
}

fn check_intervals(intervals: &[Interval]) -> Result<()> {
    crate::geom::check_distinct_endpoints(intervals)
}

/// `[l, r]` becomes the point `(r, -l)`. Wedges then cut out exactly the
/// sets of intervals inside a common interval.
pub fn ibi_to_point_quadrant(intervals: &[Interval]) -> Result<Vec<Point2>> {
    check_intervals(intervals)?;
    Ok(intervals.iter().enumerate().map(|(i, v)| Point2::new(v.hi().clone(), -v.lo(), i)).collect())
}

/// `[l, r]` becomes the point `(l, -r)`. Wedges with apex below the line
/// `x + y = 0` then cut out exactly the sets of intervals containing a
/// common interval.
pub fn isi_to_point_quadrant(intervals: &[Interval]) -> Result<Vec<Point2>> {
    check_intervals(intervals)?;
    Ok(intervals.iter().enumerate().map(|(i, v)| Point2::new(v.lo().clone(), -v.hi(), i)).collect())
}

/// Vertex `[l, r]` becomes the point `(l, -r)`, below the line `x + y = 0`;
/// query `[a, b]` becomes the apex `(b, -a)`, above it. A vertex meets a
/// query iff its point lies in the query's wedge.
pub fn ici_to_point_quadrant(vertices: &[Interval], queries: &[Interval]) -> Result<(Vec<Point2>, Vec<Apex>)> {
    check_intervals(vertices)?;
    let points = isi_to_point_quadrant(vertices)?;
    let apexes = queries.iter().map(|q| (q.hi().clone(), -q.lo())).collect();
    Ok((points, apexes))
}

/// Vertices meeting each query, by direct interval arithmetic.
pub fn ici_query_edges(vertices: &[Interval], queries: &[Interval]) -> Vec<Vec<usize>> {
    queries.iter().map(|q| (0..vertices.len()).filter(|&v| vertices[v].meets(q)).collect()).collect()
}

/// Points in each open wedge.
pub fn wedge_edges(points: &[Point2], apexes: &[(Coord, Coord)]) -> Vec<Vec<usize>> {
    apexes
        .iter()
        .map(|a| {
            let mut e: Vec<usize> = points.iter().filter(|p| p.x < a.0 && p.y < a.1).map(|p| p.id).collect();
            e.sort_unstable();
            e
        })
        .collect()
}

/// Moves every left endpoint before every right endpoint, keeping the order
/// among lefts and among rights: lefts become `0..n` and rights `n..2n`.
/// Swapping a right endpoint with the left endpoint just after it never
/// changes which intervals lie inside a common interval, so the
/// Interval-Bigger-Interval hypergraph is preserved.
pub fn normalize_for_duality(intervals: &[Interval]) -> Result<Vec<Interval>> {
    check_intervals(intervals)?;
    let n = intervals.len();
    let rank = |key: &dyn Fn(&Interval) -> &Coord| -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| key(&intervals[a]).cmp(key(&intervals[b])));
        let mut r = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            r[i] = k;
        }
        r
    };
    let rl = rank(&|i| i.lo());
    let rr = rank(&|i| i.hi());
    (0..n).map(|i| Interval::new(Coord::int(rl[i] as i64), Coord::int((n + rr[i]) as i64))).collect()
}

/// Normalizes, places the intervals on a circle (a sentinel inside all of
/// them, another outside all of them), and complements every arc. Output
/// vertex `i` is the complement of input vertex `i`; a common interval holds
/// a set of inputs exactly when the matching outputs hold a common interval.
pub fn complement_arc_duality(intervals: &[Interval]) -> Result<Vec<Interval>> {
    let norm = normalize_for_duality(intervals)?;
    let n = norm.len() as i64;
    norm.iter().map(|v| Interval::new(v.hi() - &Coord::int(n), v.lo() + &Coord::int(n))).collect()
}

// ---------------------------------------------------------------------------
// Midriff bounds

pub const FAMILIES: [&str; 7] =
    ["D-Point-Quadrant", "D-Point-Interval", "D-Interval-Point", "D-IBI", "D-ISI", "D-ICI", "Point-Octant"];

/// Known bounds on the midriff of a family; `upper: None` means unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidriffBound {
    pub family: String,
    pub lower: usize,
    pub upper: Option<usize>,
    pub note: String,
    pub witness: Option<MidriffWitness>,
}

/// An octant instance every two-coloring of which leaves a monochromatic
/// octant class of size 4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidriffWitness {
    pub points: Vec<Point3>,
    pub edges: Vec<Vec<usize>>,
    pub search_nodes: u64,
}

/// Bounds for one of [`FAMILIES`] (case-insensitive).
pub fn midriff_bounds_report(family: &str) -> Result<MidriffBound> {
    let canon = FAMILIES
        .iter()
        .find(|f| f.eq_ignore_ascii_case(family))
        .ok_or_else(|| Error::UnknownFamily(family.to_string()))?;
    let (lower, upper, note) = match *canon {
        "Point-Octant" => (5, Some(9), "every 9-fold octant covering splits; a 63-point triangle instance forces 5"),
        "D-Point-Quadrant" => (5, Some(9), "same hypergraphs as Point-Octant"),
        "D-Point-Interval" => (4, Some(4), "prior result"),
        "D-Interval-Point" => (3, Some(3), "prior result"),
        "D-IBI" | "D-ISI" => (5, Some(9), "same hypergraphs as D-Point-Quadrant"),
        "D-ICI" => (4, Some(9), "contains D-Point-Interval; embeds into D-Point-Quadrant"),
        _ => unreachable!("listed family"),
    };
    Ok(MidriffBound { family: canon.to_string(), lower, upper, note: note.to_string(), witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn one_octant_one_point() {
        let o = [Octant::new(1, 1, 1, 0)];
        let p = [Point3::new(0, 0, 0, 0)];
        assert!(certify_octant_bijection(&o, &p).unwrap());
        assert_eq!(octant_point_edges(&o, &p), vec![vec![0]]);
        let late = [Point3::new(0, 0, 5, 0)];
        let inst = octants_to_dynamic_quadrants(&o, &late).unwrap();
        assert_eq!(inst.constraint_edges(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn ibi_containment() {
        let pts = ibi_to_point_quadrant(&[iv(0, 1)]).unwrap();
        let apex = (Coord::int(2), Coord::int(1));
        assert_eq!(wedge_edges(&pts, &[apex]), vec![vec![0]]);
        assert!(ibi_to_point_quadrant(&[iv(0, 1), iv(0, 1)]).is_err());
    }

    #[test]
    fn duality_on_nested_pair() {
        let out = complement_arc_duality(&[iv(0, 10), iv(2, 5)]).unwrap();
        assert!(out[0].is_within(&out[1]));
        assert_eq!(ibi_family(&[iv(0, 10), iv(2, 5)]), isi_family(&out));
    }

    #[test]
    fn crossing_queries() {
        let v = [iv(0, 2), iv(10, 12)];
        let q = [iv(4, 6), iv(-1, 13), iv(1, 11)];
        let (pts, apexes) = ici_to_point_quadrant(&v, &q).unwrap();
        assert_eq!(wedge_edges(&pts, &apexes), ici_query_edges(&v, &q));
        assert_eq!(ici_query_edges(&v, &q), vec![vec![], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn family_tags() {
        assert_eq!(midriff_bounds_report("point-octant").unwrap().lower, 5);
        assert_eq!(midriff_bounds_report("D-Point-Interval").unwrap().upper, Some(4));
        assert!(midriff_bounds_report("Octant-Octant").is_err());
    }
}
