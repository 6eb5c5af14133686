//! Dominance predicates and the canonical enumeration of wedge and octant
//! classes.
//!
//! A *class* is a nonempty subset of a finite point set that some open range
//! cuts out. Open ranges are represented by closed comparisons against sample
//! coordinates: the apex `(x_i, y_j)` in a [`WedgeClass`] stands for the apex
//! `(x_i + ε, y_j + ε)` of an open wedge.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coord::{Coord, Point2, Point3};
use crate::error::{Axis, Error, Result};

/// How two points with distinct coordinates sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    NW,
    SE,
    SW,
    NE,
}

impl Relation {
    pub fn is_comparable(self) -> bool {
        matches!(self, Relation::SW | Relation::NE)
    }

    pub fn flipped(self) -> Relation {
        match self {
            Relation::NW => Relation::SE,
            Relation::SE => Relation::NW,
            Relation::SW => Relation::NE,
            Relation::NE => Relation::SW,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where `p` lies as seen from `q`: `NW` means `p` is northwest of `q`.
pub fn classify_pair(p: &Point2, q: &Point2) -> Result<Relation> {
    if p.x == q.x {
        return Err(Error::CoordinateCollision { axis: Axis::X, first: p.id, second: q.id });
    }
    if p.y == q.y {
        return Err(Error::CoordinateCollision { axis: Axis::Y, first: p.id, second: q.id });
    }
    Ok(match (p.x < q.x, p.y < q.y) {
        (true, false) => Relation::NW,
        (false, true) => Relation::SE,
        (true, true) => Relation::SW,
        (false, false) => Relation::NE,
    })
}

/// Open containment in the wedge `(-∞, apex.0) × (-∞, apex.1)`.
pub fn wedge_contains(apex: (&Coord, &Coord), p: &Point2) -> bool {
    &p.x < apex.0 && &p.y < apex.1
}

/// Open containment in the octant with the given apex.
pub fn octant_contains(apex: &Point3, p: &Point3) -> bool {
    p.x < apex.x && p.y < apex.y && p.z < apex.z
}

/// A wedge class: the points whose coordinates are at most `apex` in both
/// axes. The open wedge realizing it has apex `apex + (ε, ε)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedgeClass {
    pub apex: (Coord, Coord),
    pub members: Vec<usize>,
}

/// An octant class, with the same closed-apex convention as [`WedgeClass`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OctantClass {
    pub apex: (Coord, Coord, Coord),
    pub members: Vec<usize>,
}

/// Every distinct nonempty subset of `points` cut out by a wedge, each once.
///
/// Members are point ids in increasing order. The list is sorted by
/// `(size, members)`.
pub fn enumerate_wedge_classes(points: &[Point2]) -> Vec<WedgeClass> {
    let mut by_x: Vec<&Point2> = points.iter().collect();
    by_x.sort_by(|a, b| a.x.cmp(&b.x));
    let mut found: BTreeMap<Vec<usize>, (Coord, Coord)> = BTreeMap::new();
    let mut column: Vec<&Point2> = Vec::with_capacity(points.len());
    for p in &by_x {
        column.push(p);
        let mut by_y = column.clone();
        by_y.sort_by(|a, b| a.y.cmp(&b.y));
        let mut members = Vec::with_capacity(by_y.len());
        for q in &by_y {
            members.push(q.id);
            let mut key = members.clone();
            key.sort_unstable();
            found.entry(key).or_insert_with(|| (p.x.clone(), q.y.clone()));
        }
    }
    sorted_classes(found.into_iter().map(|(members, apex)| WedgeClass { apex, members }).collect())
}

/// Every distinct nonempty subset of `points` cut out by an octant.
pub fn enumerate_octant_classes(points: &[Point3]) -> Vec<OctantClass> {
    let mut by_x: Vec<&Point3> = points.iter().collect();
    by_x.sort_by(|a, b| a.x.cmp(&b.x));
    let mut found: BTreeMap<Vec<usize>, (Coord, Coord, Coord)> = BTreeMap::new();
    for (i, px) in by_x.iter().enumerate() {
        let mut slab: Vec<&Point3> = by_x[..=i].to_vec();
        slab.sort_by(|a, b| a.y.cmp(&b.y));
        for (j, py) in slab.iter().enumerate() {
            let mut column: Vec<&Point3> = slab[..=j].to_vec();
            column.sort_by(|a, b| a.z.cmp(&b.z));
            let mut members = Vec::with_capacity(column.len());
            for pz in &column {
                members.push(pz.id);
                let mut key = members.clone();
                key.sort_unstable();
                found.entry(key).or_insert_with(|| (px.x.clone(), py.y.clone(), pz.z.clone()));
            }
        }
    }
    let mut out: Vec<OctantClass> = found.into_iter().map(|(members, apex)| OctantClass { apex, members }).collect();
    out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    out
}

fn sorted_classes(mut classes: Vec<WedgeClass>) -> Vec<WedgeClass> {
    classes.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    classes
}

/// Re-evaluates a wedge class from its apex with the closed-comparison rule.
pub fn wedge_class_members(apex: (&Coord, &Coord), points: &[Point2]) -> Vec<usize> {
    let mut ids: Vec<usize> = points.iter().filter(|p| &p.x <= apex.0 && &p.y <= apex.1).map(|p| p.id).collect();
    ids.sort_unstable();
    ids
}

/// An octant, given by its apex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Octant {
    pub apex: Point3,
}

impl Octant {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>, z: impl Into<Coord>, id: usize) -> Self {
        Octant { apex: Point3::new(x, y, z, id) }
    }

    pub fn contains(&self, p: &Point3) -> bool {
        octant_contains(&self.apex, p)
    }
}

/// A bounded interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Coord,
    hi: Coord,
}

impl Interval {
    pub fn new(lo: impl Into<Coord>, hi: impl Into<Coord>) -> Result<Self> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo >= hi {
            return Err(Error::DegenerateInterval { lo: Box::new(lo), hi: Box::new(hi) });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Coord {
        &self.lo
    }

    pub fn hi(&self) -> &Coord {
        &self.hi
    }

    /// `self ⊆ other`, closed.
    pub fn is_within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Closed intersection test.
    pub fn meets(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.lo, &self.hi).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(Coord, Coord)>::deserialize(d)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Rejects interval families in which an endpoint value occurs twice.
pub fn check_distinct_endpoints(intervals: &[Interval]) -> Result<()> {
    let mut all: Vec<&Coord> = intervals.iter().flat_map(|i| [&i.lo, &i.hi]).collect();
    all.sort();
    for w in all.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateEndpoint(Box::new(w[0].clone())));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64, id: usize) -> Point2 {
        Point2::new(x, y, id)
    }

    #[test]
    fn relations() {
        assert_eq!(classify_pair(&pt(0, 1, 0), &pt(1, 0, 1)).unwrap(), Relation::NW);
        assert_eq!(classify_pair(&pt(0, 0, 0), &pt(1, 1, 1)).unwrap(), Relation::SW);
        assert_eq!(classify_pair(&pt(2, 3, 0), &pt(1, 5, 1)).unwrap(), Relation::SE);
        assert!(classify_pair(&pt(2, 3, 0), &pt(2, 5, 1)).is_err());
    }

    #[test]
    fn wedge_is_open() {
        let (two, zero, five) = (Coord::int(2), Coord::int(0), Coord::int(5));
        assert!(wedge_contains((&two, &two), &pt(1, 1, 0)));
        assert!(!wedge_contains((&two, &two), &pt(2, 1, 0)));
        assert!(!wedge_contains((&zero, &five), &pt(1, 1, 0)));
    }

    #[test]
    fn small_wedge_families() {
        let members =
            |ps: &[Point2]| -> Vec<Vec<usize>> { enumerate_wedge_classes(ps).into_iter().map(|c| c.members).collect() };
        assert_eq!(members(&[pt(0, 0, 0)]), vec![vec![0]]);
        assert_eq!(members(&[pt(0, 1, 0), pt(1, 0, 1)]), vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(members(&[pt(0, 0, 0), pt(1, 1, 1)]), vec![vec![0], vec![0, 1]]);
    }

    #[test]
    fn octant_families() {
        let p = |x, y, z, id| Point3::new(x, y, z, id);
        assert_eq!(enumerate_octant_classes(&[p(0, 0, 0, 0)]).len(), 1);
        assert_eq!(enumerate_octant_classes(&[p(0, 0, 0, 0), p(1, 1, 1, 1)]).len(), 2);
    }

    #[test]
    fn intervals_reject_degenerate() {
        assert!(Interval::new(1, 1).is_err());
        assert!(Interval::new(2, 1).is_err());
        let a = Interval::new(0, 1).unwrap();
        let b = Interval::new(-1, 2).unwrap();
        assert!(a.is_within(&b));
        assert!(check_distinct_endpoints(&[a.clone(), a]).is_err());
    }
}
