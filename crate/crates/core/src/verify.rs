//! Certification of colorings against prefix wedges and octants.
//!
//! [`verify_prefix_wedges`] sweeps arrivals and, at each time `t`, looks only
//! at classes containing the new point `p_t` (every other class of `P_t` is a
//! class of `P_{t-1}`). Among those, the maximal classes avoiding the other
//! color have apexes at the inner corners of a staircase of blockers, and
//! their sizes come from a 2D Fenwick tree. The `_exhaustive` variants walk
//! every class of every prefix instead and serve as the reference.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coord::{ranks_by, Coord, OrderedPointSet, Point3};
use crate::error::{Error, Result};
use crate::geom::{enumerate_octant_classes, enumerate_wedge_classes};
use crate::staircase::{TimedEdge, TwoColoring};

/// Violations kept in full; the rest are only counted.
pub const MAX_REPORTED: usize = 256;

/// A range whose members all share one color. `apex` uses the closed
/// convention of [`crate::geom::WedgeClass`]: members are the points of the
/// prefix at or below it in every coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub time: usize,
    pub apex: Vec<Coord>,
    pub members: Vec<usize>,
    pub color: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub m_checked: usize,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    pub max_mono: usize,
}

impl VerificationReport {
    fn new(m: usize) -> Self {
        VerificationReport { ok: true, m_checked: m, violations: Vec::new(), violation_count: 0, max_mono: 0 }
    }

    fn record(&mut self, v: Violation) {
        self.ok = false;
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(v);
        }
    }
}

/// Largest range without a forest edge, and the ranges of size at least `m`
/// that have none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitnessReport {
    pub ok: bool,
    pub m_checked: usize,
    pub max_edge_free: usize,
    pub violations: Vec<Violation>,
    pub violation_count: usize,
}

fn total_colors(c: &TwoColoring, n: usize) -> Result<Vec<u8>> {
    if c.len() > n {
        return Err(Error::VertexOutOfRange { id: n, n });
    }
    let mut missing = c.uncolored();
    missing.extend(c.len()..n);
    if !missing.is_empty() {
        return Err(Error::PartialColoring(missing));
    }
    Ok((0..n).map(|i| c.get(i).expect("checked")).collect())
}

/// Counts arrived points dominated by a corner, in rank space.
enum Counter {
    Fenwick { n: usize, tree: Vec<u32> },
    Scan { arrived: Vec<(u32, u32)> },
}

const FENWICK_LIMIT: usize = 2048;

impl Counter {
    fn new(n: usize) -> Self {
        if n <= FENWICK_LIMIT {
            Counter::Fenwick { n, tree: vec![0; n * n] }
        } else {
            Counter::Scan { arrived: Vec::new() }
        }
    }

    fn insert(&mut self, x: u32, y: u32) {
        match self {
            Counter::Fenwick { n, tree } => {
                let mut i = x as usize + 1;
                while i <= *n {
                    let mut j = y as usize + 1;
                    while j <= *n {
                        tree[(i - 1) * *n + (j - 1)] += 1;
                        j += j & j.wrapping_neg();
                    }
                    i += i & i.wrapping_neg();
                }
            }
            Counter::Scan { arrived } => arrived.push((x, y)),
        }
    }

    fn count(&self, x: u32, y: u32) -> usize {
        match self {
            Counter::Fenwick { n, tree } => {
                let mut total = 0;
                let mut i = x as usize + 1;
                while i > 0 {
                    let mut j = y as usize + 1;
                    while j > 0 {
                        total += tree[(i - 1) * *n + (j - 1)] as usize;
                        j -= j & j.wrapping_neg();
                    }
                    i -= i & i.wrapping_neg();
                }
                total
            }
            Counter::Scan { arrived } => arrived.iter().filter(|&&(a, b)| a <= x && b <= y).count(),
        }
    }
}

/// Maximal corners `(X, Y)` with `X >= px`, `Y >= py` that dominate none of
/// `blockers`. Blockers come sorted by x; `top` stands for +∞.
fn free_corners(px: u32, py: u32, blockers: impl Iterator<Item = (u32, u32)>, top: u32) -> Vec<(u32, u32)> {
    let mut stair: Vec<(u32, u32)> = Vec::new();
    for (bx, by) in blockers {
        let b = (bx.max(px), by.max(py));
        if stair.last().is_none_or(|&(_, y)| b.1 < y) {
            stair.push(b);
        }
    }
    if stair.first() == Some(&(px, py)) {
        return Vec::new();
    }
    let mut corners = Vec::with_capacity(stair.len() + 1);
    let mut y_cap = top;
    for &(bx, by) in &stair {
        if bx > px {
            corners.push((bx - 1, y_cap));
        }
        y_cap = by.saturating_sub(1);
        if by <= py {
            return corners;
        }
    }
    corners.push((top, y_cap));
    corners
}

struct RankSpace<'a> {
    points: &'a OrderedPointSet,
    ranks: Vec<(u32, u32)>,
    by_x: Vec<usize>,
    x_of_rank: Vec<usize>,
    y_of_rank: Vec<usize>,
}

impl<'a> RankSpace<'a> {
    fn new(points: &'a OrderedPointSet) -> Self {
        let ranks = points.ranks();
        let n = ranks.len();
        let mut x_of_rank = vec![0; n];
        let mut y_of_rank = vec![0; n];
        for (i, &(x, y)) in ranks.iter().enumerate() {
            x_of_rank[x as usize] = i;
            y_of_rank[y as usize] = i;
        }
        let by_x = x_of_rank.clone();
        RankSpace { points, ranks, by_x, x_of_rank, y_of_rank }
    }

    fn violation(&self, t: usize, corner: (u32, u32), color: u8) -> Violation {
        let members = (0..t).filter(|&i| self.ranks[i].0 <= corner.0 && self.ranks[i].1 <= corner.1).collect();
        let apex = vec![
            self.points.get(self.x_of_rank[corner.0 as usize]).x.clone(),
            self.points.get(self.y_of_rank[corner.1 as usize]).y.clone(),
        ];
        Violation { time: t, apex, members, color }
    }
}

/// Checks that at every prefix time every wedge with at least `m` points
/// holds both colors. `max_mono` is the largest monochromatic wedge class
/// over all prefixes.
pub fn verify_prefix_wedges(points: &OrderedPointSet, coloring: &TwoColoring, m: usize) -> Result<VerificationReport> {
    let n = points.len();
    let colors = total_colors(coloring, n)?;
    let mut report = VerificationReport::new(m);
    if n == 0 {
        return Ok(report);
    }
    let rs = RankSpace::new(points);
    let top = n as u32 - 1;
    let mut counter = Counter::new(n);
    for t in 1..=n {
        let p = t - 1;
        let (px, py) = rs.ranks[p];
        counter.insert(px, py);
        let c = colors[p];
        let blockers = rs.by_x.iter().filter(|&&i| i < t && colors[i] != c).map(|&i| rs.ranks[i]);
        for corner in free_corners(px, py, blockers, top) {
            let size = counter.count(corner.0, corner.1);
            report.max_mono = report.max_mono.max(size);
            if size >= m {
                report.record(rs.violation(t, corner, c));
            }
        }
    }
    Ok(report)
}

/// Checks that at every prefix time every wedge with at least `m` points
/// holds both ends of an edge present at that time.
pub fn check_edge_witness(points: &OrderedPointSet, edges: &[TimedEdge], m: usize) -> Result<EdgeWitnessReport> {
    let n = points.len();
    for e in edges {
        if e.a >= n || e.b >= n {
            return Err(Error::VertexOutOfRange { id: e.a.max(e.b), n });
        }
    }
    let mut report =
        EdgeWitnessReport { ok: true, m_checked: m, max_edge_free: 0, violations: Vec::new(), violation_count: 0 };
    if n == 0 {
        return Ok(report);
    }
    let rs = RankSpace::new(points);
    let top = n as u32 - 1;
    let mut corners: Vec<(u32, u32, usize)> = edges
        .iter()
        .map(|e| {
            let (a, b) = (rs.ranks[e.a], rs.ranks[e.b]);
            (a.0.max(b.0), a.1.max(b.1), e.time)
        })
        .collect();
    corners.sort_unstable();
    let mut counter = Counter::new(n);
    for t in 1..=n {
        let (px, py) = rs.ranks[t - 1];
        counter.insert(px, py);
        let blockers = corners.iter().filter(|c| c.2 <= t).map(|c| (c.0, c.1));
        for corner in free_corners(px, py, blockers, top) {
            let size = counter.count(corner.0, corner.1);
            report.max_edge_free = report.max_edge_free.max(size);
            if size >= m {
                report.ok = false;
                report.violation_count += 1;
                if report.violations.len() < MAX_REPORTED {
                    let mut v = rs.violation(t, corner, 0);
                    v.color = 2;
                    report.violations.push(v);
                }
            }
        }
    }
    Ok(report)
}

/// Reference version of [`verify_prefix_wedges`]: enumerates every wedge
/// class of every prefix. Violations are reported with class members as ids.
pub fn verify_prefix_wedges_exhaustive(
    points: &OrderedPointSet,
    coloring: &TwoColoring,
    m: usize,
) -> Result<VerificationReport> {
    let n = points.len();
    let colors = total_colors(coloring, n)?;
    let mut report = VerificationReport::new(m);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in 1..=n {
        for class in enumerate_wedge_classes(points.prefix(t)) {
            let c = colors[class.members[0]];
            if class.members.iter().any(|&i| colors[i] != c) {
                continue;
            }
            report.max_mono = report.max_mono.max(class.members.len());
            if class.members.len() >= m && seen.insert(class.members.clone()) {
                report.record(Violation {
                    time: t,
                    apex: vec![class.apex.0, class.apex.1],
                    members: class.members,
                    color: c,
                });
            }
        }
    }
    Ok(report)
}

/// Largest wedge class over all prefixes that holds no edge present at its
/// time, found by enumerating every class.
pub fn check_edge_witness_exhaustive(points: &OrderedPointSet, edges: &[TimedEdge]) -> usize {
    let mut max_edge_free = 0;
    for t in 1..=points.len() {
        for class in enumerate_wedge_classes(points.prefix(t)) {
            let has_edge = edges.iter().any(|e| {
                e.time <= t && class.members.binary_search(&e.a).is_ok() && class.members.binary_search(&e.b).is_ok()
            });
            if !has_edge {
                max_edge_free = max_edge_free.max(class.members.len());
            }
        }
    }
    max_edge_free
}

/// Checks that every octant holding at least `m` of `points` holds both
/// colors. Colors are indexed by point id.
pub fn verify_octants(points: &[Point3], coloring: &TwoColoring, m: usize) -> Result<VerificationReport> {
    let n = points.len();
    let ids: Vec<usize> = points.iter().map(|p| p.id).collect();
    let n_ids = ids.iter().map(|&i| i + 1).max().unwrap_or(0);
    let colors = total_colors(coloring, n_ids.max(coloring.len()))?;
    let mut report = VerificationReport::new(m);
    let rank = |k: usize| ranks_by(&points.iter().map(|p| p.coords()[k]).collect::<Vec<_>>());
    let (rx, ry, rz) = (rank(0), rank(1), rank(2));
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by_key(|&i| rx[i]);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..n {
        let mut slab: Vec<usize> = by_x[..=a].to_vec();
        slab.sort_by_key(|&i| ry[i]);
        for b in 0..slab.len() {
            let mut column: Vec<usize> = slab[..=b].to_vec();
            column.sort_by_key(|&i| rz[i]);
            let mut count = [0usize; 2];
            for (k, &i) in column.iter().enumerate() {
                let c = colors[ids[i]];
                count[c as usize] += 1;
                let size = k + 1;
                if count[1 - c as usize] != 0 {
                    continue;
                }
                report.max_mono = report.max_mono.max(size);
                if size >= m {
                    let mut members: Vec<usize> = column[..size].iter().map(|&j| ids[j]).collect();
                    members.sort_unstable();
                    if seen.insert(members.clone()) {
                        let apex = vec![points[by_x[a]].x.clone(), points[slab[b]].y.clone(), points[i].z.clone()];
                        report.record(Violation { time: 0, apex, members, color: c });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Reference version of [`verify_octants`] over [`enumerate_octant_classes`].
pub fn verify_octants_exhaustive(points: &[Point3], coloring: &TwoColoring, m: usize) -> Result<VerificationReport> {
    let n_ids = points.iter().map(|p| p.id + 1).max().unwrap_or(0);
    let colors = total_colors(coloring, n_ids.max(coloring.len()))?;
    let mut report = VerificationReport::new(m);
    for class in enumerate_octant_classes(points) {
        let c = colors[class.members[0]];
        if class.members.iter().any(|&i| colors[i] != c) {
            continue;
        }
        report.max_mono = report.max_mono.max(class.members.len());
        if class.members.len() >= m {
            let (x, y, z) = class.apex;
            report.record(Violation { time: 0, apex: vec![x, y, z], members: class.members, color: c });
        }
    }
    Ok(report)
}
