//! The staircase forest builder.
//!
//! Points arrive one at a time. After each arrival the four operations
//! (`2Comparable`, `4Incomparable`, `1Box`, `1Above`) are applied until none
//! is applicable; every operation adds one forest edge. At every time, a
//! wedge holding at least 9 of the arrived points holds both endpoints of
//! some edge, so any proper two-coloring of the final forest leaves no such
//! wedge monochromatic at any time.
//!
//! The state is generic over the coordinate type: [`Coord`] for exact input,
//! `u32` ranks on the fast path of [`color_points`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coord::{Coord, OrderedPointSet, Point2};
use crate::error::{Axis, Error, Result};

/// Per-stair-point goodness flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StairFlags {
    pub good: bool,
    pub left_good: bool,
    pub right_good: bool,
}

impl StairFlags {
    pub const GOOD: StairFlags = StairFlags { good: true, left_good: true, right_good: true };
    pub const LEFT: StairFlags = StairFlags { good: false, left_good: true, right_good: false };
    pub const RIGHT: StairFlags = StairFlags { good: false, left_good: false, right_good: true };

    /// `self` sets every flag `other` sets.
    pub fn covers(self, other: StairFlags) -> bool {
        (self.good || !other.good) && (self.left_good || !other.left_good) && (self.right_good || !other.right_good)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Below,
    Stair,
    Above,
}

/// One operation, with participant ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Op {
    /// `p` above and not good; `s` the stair-point it is joined to.
    #[serde(rename = "1Above")]
    Above { p: usize, s: usize },
    /// `q` northeast of `p`, both below.
    #[serde(rename = "2Comparable")]
    Comparable { p: usize, q: usize },
    /// Four below-points in increasing x.
    #[serde(rename = "4Incomparable")]
    Incomparable { q: [usize; 4] },
    /// Neighboring stair-points `s1` (left) and `s2`, and `p` in their box.
    #[serde(rename = "1Box")]
    Box { s1: usize, s2: usize, p: usize },
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Above { .. } => "1Above",
            Op::Comparable { .. } => "2Comparable",
            Op::Incomparable { .. } => "4Incomparable",
            Op::Box { .. } => "1Box",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Above { p, s } => write!(f, "1Above(p={p}, s={s})"),
            Op::Comparable { p, q } => write!(f, "2Comparable(p={p}, q={q})"),
            Op::Incomparable { q } => write!(f, "4Incomparable({}, {}, {}, {})", q[0], q[1], q[2], q[3]),
            Op::Box { s1, s2, p } => write!(f, "1Box(s1={s1}, s2={s2}, p={p})"),
        }
    }
}

/// A fired operation and the arrival time it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub time: usize,
    #[serde(flatten)]
    pub op: Op,
}

/// A forest edge and the arrival time at which it was added.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimedEdge {
    pub a: usize,
    pub b: usize,
    pub time: usize,
}

/// A total or partial assignment of colors 0/1 to vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoColoring(Vec<Option<u8>>);

impl TwoColoring {
    pub fn total(colors: Vec<u8>) -> Self {
        TwoColoring(colors.into_iter().map(|c| Some(c & 1)).collect())
    }

    pub fn partial(colors: Vec<Option<u8>>) -> Self {
        TwoColoring(colors)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.0.get(v).copied().flatten()
    }

    pub fn uncolored(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_none()).collect()
    }

    /// The colors as a plain vector, or the uncolored ids as an error.
    pub fn as_total(&self) -> Result<Vec<u8>> {
        let missing = self.uncolored();
        if !missing.is_empty() {
            return Err(Error::PartialColoring(missing));
        }
        Ok(self.0.iter().map(|c| c.expect("checked")).collect())
    }
}

#[derive(Clone, Debug)]
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn push(&mut self) {
        self.parent.push(self.parent.len());
        self.size.push(1);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_ro(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns the new root, or `None` if already joined.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return None;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        Some(a)
    }
}

/// The full algorithm state at some time `t`.
#[derive(Clone, Debug)]
pub struct StaircaseState<K> {
    xs: Vec<K>,
    ys: Vec<K>,
    role: Vec<Role>,
    flags: Vec<StairFlags>,
    stairs: BTreeMap<K, usize>,
    below: BTreeMap<K, usize>,
    used_x: BTreeSet<K>,
    used_y: BTreeSet<K>,
    dsu: Dsu,
    comp_below: Vec<Option<usize>>,
    edges: Vec<TimedEdge>,
    adj: Vec<Vec<usize>>,
    trace: Vec<TraceEntry>,
    fresh: Option<usize>,
}

impl<K: Ord + Clone + fmt::Debug> Default for StaircaseState<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone + fmt::Debug> StaircaseState<K> {
    /// The empty state at time 0.
    pub fn new() -> Self {
        StaircaseState {
            xs: Vec::new(),
            ys: Vec::new(),
            role: Vec::new(),
            flags: Vec::new(),
            stairs: BTreeMap::new(),
            below: BTreeMap::new(),
            used_x: BTreeSet::new(),
            used_y: BTreeSet::new(),
            dsu: Dsu { parent: Vec::new(), size: Vec::new() },
            comp_below: Vec::new(),
            edges: Vec::new(),
            adj: Vec::new(),
            trace: Vec::new(),
            fresh: None,
        }
    }

    /// Number of arrived points, i.e. the current time.
    pub fn time(&self) -> usize {
        self.xs.len()
    }

    pub fn x(&self, id: usize) -> &K {
        &self.xs[id]
    }

    pub fn y(&self, id: usize) -> &K {
        &self.ys[id]
    }

    pub fn role(&self, id: usize) -> Role {
        self.role[id]
    }

    /// Flags of a stair-point; `None` for other points.
    pub fn flags(&self, id: usize) -> Option<StairFlags> {
        (self.role[id] == Role::Stair).then_some(self.flags[id])
    }

    /// Stair-point ids in increasing x.
    pub fn staircase(&self) -> Vec<usize> {
        self.stairs.values().copied().collect()
    }

    /// Below-point ids in increasing x.
    pub fn below_points(&self) -> Vec<usize> {
        self.below.values().copied().collect()
    }

    pub fn above_points(&self) -> Vec<usize> {
        (0..self.time()).filter(|&i| self.role[i] == Role::Above).collect()
    }

    pub fn edges(&self) -> &[TimedEdge] {
        &self.edges
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adj[id]
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn component(&self, id: usize) -> usize {
        self.dsu.find_ro(id)
    }

    /// The below-point of the component containing `id`, if any.
    pub fn component_below(&self, id: usize) -> Option<usize> {
        self.comp_below[self.component(id)]
    }

    /// Left and right neighbors of a stair-point on the staircase.
    pub fn stair_neighbors(&self, id: usize) -> (Option<usize>, Option<usize>) {
        let x = &self.xs[id];
        let left = self.stairs.range(..x).next_back().map(|(_, &i)| i);
        let right =
            self.stairs.range((std::ops::Bound::Excluded(x), std::ops::Bound::Unbounded)).next().map(|(_, &i)| i);
        (left, right)
    }

    fn sw(&self, a: usize, b: usize) -> bool {
        self.xs[a] < self.xs[b] && self.ys[a] < self.ys[b]
    }

    /// Adds a point without running any operation; returns its id.
    pub fn insert(&mut self, x: K, y: K) -> Result<usize> {
        let id = self.time();
        if self.used_x.contains(&x) {
            let other = self.xs.iter().position(|v| v == &x).expect("x is recorded");
            return Err(Error::CoordinateCollision { axis: Axis::X, first: other, second: id });
        }
        if self.used_y.contains(&y) {
            let other = self.ys.iter().position(|v| v == &y).expect("y is recorded");
            return Err(Error::CoordinateCollision { axis: Axis::Y, first: other, second: id });
        }
        let above = self.stairs.range(..&x).next_back().is_some_and(|(_, &s)| self.ys[s] < y);
        self.used_x.insert(x.clone());
        self.used_y.insert(y.clone());
        self.xs.push(x.clone());
        self.ys.push(y);
        self.flags.push(StairFlags::default());
        self.adj.push(Vec::new());
        self.dsu.push();
        if above {
            self.role.push(Role::Above);
            self.comp_below.push(None);
        } else {
            self.role.push(Role::Below);
            self.below.insert(x, id);
            self.comp_below.push(Some(id));
        }
        self.fresh = Some(id);
        Ok(id)
    }

    /// Adds a point and saturates.
    pub fn arrive(&mut self, x: K, y: K) -> Result<usize> {
        let id = self.insert(x, y)?;
        self.saturate()?;
        Ok(id)
    }

    /// Applies operations in priority order until none is applicable.
    pub fn saturate(&mut self) -> Result<usize> {
        let mut fired = 0;
        while self.step()?.is_some() {
            fired += 1;
            if fired > self.time() {
                return Err(Error::internal(format!("saturation at time {} fired {fired} operations", self.time())));
            }
        }
        Ok(fired)
    }

    /// Applies the highest-priority applicable operation, if any.
    pub fn step(&mut self) -> Result<Option<Op>> {
        match self.next_op() {
            Some(op) => {
                self.apply(op)?;
                Ok(Some(op))
            }
            None => Ok(None),
        }
    }

    /// The operation [`step`](Self::step) would apply.
    pub fn next_op(&self) -> Option<Op> {
        self.find_comparable()
            .or_else(|| self.find_incomparable())
            .or_else(|| self.find_box())
            .or_else(|| self.find_above())
    }

    /// Whether `p` is good: every wedge containing `p` contains both ends
    /// of an edge. The smallest wedge containing `p` holds exactly the points
    /// dominated by `p`, so this asks for an edge whose corner is dominated.
    pub fn is_good(&self, p: usize) -> bool {
        self.edge_corner_dominated(&self.xs[p], &self.ys[p])
    }

    /// Whether every wedge containing both `a` and `b` contains an edge.
    pub fn is_pair_good(&self, a: usize, b: usize) -> bool {
        let x = std::cmp::max(&self.xs[a], &self.xs[b]);
        let y = std::cmp::max(&self.ys[a], &self.ys[b]);
        self.edge_corner_dominated(x, y)
    }

    fn edge_corner_dominated(&self, x: &K, y: &K) -> bool {
        self.edges.iter().any(|e| {
            std::cmp::max(&self.xs[e.a], &self.xs[e.b]) <= x && std::cmp::max(&self.ys[e.a], &self.ys[e.b]) <= y
        })
    }

    fn find_comparable(&self) -> Option<Op> {
        let f = self.fresh?;
        if self.role[f] != Role::Below {
            return None;
        }
        let mut best: Option<(usize, usize)> = None;
        for &o in self.below.values() {
            let pair = if self.sw(f, o) {
                (f, o)
            } else if self.sw(o, f) {
                (o, f)
            } else {
                continue;
            };
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        }
        best.map(|(p, q)| Op::Comparable { p, q })
    }

    /// Lowest stair-point y among stair-points with x below `x`.
    fn lowest_stair_left_of(&self, x: &K) -> Option<&K> {
        self.stairs.range(..x).next_back().map(|(_, &s)| &self.ys[s])
    }

    fn find_incomparable(&self) -> Option<Op> {
        // Below-points form an antichain here, so they are sorted by x with
        // decreasing y, and the smallest wedge around four consecutive ones
        // has apex just beyond (q4.x, q1.y). That wedge lies below the
        // staircase iff no stair-point is strictly inside it.
        let below: Vec<usize> = self.below.values().copied().collect();
        let mut best: Option<[usize; 4]> = None;
        for w in below.windows(4) {
            let blocked = self.lowest_stair_left_of(&self.xs[w[3]]).is_some_and(|y| y < &self.ys[w[0]]);
            if blocked {
                continue;
            }
            let q = [w[0], w[1], w[2], w[3]];
            if best.is_none_or(|b| q < b) {
                best = Some(q);
            }
        }
        best.map(|q| Op::Incomparable { q })
    }

    fn find_box(&self) -> Option<Op> {
        let stairs: Vec<usize> = self.stairs.values().copied().collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for w in stairs.windows(2) {
            let (s1, s2) = (w[0], w[1]);
            let (f1, f2) = (self.flags[s1], self.flags[s2]);
            if !(f1.left_good && !f1.right_good && f2.right_good && !f2.left_good) {
                continue;
            }
            let range = (std::ops::Bound::Excluded(&self.xs[s1]), std::ops::Bound::Excluded(&self.xs[s2]));
            for (_, &p) in self.below.range::<K, _>(range) {
                if self.ys[p] > self.ys[s2] && self.ys[p] < self.ys[s1] {
                    let cand = (s1, s2, p);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        best.map(|(s1, s2, p)| Op::Box { s1, s2, p })
    }

    fn find_above(&self) -> Option<Op> {
        let p = self.fresh?;
        if self.role[p] != Role::Above || self.is_good(p) {
            return None;
        }
        let s = self.stair_sw_with_largest_x(p)?;
        Some(Op::Above { p, s })
    }

    fn stair_sw_with_largest_x(&self, p: usize) -> Option<usize> {
        self.stairs.range(..&self.xs[p]).next_back().map(|(_, &s)| s).filter(|&s| self.ys[s] < self.ys[p])
    }

    fn not_applicable(op: &Op, reason: impl Into<String>) -> Error {
        Error::not_applicable(op.name(), reason)
    }

    fn check_ids(&self, op: &Op, ids: &[usize]) -> Result<()> {
        let mut seen = ids.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != ids.len() {
            return Err(Self::not_applicable(op, "participants must be distinct"));
        }
        match ids.iter().find(|&&i| i >= self.time()) {
            Some(&i) => Err(Error::VertexOutOfRange { id: i, n: self.time() }),
            None => Ok(()),
        }
    }

    fn below_antichain(&self) -> bool {
        let ys: Vec<&K> = self.below.values().map(|&i| &self.ys[i]).collect();
        ys.windows(2).all(|w| w[0] > w[1])
    }

    /// Validates the preconditions of `op` against the current state.
    pub fn check_applicable(&self, op: &Op) -> Result<()> {
        let role = |i: usize| self.role[i];
        match *op {
            Op::Above { p, s } => {
                self.check_ids(op, &[p, s])?;
                if role(p) != Role::Above {
                    return Err(Self::not_applicable(op, format!("{p} is not an above-point")));
                }
                if self.is_good(p) {
                    return Err(Self::not_applicable(op, format!("{p} is already good")));
                }
                if role(s) != Role::Stair || !self.sw(s, p) {
                    return Err(Self::not_applicable(op, format!("{s} is not a stair-point SW of {p}")));
                }
            }
            Op::Comparable { p, q } => {
                self.check_ids(op, &[p, q])?;
                if role(p) != Role::Below || role(q) != Role::Below {
                    return Err(Self::not_applicable(op, "both points must be below the staircase"));
                }
                if !self.sw(p, q) {
                    return Err(Self::not_applicable(op, format!("{q} is not NE of {p}")));
                }
            }
            Op::Incomparable { q } => {
                self.check_ids(op, &q)?;
                if q.iter().any(|&i| role(i) != Role::Below) {
                    return Err(Self::not_applicable(op, "all four points must be below the staircase"));
                }
                if !self.below_antichain() {
                    return Err(Self::not_applicable(op, "some below-points are comparable"));
                }
                if !q.windows(2).all(|w| self.xs[w[0]] < self.xs[w[1]]) {
                    return Err(Self::not_applicable(op, "points must be given in increasing x"));
                }
                if self.lowest_stair_left_of(&self.xs[q[3]]).is_some_and(|y| y < &self.ys[q[0]]) {
                    return Err(Self::not_applicable(op, "the wedge is not below the staircase"));
                }
            }
            Op::Box { s1, s2, p } => {
                self.check_ids(op, &[s1, s2, p])?;
                if !self.below_antichain() {
                    return Err(Self::not_applicable(op, "some below-points are comparable"));
                }
                if role(s1) != Role::Stair || role(s2) != Role::Stair {
                    return Err(Self::not_applicable(op, "s1 and s2 must be stair-points"));
                }
                if self.stair_neighbors(s1).1 != Some(s2) {
                    return Err(Self::not_applicable(op, "s2 must be the right neighbor of s1"));
                }
                let (f1, f2) = (self.flags[s1], self.flags[s2]);
                if !(f1.left_good && !f1.right_good) {
                    return Err(Self::not_applicable(op, "s1 must be left-good and not right-good"));
                }
                if !(f2.right_good && !f2.left_good) {
                    return Err(Self::not_applicable(op, "s2 must be right-good and not left-good"));
                }
                let inside = self.xs[s1] < self.xs[p]
                    && self.xs[p] < self.xs[s2]
                    && self.ys[s2] < self.ys[p]
                    && self.ys[p] < self.ys[s1];
                if !inside {
                    return Err(Self::not_applicable(op, format!("{p} is not inside the box")));
                }
                if role(p) != Role::Below {
                    return Err(Error::internal(format!("point {p} inside a box is not a below-point")));
                }
                if self.dsu.find_ro(p) == self.dsu.find_ro(s2) {
                    return Err(Error::internal(format!("1Box: {p} and {s2} already share a component")));
                }
            }
        }
        Ok(())
    }

    /// Applies `op` after checking its preconditions.
    pub fn apply(&mut self, op: Op) -> Result<()> {
        self.check_applicable(&op)?;
        match op {
            Op::Above { p, s } => {
                self.join(p, s)?;
            }
            Op::Comparable { p, q } => {
                self.join(p, q)?;
                let root = self.dsu.find(p);
                self.comp_below[root] = Some(p);
                self.promote(q, StairFlags::GOOD);
            }
            Op::Incomparable { q } => {
                self.join(q[0], q[1])?;
                let r = self.dsu.find(q[0]);
                self.comp_below[r] = Some(q[0]);
                self.join(q[2], q[3])?;
                let r = self.dsu.find(q[3]);
                self.comp_below[r] = Some(q[3]);
                self.promote(q[1], StairFlags::LEFT);
                self.promote(q[2], StairFlags::RIGHT);
            }
            Op::Box { s1: _, s2, p } => {
                let kept = self.component_below(s2);
                self.join(p, s2)?;
                let r = self.dsu.find(p);
                self.comp_below[r] = kept;
                self.promote(p, StairFlags::RIGHT);
            }
        }
        self.trace.push(TraceEntry { time: self.time(), op });
        Ok(())
    }

    fn join(&mut self, a: usize, b: usize) -> Result<()> {
        let kept = self.component_below(a).or(self.component_below(b));
        let root = self.dsu.union(a, b).ok_or_else(|| Error::internal(format!("edge {a}-{b} would close a cycle")))?;
        self.comp_below[root] = kept;
        self.edges.push(TimedEdge { a, b, time: self.time() });
        self.adj[a].push(b);
        self.adj[b].push(a);
        Ok(())
    }

    /// Moves a below-point onto the staircase; whatever is now NE of it
    /// becomes an above-point.
    fn promote(&mut self, id: usize, flags: StairFlags) {
        let x = self.xs[id].clone();
        self.below.remove(&x);
        self.role[id] = Role::Stair;
        self.flags[id] = flags;
        let lifted_stairs: Vec<usize> = self
            .stairs
            .range((std::ops::Bound::Excluded(&x), std::ops::Bound::Unbounded))
            .map(|(_, &s)| s)
            .take_while(|&s| self.ys[s] > self.ys[id])
            .collect();
        for s in lifted_stairs {
            self.stairs.remove(&self.xs[s]);
            self.role[s] = Role::Above;
            self.flags[s] = StairFlags::default();
        }
        let lifted_below: Vec<usize> = self
            .below
            .range((std::ops::Bound::Excluded(&x), std::ops::Bound::Unbounded))
            .map(|(_, &b)| b)
            .filter(|&b| self.ys[b] > self.ys[id])
            .collect();
        for b in lifted_below {
            self.below.remove(&self.xs[b]);
            self.role[b] = Role::Above;
            let r = self.dsu.find(b);
            if self.comp_below[r] == Some(b) {
                self.comp_below[r] = None;
            }
        }
        self.stairs.insert(x, id);
    }

    /// Proper two-coloring of the forest: in each tree the smallest id gets
    /// color 0 and colors alternate along edges.
    pub fn finalize(&self) -> Result<TwoColoring> {
        let n = self.time();
        let mut color: Vec<Option<u8>> = vec![None; n];
        let mut stack = Vec::new();
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            stack.push((root, usize::MAX));
            while let Some((v, parent)) = stack.pop() {
                let c = color[v].expect("pushed vertices are colored");
                for &w in &self.adj[v] {
                    if w == parent {
                        continue;
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(1 - c);
                            stack.push((w, v));
                        }
                        Some(_) => {
                            return Err(Error::internal(format!("forest has a cycle through {v}-{w}")));
                        }
                    }
                }
            }
        }
        Ok(TwoColoring::partial(color))
    }

    /// Exhaustive goodness test: every wedge class containing `p` contains
    /// both ends of an edge. Enumerates apexes from the arrived coordinates.
    pub fn debug_check_good(&self, p: usize) -> bool {
        self.debug_check_wedges(&[p])
    }

    /// Exhaustive test that every wedge class containing all of `ids`
    /// contains both ends of an edge.
    pub fn debug_check_wedges(&self, ids: &[usize]) -> bool {
        let n = self.time();
        for ax in 0..n {
            for ay in 0..n {
                let (x, y) = (&self.xs[ax], &self.ys[ay]);
                let inside = |i: usize| &self.xs[i] <= x && &self.ys[i] <= y;
                if !ids.iter().all(|&i| inside(i)) {
                    continue;
                }
                if !self.edges.iter().any(|e| inside(e.a) && inside(e.b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Recomputes Properties 1 to 4, the staircase geometry, and the tracked
    /// flags from scratch.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.time();
        let fail = |msg: String| Err(Error::internal(msg));
        let stairs = self.staircase();
        for w in stairs.windows(2) {
            if self.ys[w[0]] <= self.ys[w[1]] {
                return fail(format!("stair-points {} and {} are comparable", w[0], w[1]));
            }
        }
        for i in 0..n {
            let is_above = stairs.iter().any(|&s| self.sw(s, i));
            let expect = if self.role[i] == Role::Stair {
                Role::Stair
            } else if is_above {
                Role::Above
            } else {
                Role::Below
            };
            if expect != self.role[i] {
                return fail(format!("point {i} is tracked as {:?} but is {expect:?}", self.role[i]));
            }
            if (self.role[i] == Role::Below) != self.below.values().any(|&b| b == i) {
                return fail(format!("below index disagrees on point {i}"));
            }
        }
        // Property 1
        for i in self.above_points() {
            if !self.is_good(i) {
                return fail(format!("above-point {i} is not good"));
            }
        }
        // Property 2, with the tracked flags checked against the geometry.
        for &s in &stairs {
            let f = self.flags[s];
            if !(f.good || f.left_good || f.right_good) {
                return fail(format!("stair-point {s} carries no flag"));
            }
            if f.good && !(f.left_good && f.right_good) {
                return fail(format!("stair-point {s} is good but not left- and right-good"));
            }
            if f.good && !self.is_good(s) {
                return fail(format!("stair-point {s} is flagged good but is not"));
            }
            let (left, right) = self.stair_neighbors(s);
            if let (true, Some(l)) = (f.left_good, left) {
                if !self.is_pair_good(l, s) {
                    return fail(format!("stair-point {s} is flagged left-good but is not"));
                }
            }
            if let (true, Some(r)) = (f.right_good, right) {
                if !self.is_pair_good(s, r) {
                    return fail(format!("stair-point {s} is flagged right-good but is not"));
                }
            }
        }
        // Properties 3 and 4
        let mut fresh = Dsu { parent: (0..n).collect(), size: vec![1; n] };
        for e in &self.edges {
            if fresh.union(e.a, e.b).is_none() {
                return fail(format!("edge {}-{} closes a cycle", e.a, e.b));
            }
        }
        let mut below_of: BTreeMap<usize, usize> = BTreeMap::new();
        for &b in self.below.values() {
            let root = fresh.find(b);
            if let Some(other) = below_of.insert(root, b) {
                return fail(format!("below-points {other} and {b} share a component"));
            }
        }
        for i in 0..n {
            let tracked = self.component_below(i);
            let actual = below_of.get(&fresh.find(i)).copied();
            if tracked != actual {
                return fail(format!("component of {i}: tracked below-point {tracked:?}, actual {actual:?}"));
            }
        }
        // Lemma 2.7 in its tracked-flag form.
        for &s in &stairs {
            let f = self.flags[s];
            if f.right_good && !f.left_good {
                if let Some(b) = self.component_below(s) {
                    if self.ys[b] >= self.ys[s] {
                        return fail(format!("below-point {b} is not lower than right-good stair-point {s}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl StaircaseState<Coord> {
    /// Adds an exact point; its id must equal the current time.
    pub fn arrive_point(&mut self, p: &Point2) -> Result<usize> {
        if p.id != self.time() {
            return Err(Error::BadOrder(self.time()));
        }
        self.arrive(p.x.clone(), p.y.clone())
    }
}

/// Cross-operation checks: flag monotonicity and the rule that a component
/// of a stair-point that has lost its below-point never regains one.
#[derive(Clone, Debug, Default)]
pub struct Auditor {
    flags: BTreeMap<usize, StairFlags>,
    lost: BTreeSet<usize>,
    pub operations_checked: usize,
}

impl Auditor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Checks `state` right after an operation and records what later
    /// operations must preserve.
    pub fn observe<K: Ord + Clone + fmt::Debug>(&mut self, state: &StaircaseState<K>) -> Result<()> {
        state.check_invariants()?;
        for (&s, &old) in &self.flags {
            if let Some(now) = state.flags(s) {
                if !now.covers(old) {
                    return Err(Error::internal(format!("stair-point {s} lost a flag: {old:?} -> {now:?}")));
                }
            }
        }
        for &s in &self.lost {
            if let Some(b) = state.component_below(s) {
                return Err(Error::internal(format!(
                    "component of {s} regained below-point {b} after losing its last one"
                )));
            }
        }
        self.flags = state.staircase().into_iter().map(|s| (s, state.flags[s])).collect();
        for s in state.staircase() {
            if state.component_below(s).is_none() {
                self.lost.insert(s);
            }
        }
        self.operations_checked += 1;
        Ok(())
    }

    /// Inserts a point and saturates, checking after every operation.
    pub fn arrive<K: Ord + Clone + fmt::Debug>(&mut self, state: &mut StaircaseState<K>, x: K, y: K) -> Result<usize> {
        let id = state.insert(x, y)?;
        let mut fired = 0;
        while state.step()?.is_some() {
            fired += 1;
            if fired > state.time() {
                return Err(Error::internal("saturation does not terminate"));
            }
            self.observe(state)?;
        }
        // A saturated state satisfies everything, operation or not.
        self.observe(state)?;
        Ok(id)
    }
}

/// The outcome of running the builder over a whole point set.
#[derive(Clone, Debug)]
pub struct ColoringRun {
    pub coloring: TwoColoring,
    pub state: StaircaseState<u32>,
}

impl ColoringRun {
    pub fn colors(&self) -> Vec<u8> {
        self.coloring.as_total().expect("finalize colors every vertex")
    }
}

/// Runs the builder in rank space over `points` in arrival order and colors
/// the final forest.
pub fn color_points(points: &OrderedPointSet) -> Result<ColoringRun> {
    let mut state = StaircaseState::new();
    for (x, y) in points.ranks() {
        state.arrive(x, y)?;
    }
    let coloring = state.finalize()?;
    Ok(ColoringRun { coloring, state })
}

/// As [`color_points`], checking every invariant after every operation.
pub fn color_points_audited(points: &OrderedPointSet) -> Result<(ColoringRun, Auditor)> {
    let mut state = StaircaseState::new();
    let mut auditor = Auditor::new();
    for (x, y) in points.ranks() {
        auditor.arrive(&mut state, x, y)?;
    }
    let coloring = state.finalize()?;
    Ok((ColoringRun { coloring, state }, auditor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(pts: &[(u32, u32)]) -> StaircaseState<u32> {
        let mut s = StaircaseState::new();
        for &(x, y) in pts {
            s.arrive(x, y).unwrap();
            s.check_invariants().unwrap();
        }
        s
    }

    #[test]
    fn single_point_is_below() {
        let s = run(&[(0, 0)]);
        assert_eq!(s.role(0), Role::Below);
        assert!(s.edges().is_empty());
    }

    #[test]
    fn comparable_pair() {
        let s = run(&[(0, 0), (1, 1)]);
        assert_eq!(s.trace()[0].op, Op::Comparable { p: 0, q: 1 });
        assert_eq!(s.role(1), Role::Stair);
        assert_eq!(s.flags(1), Some(StairFlags::GOOD));
        assert_eq!(s.role(0), Role::Below);
    }

    #[test]
    fn four_antichain() {
        let s = run(&[(0, 3), (1, 2), (2, 1), (3, 0)]);
        assert_eq!(s.trace().len(), 1);
        assert_eq!(s.trace()[0].op, Op::Incomparable { q: [0, 1, 2, 3] });
        assert_eq!(s.flags(1), Some(StairFlags::LEFT));
        assert_eq!(s.flags(2), Some(StairFlags::RIGHT));
        assert!(s.debug_check_wedges(&[0, 1]));
        assert!(!s.debug_check_wedges(&[1, 2]));
    }

    #[test]
    fn finalize_alternates() {
        let s = run(&[(0, 0), (1, 1)]);
        let c = s.finalize().unwrap();
        assert_eq!(c.as_total().unwrap(), vec![0, 1]);
    }

    #[test]
    fn collisions_rejected() {
        let mut s = StaircaseState::new();
        s.arrive(0u32, 0).unwrap();
        assert!(s.arrive(0, 1).is_err());
        assert!(s.arrive(1, 0).is_err());
        assert_eq!(s.time(), 1);
    }
}
