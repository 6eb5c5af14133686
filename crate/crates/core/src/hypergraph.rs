//! Finite hypergraphs, dynamic closure, and the exact search for colorings
//! in which every large edge sees both colors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n`. Edges are sorted, duplicate-free and
/// nonempty, and the edge family has no repeated edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Normalizes every edge, drops empty edges and repeated edges, and keeps
    /// the first occurrence order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { id: bad, n });
            }
            if !e.is_empty() && seen.insert(e.clone()) {
                out.push(e);
            }
        }
        Ok(Hypergraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The edge family as a set, for order-free comparison.
    pub fn edge_set(&self) -> BTreeSet<Vec<usize>> {
        self.edges.iter().cloned().collect()
    }

    /// Whether both colors occur in every edge of size at least `m`.
    pub fn is_proper(&self, colors: &[u8], m: usize) -> bool {
        self.edges
            .iter()
            .filter(|e| e.len() >= m)
            .all(|e| e.iter().any(|&v| colors[v] == 0) && e.iter().any(|&v| colors[v] == 1))
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            edges: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        Hypergraph::new(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// A hypergraph with an arrival order on its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicHypergraph {
    pub base: Hypergraph,
    /// `order[i]` is the vertex arriving at time `i + 1`.
    pub order: Vec<usize>,
}

impl DynamicHypergraph {
    /// Whether the hypergraph is its own dynamic closure.
    pub fn is_dynamic(&self) -> bool {
        dynamic_closure(&self.base, &self.order).map(|c| c.base.edge_set() == self.base.edge_set()).unwrap_or(false)
    }
}

fn check_order(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::BadOrder(n));
    }
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::BadOrder(n));
        }
    }
    Ok(())
}

/// All nonempty traces `E ∩ {order[0], …, order[i]}` of the edges of `h`.
pub fn dynamic_closure(h: &Hypergraph, order: &[usize]) -> Result<DynamicHypergraph> {
    check_order(h.n, order)?;
    let mut arrival = vec![0; h.n];
    for (t, &v) in order.iter().enumerate() {
        arrival[v] = t;
    }
    let mut traces = Vec::new();
    for e in &h.edges {
        let mut by_time: Vec<usize> = e.clone();
        by_time.sort_by_key(|&v| arrival[v]);
        for k in 1..=by_time.len() {
            traces.push(by_time[..k].to_vec());
        }
    }
    Ok(DynamicHypergraph { base: Hypergraph::new(h.n, traces)?, order: order.to_vec() })
}

/// Effort spent by [`search_proper_two_coloring`]. Replaying the search with
/// the same hypergraph and threshold visits the same nodes in the same order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub threshold: usize,
    pub constrained_edges: usize,
    pub nodes: u64,
    pub backtracks: u64,
    pub forced: u64,
    /// Branching order over the vertices that occur in a constrained edge.
    pub order: Vec<usize>,
}

/// A coloring, if one exists, and the search statistics either way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub coloring: Option<Vec<u8>>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn is_sat(&self) -> bool {
        self.coloring.is_some()
    }
}

struct Search<'a> {
    edges: Vec<&'a [usize]>,
    incident: Vec<Vec<usize>>,
    color: Vec<Option<u8>>,
    count: Vec<[u32; 2]>,
    free: Vec<u32>,
    trail: Vec<usize>,
    order: Vec<usize>,
    stats: SearchStats,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: u8) -> bool {
        let mut queue = vec![(v, c)];
        while let Some((v, c)) = queue.pop() {
            match self.color[v] {
                Some(old) if old == c => continue,
                Some(_) => return false,
                None => {}
            }
            self.color[v] = Some(c);
            self.trail.push(v);
            for &e in &self.incident[v] {
                self.count[e][c as usize] += 1;
                self.free[e] -= 1;
            }
            for &e in &self.incident[v] {
                if self.count[e][1 - c as usize] != 0 {
                    continue;
                }
                match self.free[e] {
                    0 => return false,
                    1 => {
                        let last = self.edges[e]
                            .iter()
                            .copied()
                            .find(|&u| self.color[u].is_none())
                            .expect("one vertex is free");
                        self.stats.forced += 1;
                        queue.push((last, 1 - c));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("above mark");
            let c = self.color[v].take().expect("trail vertices are colored") as usize;
            for &e in &self.incident[v] {
                self.count[e][c] -= 1;
                self.free[e] += 1;
            }
        }
    }

    fn run(&mut self, from: usize) -> bool {
        let Some(pos) = (from..self.order.len()).find(|&i| self.color[self.order[i]].is_none()) else {
            return true;
        };
        let v = self.order[pos];
        // Swapping the colors maps colorings to colorings, so the first
        // branch point only needs one value.
        let values: &[u8] = if self.stats.nodes == 0 { &[0] } else { &[0, 1] };
        for &c in values {
            self.stats.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, c) && self.run(pos + 1) {
                return true;
            }
            self.undo(mark);
            self.stats.backtracks += 1;
        }
        false
    }
}

/// Searches for a two-coloring in which every edge with at least `m`
/// vertices contains both colors.
///
/// Depth-first over vertices by decreasing degree among those edges; when all
/// colored vertices of an edge agree and one vertex is left, that vertex is
/// forced to the other color.
pub fn search_proper_two_coloring(h: &Hypergraph, m: usize) -> SearchResult {
    let edges: Vec<&[usize]> = h.edges.iter().filter(|e| e.len() >= m.max(1)).map(Vec::as_slice).collect();
    let mut incident = vec![Vec::new(); h.n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e.iter() {
            incident[v].push(i);
        }
    }
    let mut order: Vec<usize> = (0..h.n).filter(|&v| !incident[v].is_empty()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(incident[v].len()), v));
    let stats =
        SearchStats { threshold: m, constrained_edges: edges.len(), order: order.clone(), ..SearchStats::default() };
    let mut s = Search {
        free: edges.iter().map(|e| e.len() as u32).collect(),
        count: vec![[0, 0]; edges.len()],
        edges,
        incident,
        color: vec![None; h.n],
        trail: Vec::new(),
        order,
        stats,
    };
    let sat = s.run(0);
    let coloring = sat.then(|| s.color.iter().map(|c| c.unwrap_or(0)).collect());
    SearchResult { coloring, stats: s.stats }
}

/// Default bound on the vertex count accepted by [`measure_midriff`].
pub const MIDRIFF_GUARD: usize = 30;

/// The smallest `m` for which `dh` has a two-coloring with every edge of at
/// least `m` vertices bichromatic. `guard` bounds the vertex count.
pub fn measure_midriff(dh: &DynamicHypergraph, guard: Option<usize>) -> Result<usize> {
    let limit = guard.unwrap_or(MIDRIFF_GUARD);
    if dh.base.n > limit {
        return Err(Error::SizeGuard { size: dh.base.n, guard: limit });
    }
    let top = dh.base.max_edge_size() + 1;
    Ok((1..top).find(|&m| search_proper_two_coloring(&dh.base, m).is_sat()).unwrap_or(top))
}
