//! Triangles, their translates and homothets, and the enumeration of point
//! subsets they cut out.
//!
//! Every computation runs in the *edge frame* of the triangle: for a point
//! `p`, `λ_i(p)` is twice the signed area of the triangle spanned by the edge
//! opposite vertex `i` and `p`. The three values always sum to twice the area
//! of the triangle, and the open triangle is `{λ_0 > 0, λ_1 > 0, λ_2 > 0}`.
//! A translate by `v` becomes `{λ_i > c_i}` with `c_i = λ_i(v) - λ_i(0)`,
//! so `Σ c_i = 0`; a homothet of ratio `s` has `Σ c_i = (1 - s) · area2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coord::{common_denominator, scaled_integer, Coord};
use crate::error::{Error, Result};

pub type Vec2 = (Coord, Coord);

/// Twice the signed area of `(a, b, c)`; positive when counterclockwise.
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> Coord {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// A non-degenerate triangle with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleShape {
    #[serde(rename = "vertices")]
    v: [Vec2; 3],
}

impl<'de> Deserialize<'de> for TriangleShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: [Vec2; 3],
        }
        let [a, b, c] = Raw::deserialize(d)?.vertices;
        TriangleShape::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

impl TriangleShape {
    /// Reorders clockwise input to counterclockwise; rejects collinear input.
    pub fn new(v0: Vec2, v1: Vec2, v2: Vec2) -> Result<Self> {
        let area = orient(&v0, &v1, &v2);
        if area.is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        let v = if area.is_positive() { [v0, v1, v2] } else { [v0, v2, v1] };
        Ok(TriangleShape { v })
    }

    pub fn from_ints(v: [(i64, i64); 3]) -> Result<Self> {
        let c = |(x, y): (i64, i64)| (Coord::int(x), Coord::int(y));
        Self::new(c(v[0]), c(v[1]), c(v[2]))
    }

    /// The right triangle `(0,0), (1,0), (0,1)`.
    pub fn unit_right() -> Self {
        Self::from_ints([(0, 0), (1, 0), (0, 1)]).expect("non-degenerate")
    }

    pub fn vertices(&self) -> &[Vec2; 3] {
        &self.v
    }

    /// Twice the area; always positive.
    pub fn area2(&self) -> Coord {
        orient(&self.v[0], &self.v[1], &self.v[2])
    }

    /// Edge-frame coordinates of `p`.
    pub fn lambda(&self, p: &Vec2) -> [Coord; 3] {
        let v = &self.v;
        [orient(&v[1], &v[2], p), orient(&v[2], &v[0], p), orient(&v[0], &v[1], p)]
    }

    /// Open containment of `p` in the translate `self + t`.
    pub fn translate_contains(&self, t: &Vec2, p: &Vec2) -> bool {
        let q = (&p.0 - &t.0, &p.1 - &t.1);
        self.lambda(&q).iter().all(Coord::is_positive)
    }

    /// Translation vector `t` whose translate is `{λ_i > c_i}`; `c` must sum
    /// to zero.
    pub fn translate_from_frame(&self, c: &[Coord; 3]) -> Vec2 {
        // λ_i(t) - λ_i(0) is linear in t: for the edge (a, b) it is
        // (b.x - a.x) t.y - (b.y - a.y) t.x.
        let v = &self.v;
        let row = |a: &Vec2, b: &Vec2| (-(&b.1 - &a.1), &b.0 - &a.0);
        let (a0, b0) = row(&v[1], &v[2]);
        let (a1, b1) = row(&v[2], &v[0]);
        let det = &a0 * &b1 - &a1 * &b0;
        let x = (&c[0] * &b1 - &c[1] * &b0) / det.clone();
        let y = (&a0 * &c[1] - &a1 * &c[0]) / det;
        (x, y)
    }

    /// Vertices of the homothet `{λ_i ≥ c_i}` (scaled copy of `self`).
    pub fn homothet_vertices(&self, c: &[Coord; 3]) -> [Vec2; 3] {
        let k = self.area2();
        let v = &self.v;
        let vertex = |i: usize| -> Vec2 {
            let mut w = c.clone();
            w[i] = &(&k - &c[(i + 1) % 3]) - &c[(i + 2) % 3];
            let x = (&w[0] * &v[0].0 + &w[1] * &v[1].0 + &w[2] * &v[2].0) / k.clone();
            let y = (&w[0] * &v[0].1 + &w[1] * &v[1].1 + &w[2] * &v[2].1) / k.clone();
            (x, y)
        };
        [vertex(0), vertex(1), vertex(2)]
    }
}

/// A subset cut out by a translate, with a witness translation vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateClass {
    pub members: Vec<usize>,
    pub witness: Vec2,
}

/// Bit set over point indices, used as a hash key for classes.
type Bits = Vec<u64>;

fn bits_to_members(bits: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            out.push(w * 64 + b);
            word &= word - 1;
        }
    }
    out
}

// Nudge directions in the frame, scaled by 4: the six edge directions of the
// line arrangement and the six directions between them.
const NUDGES: [[i8; 3]; 13] = [
    [0, 0, 0],
    [1, -1, 0],
    [-1, 1, 0],
    [1, 0, -1],
    [-1, 0, 1],
    [0, 1, -1],
    [0, -1, 1],
    [2, -1, -1],
    [-2, 1, 1],
    [-1, 2, -1],
    [1, -2, 1],
    [-1, -1, 2],
    [1, 1, -2],
];

/// Every distinct nonempty subset of `points` cut out by an open translate of
/// `shape`, each with a witness translation vector. Point `i` of the slice is
/// reported as index `i`.
///
/// `p ∈ shape + t` iff `t ∈ p - shape`, so the classes are the faces of the
/// arrangement of the reflected copies. In the edge frame that arrangement
/// is three families of parallel lines; after scaling to integers, every
/// face is met by some arrangement vertex moved by a quarter unit along one
/// of twelve directions (or not moved at all).
pub fn enumerate_translate_classes(shape: &TriangleShape, points: &[Vec2]) -> Vec<TranslateClass> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let lambdas: Vec<[Coord; 3]> = points.iter().map(|p| shape.lambda(p)).collect();
    let den = common_denominator(lambdas.iter().flatten());
    let lam: Vec<[BigInt; 3]> = lambdas.iter().map(|l| [0, 1, 2].map(|i| scaled_integer(&l[i], &den))).collect();

    let words = n.div_ceil(64);
    let mut found: HashMap<Bits, [BigInt; 3]> = HashMap::new();
    let mut vertex = |c: [BigInt; 3]| {
        let mut sets: Vec<Bits> = vec![vec![0u64; words]; NUDGES.len()];
        for (k, l) in lam.iter().enumerate() {
            let cmp = [0, 1, 2].map(|i| l[i].cmp(&c[i]));
            for (d, dir) in NUDGES.iter().enumerate() {
                let inside = (0..3).all(|i| match cmp[i] {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => dir[i] < 0,
                });
                if inside {
                    sets[d][k / 64] |= 1 << (k % 64);
                }
            }
        }
        for (d, set) in sets.into_iter().enumerate() {
            if set.iter().any(|&w| w != 0) {
                found
                    .entry(set)
                    .or_insert_with(|| [0, 1, 2].map(|i| BigInt::from(4) * &c[i] + BigInt::from(NUDGES[d][i])));
            }
        }
    };
    for a in &lam {
        for b in &lam {
            vertex([a[0].clone(), b[1].clone(), -&a[0] - &b[1]]);
            vertex([a[0].clone(), -&a[0] - &b[2], b[2].clone()]);
            vertex([-&a[1] - &b[2], a[1].clone(), b[2].clone()]);
        }
    }

    let scale = Coord::from_bigints(BigInt::from(1), BigInt::from(4) * &den).expect("nonzero");
    let mut out: Vec<TranslateClass> = found
        .into_iter()
        .map(|(bits, c4)| {
            let c = c4.map(|v| Coord::from_bigints(v, BigInt::from(1)).expect("nonzero") * &scale);
            TranslateClass { members: bits_to_members(&bits), witness: shape.translate_from_frame(&c) }
        })
        .collect();
    out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    out
}

/// Every distinct nonempty subset of `points` cut out by a positive homothet
/// of `shape`, each with the three vertices of a closed witness homothet.
///
/// Candidates are the homothets whose three sides each pass through a point;
/// containment is tested against the explicit vertices, so this shares no
/// code path with the octant embedding it is used to certify. Cubic in the
/// number of points; meant for small instances.
pub fn enumerate_homothet_classes(shape: &TriangleShape, points: &[Vec2]) -> Vec<(Vec<usize>, [Vec2; 3])> {
    let k = shape.area2();
    let lambdas: Vec<[Coord; 3]> = points.iter().map(|p| shape.lambda(p)).collect();
    let mut found: HashMap<Vec<usize>, [Vec2; 3]> = HashMap::new();
    for a in &lambdas {
        for b in &lambdas {
            for c in &lambdas {
                let cut = [a[0].clone(), b[1].clone(), c[2].clone()];
                if &(&cut[0] + &cut[1]) + &cut[2] >= k {
                    continue;
                }
                let tri = shape.homothet_vertices(&cut);
                let members: Vec<usize> = points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| (0..3).all(|i| !orient(&tri[(i + 1) % 3], &tri[(i + 2) % 3], p).is_negative()))
                    .map(|(i, _)| i)
                    .collect();
                if !members.is_empty() {
                    found.entry(members).or_insert(tri);
                }
            }
        }
    }
    // A single point is cut out by a small enough homothet around it.
    let half = Coord::ratio(1, 2);
    for (i, l) in lambdas.iter().enumerate() {
        let eps = lambdas
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, m)| (0..3).map(|a| &l[a] - &m[a]).max().expect("three axes"))
            .min()
            .map_or(Coord::one(), |g| g * &half);
        let cut = l.clone().map(|x| x - &eps);
        found.entry(vec![i]).or_insert_with(|| shape.homothet_vertices(&cut));
    }
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vec2 {
        (Coord::int(x), Coord::int(y))
    }

    #[test]
    fn orientation_is_normalized() {
        let t = TriangleShape::new(v(0, 0), v(0, 1), v(1, 0)).unwrap();
        assert!(t.area2().is_positive());
        assert_eq!(TriangleShape::new(v(0, 0), v(1, 1), v(2, 2)), Err(Error::DegenerateTriangle));
    }

    #[test]
    fn frame_sums_to_area() {
        let t = TriangleShape::from_ints([(0, 0), (4, 1), (1, 3)]).unwrap();
        for p in [v(0, 0), v(7, -2), v(1, 1)] {
            let l = t.lambda(&p);
            assert_eq!(&(&l[0] + &l[1]) + &l[2], t.area2());
        }
    }

    #[test]
    fn witness_translates_reproduce_classes() {
        let t = TriangleShape::from_ints([(0, 0), (3, 1), (1, 2)]).unwrap();
        let pts = vec![v(0, 0), v(1, 1), v(2, 0), v(1, 3), v(-1, 1)];
        let classes = enumerate_translate_classes(&t, &pts);
        assert!(!classes.is_empty());
        for c in &classes {
            let got: Vec<usize> = (0..pts.len()).filter(|&i| t.translate_contains(&c.witness, &pts[i])).collect();
            assert_eq!(got, c.members);
        }
    }

    #[test]
    fn far_apart_points_stay_separate() {
        let t = TriangleShape::unit_right();
        let classes = enumerate_translate_classes(&t, &[v(0, 0), v(10, 10)]);
        let members: Vec<Vec<usize>> = classes.into_iter().map(|c| c.members).collect();
        assert_eq!(members, vec![vec![0], vec![1]]);
    }
}
