//! Seeded instance generators. Every generator is a pure function of its
//! arguments and the state of the supplied RNG.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coord::{Coord, OrderedPointSet, Point2, Point3};
use crate::geom::{Interval, Octant};

/// Random integer points on a `4n × 4n` grid, mapped to rank space with ties
/// broken by arrival.
pub fn uniform<R: Rng>(rng: &mut R, n: usize) -> OrderedPointSet {
    let side = 4 * n.max(1) as i64;
    let raw: Vec<(Coord, Coord)> =
        (0..n).map(|_| (Coord::int(rng.gen_range(0..side)), Coord::int(rng.gen_range(0..side)))).collect();
    OrderedPointSet::normalized(&raw)
}

/// `n` pairwise incomparable points arriving in random order.
pub fn antichain<R: Rng>(rng: &mut R, n: usize) -> OrderedPointSet {
    let mut xs: Vec<i64> = (0..n as i64).collect();
    xs.shuffle(rng);
    OrderedPointSet::from_ints(&xs.iter().map(|&x| (x, n as i64 - 1 - x)).collect::<Vec<_>>())
        .expect("distinct by construction")
}

/// A few tight groups, each near a random chain or antichain.
pub fn clustered<R: Rng>(rng: &mut R, n: usize) -> OrderedPointSet {
    let groups = rng.gen_range(1..=4usize);
    let side = 100 * n.max(1) as i64;
    let centers: Vec<(i64, i64, bool)> =
        (0..groups).map(|_| (rng.gen_range(0..side), rng.gen_range(0..side), rng.gen())).collect();
    let raw: Vec<(Coord, Coord)> = (0..n)
        .map(|_| {
            let (cx, cy, rising) = centers[rng.gen_range(0..groups)];
            let s = rng.gen_range(-50..=50i64);
            let jitter = rng.gen_range(-8..=8i64);
            let dy = if rising { s } else { -s };
            (Coord::int(cx + s), Coord::int(cy + dy + jitter))
        })
        .collect();
    OrderedPointSet::normalized(&raw)
}

pub const SCRIPTS: [&str; 6] = ["comparable", "incomparable", "box", "above", "chain", "staircase"];

/// Fixed arrival sequences that make particular operations fire. `chain` and
/// `staircase` scale with `n`; the others ignore it.
pub fn script(name: &str, n: usize) -> Option<OrderedPointSet> {
    let pts: Vec<(i64, i64)> = match name {
        "comparable" => vec![(0, 0), (1, 1)],
        "incomparable" => vec![(0, 3), (1, 2), (2, 1), (3, 0)],
        "box" => vec![(0, 4), (1, 3), (3, 1), (4, 0), (2, 2)],
        "above" => vec![(0, 6), (2, 4), (4, 2), (6, 0), (3, 5)],
        "chain" => (0..n as i64).map(|i| (i, i)).collect(),
        "staircase" => (0..n as i64).map(|i| (i, n as i64 - 1 - i)).collect(),
        _ => return None,
    };
    Some(OrderedPointSet::from_ints(&pts).expect("distinct by construction"))
}

/// Draws integers from `lo..lo + range` never returned before on the same
/// axis.
struct FreshCoords {
    used: [HashSet<i64>; 3],
    range: i64,
}

impl FreshCoords {
    fn new(range: i64) -> Self {
        FreshCoords { used: Default::default(), range }
    }

    fn draw<R: Rng>(&mut self, rng: &mut R, axis: usize, lo: i64) -> i64 {
        loop {
            let v = rng.gen_range(lo..lo + self.range);
            if self.used[axis].insert(v) {
                return v;
            }
        }
    }
}

/// `n` points in 3-space with pairwise distinct coordinates on every axis.
pub fn points3<R: Rng>(rng: &mut R, n: usize) -> Vec<Point3> {
    let mut fresh = FreshCoords::new(20 * n.max(1) as i64);
    (0..n).map(|id| Point3::new(fresh.draw(rng, 0, 0), fresh.draw(rng, 1, 0), fresh.draw(rng, 2, 0), id)).collect()
}

/// Random octants and points where every point lies in at least `fold`
/// octants. Octants are added near under-covered points until the bound
/// holds; all coordinates are distinct per axis.
pub fn covering<R: Rng>(rng: &mut R, octants: usize, points: usize, fold: usize) -> (Vec<Octant>, Vec<Point3>) {
    let range = 1000;
    let mut fresh = FreshCoords::new(range);
    let raw: Vec<[i64; 3]> =
        (0..points).map(|_| [fresh.draw(rng, 0, 0), fresh.draw(rng, 1, 0), fresh.draw(rng, 2, 0)]).collect();
    let pts: Vec<Point3> = raw.iter().enumerate().map(|(id, c)| Point3::new(c[0], c[1], c[2], id)).collect();
    let mut octs: Vec<Octant> = (0..octants)
        .map(|id| Octant::new(fresh.draw(rng, 0, 0), fresh.draw(rng, 1, 0), fresh.draw(rng, 2, 0), id))
        .collect();
    for (p, c) in pts.iter().zip(&raw) {
        while octs.iter().filter(|o| o.contains(p)).count() < fold {
            let id = octs.len();
            octs.push(Octant::new(
                fresh.draw(rng, 0, c[0] + 1),
                fresh.draw(rng, 1, c[1] + 1),
                fresh.draw(rng, 2, c[2] + 1),
                id,
            ));
        }
    }
    (octs, pts)
}

/// `n` intervals with pairwise distinct integer endpoints.
pub fn intervals<R: Rng>(rng: &mut R, n: usize) -> Vec<Interval> {
    let mut ends: Vec<i64> = (0..2 * n as i64).collect();
    ends.shuffle(rng);
    ends.chunks(2).map(|c| Interval::new(c[0].min(c[1]), c[0].max(c[1])).expect("distinct endpoints")).collect()
}

/// `n` planar points with small-denominator rational coordinates.
pub fn points2<R: Rng>(rng: &mut R, n: usize) -> Vec<Point2> {
    (0..n)
        .map(|id| Point2::new(Coord::ratio(rng.gen_range(-60..60), 7), Coord::ratio(rng.gen_range(-60..60), 11), id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{classify_pair, Relation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antichain_is_antichain() {
        let set = antichain(&mut ChaCha8Rng::seed_from_u64(0), 9);
        for p in set.points() {
            for q in set.points() {
                if p.id != q.id {
                    let r = classify_pair(p, q).unwrap();
                    assert!(matches!(r, Relation::NW | Relation::SE));
                }
            }
        }
    }

    #[test]
    fn coverings_are_covered() {
        let (octs, pts) = covering(&mut ChaCha8Rng::seed_from_u64(1), 20, 10, 9);
        for p in &pts {
            assert!(octs.iter().filter(|o| o.contains(p)).count() >= 9);
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = uniform(&mut ChaCha8Rng::seed_from_u64(5), 30);
        let b = uniform(&mut ChaCha8Rng::seed_from_u64(5), 30);
        assert_eq!(a, b);
        assert!(uniform(&mut ChaCha8Rng::seed_from_u64(5), 0).is_empty());
    }
}
