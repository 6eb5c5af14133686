use std::collections::BTreeSet;

use octcover::coord::{Coord, OrderedPointSet, Point2};
use octcover::geom::{classify_pair, enumerate_wedge_classes, wedge_class_members};
use octcover::hypergraph::{dynamic_closure, search_proper_two_coloring, Hypergraph};
use octcover::staircase::{color_points, TwoColoring};
use octcover::triangle::{enumerate_translate_classes, TriangleShape};
use octcover::verify::{verify_prefix_wedges, verify_prefix_wedges_exhaustive};
use proptest::prelude::*;

fn distinct_points(max: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    (1..=max).prop_flat_map(|n| {
        let ranks: Vec<i64> = (0..n as i64).collect();
        (Just(ranks.clone()).prop_shuffle(), Just(ranks).prop_shuffle())
            .prop_map(|(xs, ys)| xs.into_iter().zip(ys).collect())
    })
}

fn planar(pts: &[(i64, i64)]) -> Vec<Point2> {
    pts.iter().enumerate().map(|(i, &(x, y))| Point2::new(x, y, i)).collect()
}

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0..n, 1..=5), 0..30)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn classify_is_antisymmetric(pts in distinct_points(6)) {
        let p = planar(&pts);
        for a in &p {
            for b in &p {
                if a.id != b.id {
                    prop_assert_eq!(classify_pair(a, b).unwrap(), classify_pair(b, a).unwrap().flipped());
                }
            }
        }
    }

    #[test]
    fn wedge_classes_reevaluate_and_close_under_intersection(pts in distinct_points(9)) {
        let p = planar(&pts);
        let classes = enumerate_wedge_classes(&p);
        let family: BTreeSet<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
        prop_assert_eq!(family.len(), classes.len());
        for c in &classes {
            prop_assert_eq!(&wedge_class_members((&c.apex.0, &c.apex.1), &p), &c.members);
        }
        for a in &family {
            for b in &family {
                let meet: Vec<usize> = a.iter().filter(|v| b.contains(v)).copied().collect();
                prop_assert!(meet.is_empty() || family.contains(&meet));
            }
        }
    }

    #[test]
    fn translate_witnesses_reevaluate(pts in distinct_points(8), skew in -3i64..4) {
        let shape = TriangleShape::from_ints([(0, 0), (5, skew), (-2, 4)]).unwrap();
        let vs: Vec<(Coord, Coord)> = pts.iter().map(|&(x, y)| (Coord::ratio(x, 2), Coord::ratio(y, 3))).collect();
        for c in enumerate_translate_classes(&shape, &vs) {
            let inside: Vec<usize> = (0..vs.len()).filter(|&i| shape.translate_contains(&c.witness, &vs[i])).collect();
            prop_assert_eq!(inside, c.members);
        }
    }

    #[test]
    fn translate_classes_match_grid(pts in prop::collection::btree_set((0i64..7, 0i64..7), 1..=8)) {
        // Points on the 1/3 lattice, translations of the unit right triangle on
        // the 1/24 lattice, which meets every face of the arrangement
        // including its vertices. Units of 1/72.
        let pts: Vec<(i64, i64)> = pts.into_iter().collect();
        let shape = TriangleShape::unit_right();
        let vs: Vec<(Coord, Coord)> = pts.iter().map(|&(x, y)| (Coord::ratio(x, 3), Coord::ratio(y, 3))).collect();
        let mut grid = BTreeSet::new();
        for k in -30..60i64 {
            for l in -30..60i64 {
                let (tx, ty) = (3 * k, 3 * l);
                let members: Vec<usize> = (0..pts.len())
                    .filter(|&i| {
                        let (px, py) = (24 * pts[i].0, 24 * pts[i].1);
                        px > tx && py > ty && (px - tx) + (py - ty) < 72
                    })
                    .collect();
                if !members.is_empty() {
                    grid.insert(members);
                }
            }
        }
        let found: BTreeSet<Vec<usize>> = enumerate_translate_classes(&shape, &vs).into_iter().map(|c| c.members).collect();
        prop_assert_eq!(found, grid);
    }

    #[test]
    fn verification_is_monotone_in_m(pts in distinct_points(24), colors in prop::collection::vec(0u8..2, 24)) {
        let set = OrderedPointSet::from_ints(&pts).unwrap();
        let coloring = TwoColoring::total(colors[..pts.len()].to_vec());
        let mut prev_ok = false;
        for m in 1..=10 {
            let r = verify_prefix_wedges(&set, &coloring, m).unwrap();
            prop_assert!(!prev_ok || r.ok);
            prop_assert_eq!(r.ok, r.max_mono < m);
            prev_ok = r.ok;
        }
    }

    #[test]
    fn staircase_colorings_pass_exhaustive_check(pts in distinct_points(30)) {
        let set = OrderedPointSet::from_ints(&pts).unwrap();
        let run = color_points(&set).unwrap();
        let r = verify_prefix_wedges_exhaustive(&set, &run.coloring, 9).unwrap();
        prop_assert!(r.ok);
    }

    #[test]
    fn closure_is_idempotent(h in hypergraph(10), seed in any::<u64>()) {
        let n = h.n();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let once = dynamic_closure(&h, &order).unwrap();
        let twice = dynamic_closure(&once.base, &order).unwrap();
        prop_assert_eq!(once.base.edge_set(), twice.base.edge_set());
        prop_assert!(once.is_dynamic());
        prop_assert!(h.edge_set().is_subset(&once.base.edge_set()));
    }

    #[test]
    fn search_matches_enumeration(h in hypergraph(12), m in 1usize..5) {
        let n = h.n();
        let brute = (0..1u32 << n).any(|mask| {
            let colors: Vec<u8> = (0..n).map(|v| (mask >> v & 1) as u8).collect();
            h.is_proper(&colors, m)
        });
        let r = search_proper_two_coloring(&h, m);
        prop_assert_eq!(r.is_sat(), brute);
        if let Some(c) = r.coloring {
            prop_assert!(h.is_proper(&c, m));
        }
    }
}
