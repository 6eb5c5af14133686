use std::time::Instant;

use octcover::coord::{Coord, Point2};
use octcover::hypergraph::{search_proper_two_coloring, Hypergraph};
use octcover::lowerbound::*;
use octcover::triangle::TriangleShape;

#[test]
fn abstract_is_unsat_at_four_and_sat_at_five() {
    let h = build_abstract_hypergraph();
    let start = Instant::now();
    let r = search_proper_two_coloring(&h, 4);
    assert!(!r.is_sat());
    assert!(start.elapsed().as_secs() < 10);
    assert!(search_proper_two_coloring(&h, 5).is_sat());
}

#[test]
fn realization_certifies_on_several_triangles() {
    let shapes = [
        TriangleShape::unit_right(),
        TriangleShape::from_ints([(0, 0), (7, 2), (-3, 5)]).unwrap(),
        TriangleShape::new(
            (Coord::ratio(-1, 3), Coord::int(0)),
            (Coord::int(2), Coord::ratio(1, 7)),
            (Coord::int(0), Coord::int(-4)),
        )
        .unwrap(),
    ];
    for t in shapes {
        let real = standard_realization(&t).unwrap();
        let rep = certify_realization(&real.points, &real.edges, &t);
        assert!(rep.ok, "{:?}", rep.failures);
        let w = octant_witness(&real).unwrap();
        assert_eq!(w.points.len(), 63);
    }
}

#[test]
fn single_family_deleted() {
    let h = build_abstract_hypergraph();
    for i in 0..3 {
        let keep: Vec<Vec<usize>> = h.edges()[..21 * i].iter().chain(&h.edges()[21 * (i + 1)..]).cloned().collect();
        let sub = Hypergraph::new(63, keep).unwrap();
        assert!(search_proper_two_coloring(&sub, 4).is_sat(), "family {i} removed");
    }
}

type Edges = Vec<Vec<usize>>;

fn moved(points: &[Point2], v: usize, dx: Coord, dy: Coord) -> Vec<Point2> {
    let mut pts = points.to_vec();
    pts[v] = Point2::new(&pts[v].x + &dx, &pts[v].y + &dy, v);
    pts
}

#[test]
fn corrupted_realizations_fail() {
    let t = TriangleShape::unit_right();
    let real = standard_realization(&t).unwrap();
    let far = |v| moved(&real.points, v, Coord::int(5), Coord::int(7));
    let cases: Vec<(&str, Vec<Point2>, Edges)> = vec![
        ("p0 far", far(0), real.edges.clone()),
        ("p1 far", far(1), real.edges.clone()),
        ("p2 far", far(2), real.edges.clone()),
        ("q00 far", far(3), real.edges.clone()),
        ("q11 far", far(24), real.edges.clone()),
        ("q21 far", far(44), real.edges.clone()),
        ("r001 far", far(8), real.edges.clone()),
        ("r233 far", far(62), real.edges.clone()),
        ("q10 nudged", moved(&real.points, 23, Coord::ratio(1, 100), Coord::zero()), real.edges.clone()),
        ("bogus edge", real.points.clone(), {
            let mut e = real.edges.clone();
            e[0] = vec![0, 1, 2, 5];
            e
        }),
    ];
    for (name, pts, edges) in cases {
        let rep = certify_realization(&pts, &edges, &t);
        assert!(!rep.ok, "{name} still certifies");
    }
}

#[test]
fn small_nudge_of_apex_points_is_harmless() {
    let t = TriangleShape::unit_right();
    let real = standard_realization(&t).unwrap();
    let rep = certify_realization(&moved(&real.points, 0, Coord::ratio(1, 100), Coord::zero()), &real.edges, &t);
    assert!(rep.ok);
    assert_eq!(rep.intended_realized, 63);
}
