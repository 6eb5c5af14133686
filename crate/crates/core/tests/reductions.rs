use octcover::coord::{check_distinct_3d, Coord, Point2, Point3};
use octcover::geom::{enumerate_octant_classes, Interval, Octant};
use octcover::reductions::*;
use octcover::triangle::{enumerate_homothet_classes, TriangleShape};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_intervals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Interval> {
    let mut ends: Vec<i64> = (0..2 * n as i64).map(|v| v * 3 - 7).collect();
    ends.shuffle(rng);
    ends.chunks(2).map(|c| Interval::new(c[0].min(c[1]), c[0].max(c[1])).unwrap()).collect()
}

#[test]
fn ibi_equals_point_quadrant() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let iv = random_intervals(&mut rng, n);
        let pts = ibi_to_point_quadrant(&iv).unwrap();
        let c = FamilyComparison::equal(&ibi_family(&iv), &point_quadrant_family(&pts));
        assert!(c.ok, "{iv:?} {c:?}");
    }
}

#[test]
fn isi_equals_point_quadrant_below_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let iv = random_intervals(&mut rng, n);
        let pts = isi_to_point_quadrant(&iv).unwrap();
        let c = FamilyComparison::equal(&isi_family(&iv), &point_quadrant_family_below_line(&pts));
        assert!(c.ok, "{iv:?} {c:?}");
    }
}

#[test]
fn ici_is_point_quadrant_above_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let iv = random_intervals(&mut rng, n);
        let (pts, _) = ici_to_point_quadrant(&iv, &[]).unwrap();
        let ici = ici_family(&iv);
        assert!(FamilyComparison::subfamily(&ici, &point_quadrant_family(&pts)).ok);
        let c = FamilyComparison::equal(&ici, &point_quadrant_family_above_line(&pts));
        assert!(c.ok, "{iv:?} {c:?}");
    }
}

#[test]
fn duality_swaps_bigger_and_smaller() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let iv = random_intervals(&mut rng, n);
        let out = complement_arc_duality(&iv).unwrap();
        assert_eq!(ibi_family(&iv), isi_family(&out));
        let back = complement_arc_duality(&out).unwrap();
        assert_eq!(back, normalize_for_duality(&iv).unwrap());
    }
}

#[test]
fn octants_match_wedges() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (no, np) = (rng.gen_range(0..20), rng.gen_range(0..10));
        let mut axes: Vec<Vec<i64>> = (0..3)
            .map(|_| {
                let mut v: Vec<i64> = (0..(no + np) as i64).collect();
                v.shuffle(&mut rng);
                v
            })
            .collect();
        let take = |axes: &mut Vec<Vec<i64>>| [0, 1, 2].map(|k| axes[k].pop().unwrap());
        let octants: Vec<Octant> = (0..no)
            .map(|i| {
                let c = take(&mut axes);
                Octant::new(c[0], c[1], c[2], i)
            })
            .collect();
        let points: Vec<Point3> = (0..np)
            .map(|i| {
                let c = take(&mut axes);
                Point3::new(c[0], c[1], c[2], i)
            })
            .collect();
        assert!(certify_octant_bijection(&octants, &points).unwrap());
    }
}

#[test]
fn homothets_match_octants() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 60 {
        let tri = TriangleShape::from_ints([
            (0, 0),
            (rng.gen_range(3..9), rng.gen_range(-2..3)),
            (rng.gen_range(-2..3), rng.gen_range(3..9)),
        ])
        .unwrap();
        let n = rng.gen_range(1..=7);
        let pts: Vec<Point2> = (0..n)
            .map(|i| Point2::new(Coord::ratio(rng.gen_range(-40..40), 7), Coord::ratio(rng.gen_range(-40..40), 11), i))
            .collect();
        let img = planar_points_to_octant_instance(&pts, &tri);
        if check_distinct_3d(&img).is_err() {
            continue;
        }
        for p in &img {
            assert!((&(&p.x + &p.y) + &p.z).is_zero());
        }
        let vs: Vec<_> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        let hom: EdgeFamily = enumerate_homothet_classes(&tri, &vs).into_iter().map(|c| c.0).collect();
        let oct: EdgeFamily = enumerate_octant_classes(&img).into_iter().map(|c| c.members).collect();
        assert_eq!(hom, oct);
        checked += 1;
    }
}
