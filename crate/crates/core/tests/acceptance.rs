//! One pass/fail line per acceptance criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use octcover::coord::{check_distinct_3d, OrderedPointSet};
use octcover::generate;
use octcover::geom::enumerate_octant_classes;
use octcover::hypergraph::{search_proper_two_coloring, Hypergraph};
use octcover::lowerbound::{build_abstract_hypergraph, certify_realization, octant_witness, standard_realization};
use octcover::reductions::*;
use octcover::staircase::{color_points, color_points_audited};
use octcover::triangle::{enumerate_homothet_classes, TriangleShape};
use octcover::verify::{check_edge_witness, verify_prefix_wedges};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_instance(seed: u64, n: usize) -> OrderedPointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 3 {
        0 => generate::uniform(&mut rng, n),
        1 => generate::antichain(&mut rng, n),
        _ => generate::clustered(&mut rng, n),
    }
}

const SIZES: [usize; 4] = [10, 50, 200, 1000];
const PER_SIZE: u64 = 250;

fn criterion_1() -> Outcome {
    let mut total = 0;
    for (s, &n) in SIZES.iter().enumerate() {
        for k in 0..PER_SIZE {
            let seed = 1_000 * s as u64 + k;
            let set = corpus_instance(seed, n);
            let run = color_points(&set).map_err(|e| format!("seed {seed}: {e}"))?;
            let r = verify_prefix_wedges(&set, &run.coloring, 9).map_err(|e| e.to_string())?;
            ensure(r.ok, || format!("seed {seed}, n={n}: {} violations", r.violation_count))?;
            total += 1;
        }
    }
    Ok(format!("{total} instances, n in {SIZES:?}, no monochromatic wedge of 9 at any prefix"))
}

fn criterion_2() -> Outcome {
    let (mut worst_mono, mut worst_free, mut total) = (0, 0, 0);
    for (s, &n) in SIZES.iter().enumerate() {
        for k in 0..PER_SIZE {
            let seed = 1_000 * s as u64 + k;
            let set = corpus_instance(seed, n);
            let run = color_points(&set).map_err(|e| e.to_string())?;
            let r = verify_prefix_wedges(&set, &run.coloring, 9).map_err(|e| e.to_string())?;
            let w = check_edge_witness(&set, run.state.edges(), 9).map_err(|e| e.to_string())?;
            ensure(r.max_mono <= 8, || format!("seed {seed}: max_mono {}", r.max_mono))?;
            ensure(w.ok, || format!("seed {seed}: edge-free wedge of {}", w.max_edge_free))?;
            worst_mono = worst_mono.max(r.max_mono);
            worst_free = worst_free.max(w.max_edge_free);
            total += 1;
        }
    }
    Ok(format!("{total} instances, largest monochromatic wedge {worst_mono}, largest edge-free wedge {worst_free}"))
}

fn criterion_3() -> Outcome {
    let mut ops = 0;
    for seed in 0..500u64 {
        let n = 1 + (seed as usize * 37) % 200;
        let set = corpus_instance(50_000 + seed, n);
        let (_, auditor) = color_points_audited(&set).map_err(|e| format!("seed {seed}, n={n}: {e}"))?;
        ops += auditor.operations_checked;
    }
    Ok(format!("500 instances, n <= 200, {ops} states recomputed from scratch"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let h = build_abstract_hypergraph();
    let r = search_proper_two_coloring(&h, 4);
    let elapsed = start.elapsed();
    ensure(!r.is_sat(), || "abstract hypergraph has a proper coloring".into())?;
    ensure(elapsed.as_secs_f64() < 10.0, || format!("search took {elapsed:?}"))?;
    let shape = TriangleShape::from_ints([(-2, 1), (1, -2), (1, 1)]).map_err(|e| e.to_string())?;
    let real = standard_realization(&shape).map_err(|e| e.to_string())?;
    let rep = certify_realization(&real.points, &real.edges, &shape);
    ensure(rep.ok, || format!("certification failed: {:?}", rep.failures.first()))?;
    let w = octant_witness(&real).map_err(|e| e.to_string())?;
    Ok(format!(
        "UNSAT at m=4 in {elapsed:?} ({} nodes); {} translate classes, {} of size 4, all 63 intended; octant lift of {} points forces m_oct >= 5",
        r.stats.nodes,
        rep.translate_classes,
        rep.classes_of_size_four,
        w.points.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..200 {
        let (no, np) = (rng.gen_range(0..=20), rng.gen_range(0..=20));
        let (octs, pts) = generate::covering(&mut rng, no, np, 0);
        ensure(certify_octant_bijection(&octs, &pts).unwrap_or(false), || format!("octant instance {k}"))?;

        let n = rng.gen_range(1..=20);
        let iv = generate::intervals(&mut rng, n);
        let ibi =
            FamilyComparison::equal(&ibi_family(&iv), &point_quadrant_family(&ibi_to_point_quadrant(&iv).unwrap()));
        ensure(ibi.ok, || format!("IBI instance {k}: {ibi:?}"))?;
        let isi_pts = isi_to_point_quadrant(&iv).unwrap();
        let isi = FamilyComparison::equal(&isi_family(&iv), &point_quadrant_family_below_line(&isi_pts));
        ensure(isi.ok, || format!("ISI instance {k}: {isi:?}"))?;
        let ici = ici_family(&iv);
        ensure(FamilyComparison::subfamily(&ici, &point_quadrant_family(&isi_pts)).ok, || format!("ICI {k}"))?;
        ensure(FamilyComparison::equal(&ici, &point_quadrant_family_above_line(&isi_pts)).ok, || format!("ICI {k}"))?;
        let queries = generate::intervals(&mut rng, n);
        let shifted: Vec<_> = queries
            .iter()
            .map(|q| {
                octcover::geom::Interval::new(
                    q.lo() + &octcover::Coord::ratio(1, 2),
                    q.hi() + &octcover::Coord::ratio(1, 2),
                )
                .unwrap()
            })
            .collect();
        let (qp, apexes) = ici_to_point_quadrant(&iv, &shifted).unwrap();
        ensure(wedge_edges(&qp, &apexes) == ici_query_edges(&iv, &shifted), || format!("ICI queries {k}"))?;
        let dual = complement_arc_duality(&iv).unwrap();
        ensure(ibi_family(&iv) == isi_family(&dual), || format!("duality instance {k}"))?;
        ensure(complement_arc_duality(&dual).unwrap() == normalize_for_duality(&iv).unwrap(), || {
            format!("involution {k}")
        })?;
    }
    let mut checked = 0;
    while checked < 200 {
        let shape = TriangleShape::from_ints([
            (0, 0),
            (rng.gen_range(3..9), rng.gen_range(-2..3)),
            (rng.gen_range(-2..3), rng.gen_range(3..9)),
        ])
        .unwrap();
        let n = rng.gen_range(1..=8);
        let pts = generate::points2(&mut rng, n);
        let img = planar_points_to_octant_instance(&pts, &shape);
        if check_distinct_3d(&img).is_err() {
            continue;
        }
        let vs: Vec<_> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        let hom: EdgeFamily = enumerate_homothet_classes(&shape, &vs).into_iter().map(|c| c.0).collect();
        let oct: EdgeFamily = enumerate_octant_classes(&img).into_iter().map(|c| c.members).collect();
        ensure(hom == oct, || format!("homothet instance {checked}"))?;
        checked += 1;
    }
    Ok("200 instances each: octant bijection, IBI, ISI, ICI (subfamily and per-query), complement duality, homothet embedding".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    let mut largest = 0;
    while done < 100 {
        let np = rng.gen_range(1..=60);
        let no = rng.gen_range(0..=120);
        let (octs, pts) = generate::covering(&mut rng, no, np, 9);
        if octs.len() > 300 {
            continue;
        }
        let d = decompose_covering(&octs, &pts).map_err(|e| e.to_string())?;
        for (i, p) in pts.iter().enumerate() {
            for part in &d.parts {
                ensure(part.iter().any(|&o| octs[o].contains(p)), || format!("instance {done}: point {i} uncovered"))?;
            }
        }
        largest = largest.max(octs.len());
        done += 1;
    }
    Ok(format!("100 coverings (up to {largest} octants, 60 points), both parts cover every point"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut sat, mut unsat) = (0, 0);
    for k in 0..500 {
        let n = rng.gen_range(1..=16usize);
        let edges: Vec<Vec<usize>> = (0..rng.gen_range(0..=40))
            .map(|_| (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        let h = Hypergraph::new(n, edges).unwrap();
        let m = rng.gen_range(1..=4);
        let brute = (0..1u32 << n).any(|mask| {
            let colors: Vec<u8> = (0..n).map(|v| (mask >> v & 1) as u8).collect();
            h.is_proper(&colors, m)
        });
        let r = search_proper_two_coloring(&h, m);
        ensure(r.is_sat() == brute, || format!("hypergraph {k}: search {} vs enumeration {brute}", r.is_sat()))?;
        if let Some(c) = &r.coloring {
            ensure(h.is_proper(c, m), || format!("hypergraph {k}: returned coloring is not proper"))?;
        }
        if brute {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!("500 hypergraphs with n <= 16 ({sat} colorable, {unsat} not), search agrees with 2^n enumeration"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("prefix wedges with 9 points are bichromatic", criterion_1),
        ("monochromatic wedges have at most 8 points; large wedges hold an edge", criterion_2),
        ("invariants hold after every operation", criterion_3),
        ("lower-bound certificate", criterion_4),
        ("reduction certifications", criterion_5),
        ("9-fold octant coverings decompose", criterion_6),
        ("exact search matches enumeration", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
