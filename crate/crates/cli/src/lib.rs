//! The `octcover` command-line tool as a library, so the commands can be
//! driven from tests without spawning processes.

pub mod format;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use octcover::coord::{check_distinct_3d, Coord, OrderedPointSet, Point3};
use octcover::generate;
use octcover::geom::{enumerate_octant_classes, enumerate_wedge_classes};
use octcover::hypergraph::{dynamic_closure, measure_midriff, search_proper_two_coloring, Hypergraph};
use octcover::lowerbound::{
    build_abstract_hypergraph, certify_realization, octant_witness, standard_realization, vertex_names,
};
use octcover::reductions::{self as red, EdgeFamily, FamilyComparison};
use octcover::staircase::{color_points, TwoColoring};
use octcover::triangle::{enumerate_homothet_classes, TriangleShape};
use octcover::verify::{check_edge_witness, verify_octants, verify_prefix_wedges};
use octcover::Error;

use format::{ColoringFile, Instance, InstanceFile, IntervalFamily, Meta, VERSION};

/// Default vertex bound for exhaustive certification and family checks.
pub const GUARD: usize = 60;
/// Above this many points, octant verification goes through the prefix-wedge
/// sweep instead of the cubic scan.
pub const OCTANT_SCAN_LIMIT: usize = 300;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl fmt::Display) -> Self {
        CliError { code: 2, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 1 } else { 2 };
        CliError { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command prints, and whether it counts as success.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub ok: bool,
}

impl Output {
    fn new(value: &impl Serialize, ok: bool) -> CliResult<Self> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        Ok(Output { json, ok })
    }
}

pub fn parse_instance(text: &str) -> CliResult<InstanceFile> {
    let file: InstanceFile = serde_json::from_str(text)?;
    if file.version != VERSION {
        return Err(CliError::usage(format!("unsupported instance version {}", file.version)));
    }
    file.instance.validate()?;
    Ok(file)
}

pub fn parse_coloring(text: &str) -> CliResult<ColoringFile> {
    let file: ColoringFile = serde_json::from_str(text)?;
    if file.version != VERSION {
        return Err(CliError::usage(format!("unsupported coloring version {}", file.version)));
    }
    if file.colors.iter().any(|&c| c > 1) {
        return Err(CliError::usage("colors must be 0 or 1"));
    }
    Ok(file)
}

// ---------------------------------------------------------------------------
// gen

pub struct GenArgs {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub distribution: Option<String>,
    pub fold: usize,
    pub family: IntervalFamily,
}

pub fn cmd_gen(args: &GenArgs) -> CliResult<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let n = args.n;
    let dist = args.distribution.clone();
    let bad_dist = |d: &str| CliError::usage(format!("unknown distribution {d:?} for {}", args.kind));
    let (instance, dist) = match args.kind.as_str() {
        "points2-ordered" => {
            let d = dist.unwrap_or_else(|| "uniform".into());
            let set = match d.as_str() {
                "uniform" => generate::uniform(&mut rng, n),
                "antichain" => generate::antichain(&mut rng, n),
                "clustered" => generate::clustered(&mut rng, n),
                s => {
                    let name = s.strip_prefix("script:").unwrap_or(s);
                    generate::script(name, n).ok_or_else(|| bad_dist(s))?
                }
            };
            let points = set.points().iter().map(format::pair).collect();
            (Instance::Points2Ordered { points, constraints: Vec::new() }, d)
        }
        "points3" => {
            let d = dist.unwrap_or_else(|| "uniform".into());
            if d != "uniform" {
                return Err(bad_dist(&d));
            }
            (Instance::Points3 { points: generate::points3(&mut rng, n).iter().map(format::triple).collect() }, d)
        }
        "octants+points3" => {
            let d = dist.unwrap_or_else(|| "covering".into());
            if d != "covering" {
                return Err(bad_dist(&d));
            }
            let (octs, pts) = generate::covering(&mut rng, n, n, args.fold);
            let octants = octs.iter().map(|o| format::triple(&o.apex)).collect();
            (Instance::OctantsPoints3 { octants, points: pts.iter().map(format::triple).collect() }, d)
        }
        "intervals" => {
            let d = dist.unwrap_or_else(|| "uniform".into());
            if d != "uniform" {
                return Err(bad_dist(&d));
            }
            let intervals = generate::intervals(&mut rng, n);
            let queries = if args.family == IntervalFamily::Ici {
                let half = Coord::ratio(1, 2);
                generate::intervals(&mut rng, n)
                    .iter()
                    .map(|q| octcover::geom::Interval::new(q.lo() + &half, q.hi() + &half))
                    .collect::<octcover::Result<_>>()?
            } else {
                Vec::new()
            };
            (Instance::Intervals { family: args.family, intervals, queries }, d)
        }
        "triangle+points2" => {
            let d = dist.unwrap_or_else(|| "uniform".into());
            match d.as_str() {
                "uniform" => (random_triangle_instance(&mut rng, n)?, d),
                "lowerbound" => {
                    let real = standard_realization(&canonical_triangle())?;
                    (realization_instance(&real), d)
                }
                s => return Err(bad_dist(s)),
            }
        }
        k => return Err(CliError::usage(format!("unknown instance kind {k:?}"))),
    };
    let meta = Meta { seed: Some(args.seed), distribution: Some(dist), ..Meta::default() };
    Output::new(&InstanceFile::new(instance, meta), true)
}

fn random_triangle_instance(rng: &mut ChaCha8Rng, n: usize) -> CliResult<Instance> {
    let shape = loop {
        let mut v = || (rng.gen_range(-9..10), rng.gen_range(-9..10));
        if let Ok(t) = TriangleShape::from_ints([v(), v(), v()]) {
            break t;
        }
    };
    // Resample until the lifted points have distinct coordinates.
    let points = loop {
        let pts = generate::points2(rng, n);
        if check_distinct_3d(&red::planar_points_to_octant_instance(&pts, &shape)).is_ok() {
            break pts;
        }
    };
    Ok(Instance::TrianglePoints2 {
        triangle: Box::new(triangle_coords(&shape)),
        points: points.iter().map(format::pair).collect(),
        edges: Vec::new(),
    })
}

fn triangle_coords(shape: &TriangleShape) -> [[Coord; 2]; 3] {
    shape.vertices().clone().map(|(x, y)| [x, y])
}

/// The triangle `(-2,1), (1,-2), (1,1)`.
pub fn canonical_triangle() -> TriangleShape {
    TriangleShape::from_ints([(-2, 1), (1, -2), (1, 1)]).expect("non-degenerate")
}

fn realization_instance(real: &octcover::lowerbound::Realization) -> Instance {
    Instance::TrianglePoints2 {
        triangle: Box::new(triangle_coords(&real.triangle)),
        points: real.points.iter().map(format::pair).collect(),
        edges: real.edges.clone(),
    }
}

// ---------------------------------------------------------------------------
// color

/// Colors a point set in arrival order; returns colors by arrival.
fn run_ordered(set: &OrderedPointSet, trace: bool, file: &mut ColoringFile) -> CliResult<Vec<u8>> {
    let run = color_points(set)?;
    if trace {
        file.trace = Some(run.state.trace().to_vec());
        file.edges = Some(run.state.edges().to_vec());
    }
    Ok(run.coloring.as_total()?)
}

fn by_arrival(colors: &[u8], arrivals: &[usize]) -> Vec<u8> {
    let mut out = vec![0; colors.len()];
    for (t, &v) in arrivals.iter().enumerate() {
        out[v] = colors[t];
    }
    out
}

pub fn cmd_color(instance: &InstanceFile, trace: bool) -> CliResult<Output> {
    let mut file = ColoringFile {
        version: VERSION,
        kind: instance.instance.kind().to_string(),
        colors: Vec::new(),
        arrivals: None,
        trace: None,
        edges: None,
    };
    file.colors = match &instance.instance {
        Instance::Points2Ordered { points, .. } => run_ordered(&format::ordered(points)?, trace, &mut file)?,
        Instance::Points3 { points } => color_points3(&format::points3(points), trace, &mut file)?,
        Instance::TrianglePoints2 { triangle, points, .. } => {
            let lifted = red::planar_points_to_octant_instance(&format::points2(points), &format::shape(triangle)?);
            color_points3(&lifted, trace, &mut file)?
        }
        Instance::OctantsPoints3 { octants, points } => {
            let inst = red::octants_to_dynamic_quadrants(&format::octants(octants), &format::points3(points))?;
            let colors = run_ordered(&inst.points, trace, &mut file)?;
            if trace {
                file.arrivals = Some(inst.octant_at.clone());
            }
            by_arrival(&colors, &inst.octant_at)
        }
        Instance::Intervals { family, intervals, .. } => {
            let pts = match family {
                IntervalFamily::Ibi => red::ibi_to_point_quadrant(intervals)?,
                IntervalFamily::Isi | IntervalFamily::Ici => red::isi_to_point_quadrant(intervals)?,
            };
            let set = OrderedPointSet::new(pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect())?;
            run_ordered(&set, trace, &mut file)?
        }
    };
    Output::new(&file, true)
}

fn color_points3(points: &[Point3], trace: bool, file: &mut ColoringFile) -> CliResult<Vec<u8>> {
    let (set, arrivals) = red::points3_to_ordered(points)?;
    let colors = run_ordered(&set, trace, file)?;
    if trace {
        file.arrivals = Some(arrivals.clone());
    }
    Ok(by_arrival(&colors, &arrivals))
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct VerifyOutput {
    kind: String,
    m: usize,
    ok: bool,
    method: &'static str,
    report: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_witness: Option<Value>,
}

#[derive(Serialize)]
struct CoverViolation {
    point: usize,
    octants: usize,
    missing_color: u8,
}

fn family_report(family: &EdgeFamily, colors: &[u8], m: usize) -> (bool, Value) {
    let mut max_mono = 0;
    let mut violations = Vec::new();
    for e in family {
        let c = colors[e[0]];
        if e.iter().all(|&v| colors[v] == c) {
            max_mono = max_mono.max(e.len());
            if e.len() >= m {
                violations.push(json!({ "members": e, "color": c }));
            }
        }
    }
    let ok = violations.is_empty();
    (ok, json!({ "ok": ok, "edges_checked": family.len(), "max_mono": max_mono, "violations": violations }))
}

fn octant_report(points: &[Point3], colors: &[u8], m: usize) -> CliResult<(bool, &'static str, Value)> {
    if points.len() <= OCTANT_SCAN_LIMIT {
        let r = verify_octants(points, &TwoColoring::total(colors.to_vec()), m)?;
        return Ok((r.ok, "octant-scan", serde_json::to_value(&r)?));
    }
    let (set, arrivals) = red::points3_to_ordered(points)?;
    let ordered: Vec<u8> = arrivals.iter().map(|&v| colors[v]).collect();
    let r = verify_prefix_wedges(&set, &TwoColoring::total(ordered), m)?;
    Ok((r.ok, "prefix-wedge-sweep", serde_json::to_value(&r)?))
}

pub fn cmd_verify(instance: &InstanceFile, coloring: &ColoringFile, m: usize, guard: usize) -> CliResult<Output> {
    let kind = instance.instance.kind();
    if coloring.kind != kind {
        return Err(CliError::usage(format!("coloring is for {}, instance is {kind}", coloring.kind)));
    }
    let colors = &coloring.colors;
    let expect = |n: usize| {
        if colors.len() == n {
            Ok(())
        } else {
            Err(CliError::usage(format!("coloring has {} entries, instance needs {n}", colors.len())))
        }
    };
    let mut edge_witness = None;
    let (ok, method, report) = match &instance.instance {
        Instance::Points2Ordered { points, .. } => {
            expect(points.len())?;
            let set = format::ordered(points)?;
            let r = verify_prefix_wedges(&set, &TwoColoring::total(colors.clone()), m)?;
            let mut ok = r.ok;
            if let Some(edges) = &coloring.edges {
                let w = check_edge_witness(&set, edges, m)?;
                ok &= w.ok;
                edge_witness = Some(serde_json::to_value(&w)?);
            }
            (ok, "prefix-wedge-sweep", serde_json::to_value(&r)?)
        }
        Instance::Points3 { points } => {
            expect(points.len())?;
            octant_report(&format::points3(points), colors, m)?
        }
        Instance::TrianglePoints2 { triangle, points, .. } => {
            expect(points.len())?;
            let lifted = red::planar_points_to_octant_instance(&format::points2(points), &format::shape(triangle)?);
            check_distinct_3d(&lifted)?;
            octant_report(&lifted, colors, m)?
        }
        Instance::OctantsPoints3 { octants, points } => {
            expect(octants.len())?;
            let covers = red::octant_point_edges(&format::octants(octants), &format::points3(points));
            let mut violations = Vec::new();
            let mut heavy = 0;
            for (point, e) in covers.iter().enumerate() {
                if e.len() < m {
                    continue;
                }
                heavy += 1;
                for c in [0u8, 1] {
                    if !e.iter().any(|&o| colors[o] == c) {
                        violations.push(CoverViolation { point, octants: e.len(), missing_color: c });
                    }
                }
            }
            let ok = violations.is_empty();
            let report = json!({ "ok": ok, "points_checked": heavy, "violations": violations });
            (ok, "cover-count", report)
        }
        Instance::Intervals { family, intervals, queries } => {
            expect(intervals.len())?;
            let n = intervals.len() + queries.len();
            if n > guard {
                return Err(Error::SizeGuard { size: n, guard }.into());
            }
            let mut edges = match family {
                IntervalFamily::Ibi => red::ibi_family(intervals),
                IntervalFamily::Isi => red::isi_family(intervals),
                IntervalFamily::Ici => red::ici_family(intervals),
            };
            edges.extend(red::ici_query_edges(intervals, queries).into_iter().filter(|e| !e.is_empty()));
            let (ok, report) = family_report(&edges, colors, m);
            (ok, "interval-family", report)
        }
    };
    let out = VerifyOutput { kind: kind.to_string(), m, ok, method, report, edge_witness };
    Output::new(&out, ok)
}

// ---------------------------------------------------------------------------
// reduce

type Certifier = Box<dyn Fn() -> CliResult<Vec<Value>>>;

fn comparison(name: &str, c: &FamilyComparison) -> Value {
    json!({ "check": name, "ok": c.ok, "left": c.left, "right": c.right, "missing": c.missing, "extra": c.extra })
}

pub fn cmd_reduce(instance: &InstanceFile, target: &str, guard: usize) -> CliResult<Output> {
    let source = instance.instance.kind();
    let unsupported = || CliError::usage(format!("no reduction from {source} to {target}"));
    let (mapped, size, certify): (Instance, usize, Certifier) = match (&instance.instance, target) {
        (Instance::Intervals { family, intervals, queries }, "points2-ordered") => {
            let (pts, apexes) = match family {
                IntervalFamily::Ibi => (red::ibi_to_point_quadrant(intervals)?, Vec::new()),
                IntervalFamily::Isi => (red::isi_to_point_quadrant(intervals)?, Vec::new()),
                IntervalFamily::Ici => red::ici_to_point_quadrant(intervals, queries)?,
            };
            let constraints = apexes
                .iter()
                .enumerate()
                .map(|(i, a)| red::Constraint { point: i, apex: a.clone(), prefix: pts.len() })
                .collect();
            let mapped = Instance::Points2Ordered { points: pts.iter().map(format::pair).collect(), constraints };
            let (family, intervals, queries) = (*family, intervals.clone(), queries.clone());
            let certify = move || -> CliResult<Vec<Value>> {
                Ok(match family {
                    IntervalFamily::Ibi => vec![comparison(
                        "ibi = point-quadrant",
                        &FamilyComparison::equal(&red::ibi_family(&intervals), &red::point_quadrant_family(&pts)),
                    )],
                    IntervalFamily::Isi => vec![comparison(
                        "isi = point-quadrant below x+y=0",
                        &FamilyComparison::equal(
                            &red::isi_family(&intervals),
                            &red::point_quadrant_family_below_line(&pts),
                        ),
                    )],
                    IntervalFamily::Ici => {
                        let direct = red::ici_query_edges(&intervals, &queries);
                        let mapped = red::wedge_edges(&pts, &apexes);
                        vec![
                            comparison(
                                "ici = point-quadrant above x+y=0",
                                &FamilyComparison::equal(
                                    &red::ici_family(&intervals),
                                    &red::point_quadrant_family_above_line(&pts),
                                ),
                            ),
                            json!({ "check": "query wedges", "ok": direct == mapped, "queries": queries.len() }),
                        ]
                    }
                })
            };
            (mapped, intervals_len(instance), Box::new(certify))
        }
        (Instance::OctantsPoints3 { octants, points }, "points2-ordered") => {
            let (octs, pts) = (format::octants(octants), format::points3(points));
            let inst = red::octants_to_dynamic_quadrants(&octs, &pts)?;
            let mapped = Instance::Points2Ordered {
                points: inst.points.points().iter().map(format::pair).collect(),
                constraints: inst.constraints.clone(),
            };
            let certify = move || -> CliResult<Vec<Value>> {
                let ok = red::certify_octant_bijection(&octs, &pts)?;
                Ok(vec![json!({ "check": "octant edges = constraint wedges", "ok": ok, "octant_at": inst.octant_at })])
            };
            (mapped, octants.len() + points.len(), Box::new(certify))
        }
        (Instance::Points3 { points }, "points2-ordered") => {
            let pts = format::points3(points);
            let (set, arrivals) = red::points3_to_ordered(&pts)?;
            let mapped = Instance::Points2Ordered {
                points: set.points().iter().map(format::pair).collect(),
                constraints: Vec::new(),
            };
            let certify = move || -> CliResult<Vec<Value>> {
                let octant: EdgeFamily = enumerate_octant_classes(&pts).into_iter().map(|c| c.members).collect();
                let mut prefix = EdgeFamily::new();
                for t in 1..=set.len() {
                    for c in enumerate_wedge_classes(set.prefix(t)) {
                        let mut e: Vec<usize> = c.members.iter().map(|&a| arrivals[a]).collect();
                        e.sort_unstable();
                        prefix.insert(e);
                    }
                }
                let c = FamilyComparison::equal(&octant, &prefix);
                Ok(vec![comparison("octant classes = prefix wedge classes", &c), json!({ "arrivals": arrivals })])
            };
            (mapped, points.len(), Box::new(certify))
        }
        (Instance::TrianglePoints2 { triangle, points, .. }, "points3") => {
            let shape = format::shape(triangle)?;
            let planar = format::points2(points);
            let lifted = red::planar_points_to_octant_instance(&planar, &shape);
            check_distinct_3d(&lifted)?;
            let mapped = Instance::Points3 { points: lifted.iter().map(format::triple).collect() };
            let certify = move || -> CliResult<Vec<Value>> {
                let vs: Vec<_> = planar.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
                let hom: EdgeFamily = enumerate_homothet_classes(&shape, &vs).into_iter().map(|c| c.0).collect();
                let oct: EdgeFamily = enumerate_octant_classes(&lifted).into_iter().map(|c| c.members).collect();
                Ok(vec![comparison("homothet classes = octant classes", &FamilyComparison::equal(&hom, &oct))])
            };
            (mapped, points.len(), Box::new(certify))
        }
        _ => return Err(unsupported()),
    };
    let (certification, ok) = if size <= guard {
        let checks = certify()?;
        let ok = checks.iter().all(|c| c["ok"] == json!(true));
        (json!({ "checked": true, "ok": ok, "checks": checks }), ok)
    } else {
        (json!({ "checked": false, "size": size, "guard": guard }), true)
    };
    let meta = Meta {
        source: Some(format!("reduce {source} -> {target}")),
        certification: Some(certification),
        ..Meta::default()
    };
    Output::new(&InstanceFile::new(mapped, meta), ok)
}

fn intervals_len(instance: &InstanceFile) -> usize {
    match &instance.instance {
        Instance::Intervals { intervals, queries, .. } => intervals.len() + queries.len(),
        _ => 0,
    }
}

// ---------------------------------------------------------------------------
// lowerbound

pub fn cmd_lowerbound_abstract() -> CliResult<Output> {
    let h = build_abstract_hypergraph();
    let r = search_proper_two_coloring(&h, 4);
    let out = json!({
        "vertices": h.n(),
        "names": vertex_names(),
        "hypergraph": h,
        "search": { "m": 4, "unsat": !r.is_sat(), "stats": r.stats },
    });
    Output::new(&out, !r.is_sat())
}

/// `spec` is `canonical`, `unit-right`, or three vertices as JSON
/// `[[x, y], [x, y], [x, y]]`.
pub fn parse_triangle(spec: &str) -> CliResult<TriangleShape> {
    match spec {
        "canonical" => Ok(canonical_triangle()),
        "unit-right" => Ok(TriangleShape::unit_right()),
        s => {
            let v: [[Coord; 2]; 3] = serde_json::from_str(s)?;
            Ok(format::shape(&v)?)
        }
    }
}

pub fn cmd_lowerbound_realize(shape: &TriangleShape, lift: bool) -> CliResult<Output> {
    let real = standard_realization(shape)?;
    let report = certify_realization(&real.points, &real.edges, shape);
    let mut cert = serde_json::to_value(&report)?;
    if lift && report.ok {
        let w = octant_witness(&real)?;
        cert["octant_lift"] = json!({ "points": w.points.iter().map(format::triple).collect::<Vec<_>>(), "search_nodes": w.search_nodes });
    }
    let meta = Meta { source: Some("lowerbound realization".into()), certification: Some(cert), ..Meta::default() };
    Output::new(&InstanceFile::new(realization_instance(&real), meta), report.ok)
}

// ---------------------------------------------------------------------------
// midriff

#[derive(serde::Deserialize)]
struct MidriffInput {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    order: Option<Vec<usize>>,
}

/// Measures the midriff of the dynamic closure of a hypergraph under its
/// arrival order (identity when absent).
pub fn cmd_midriff_measure(text: &str, guard: Option<usize>) -> CliResult<Output> {
    let input: MidriffInput = serde_json::from_str(text)?;
    let h = Hypergraph::new(input.n, input.edges)?;
    let order = input.order.unwrap_or_else(|| (0..input.n).collect());
    let dh = dynamic_closure(&h, &order)?;
    let m = measure_midriff(&dh, guard)?;
    let out = json!({ "n": dh.base.n(), "closure_edges": dh.base.edges().len(), "midriff": m });
    Output::new(&out, true)
}

pub fn cmd_midriff_family(tag: Option<&str>, witness: bool) -> CliResult<Output> {
    let tags: Vec<&str> = match tag {
        Some(t) => vec![t],
        None => red::FAMILIES.to_vec(),
    };
    let mut reports = Vec::new();
    for t in tags {
        let mut b = red::midriff_bounds_report(t)?;
        if witness && (b.family == "Point-Octant" || b.family == "D-Point-Quadrant") {
            b.witness = Some(octant_witness(&standard_realization(&canonical_triangle())?)?);
        }
        reports.push(b);
    }
    if tag.is_some() {
        Output::new(&reports[0], true)
    } else {
        Output::new(&reports, true)
    }
}
