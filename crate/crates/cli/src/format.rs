//! File formats. Every coordinate is an exact rational: a JSON integer, or a
//! `[numerator, denominator]` pair.

use serde::{Deserialize, Serialize};

use octcover::coord::{check_distinct_3d, Coord, OrderedPointSet, Point2, Point3};
use octcover::geom::{check_distinct_endpoints, Interval, Octant};
use octcover::reductions::Constraint;
use octcover::staircase::{TimedEdge, TraceEntry};
use octcover::triangle::TriangleShape;

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum IntervalFamily {
    Ibi,
    Isi,
    Ici,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Instance {
    /// Points in arrival order.
    #[serde(rename = "points2-ordered")]
    Points2Ordered {
        points: Vec<[Coord; 2]>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        constraints: Vec<Constraint>,
    },
    #[serde(rename = "points3")]
    Points3 { points: Vec<[Coord; 3]> },
    /// Octants given by apex, and the points they should cover.
    #[serde(rename = "octants+points3")]
    OctantsPoints3 { octants: Vec<[Coord; 3]>, points: Vec<[Coord; 3]> },
    #[serde(rename = "intervals")]
    Intervals {
        family: IntervalFamily,
        intervals: Vec<Interval>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        queries: Vec<Interval>,
    },
    #[serde(rename = "triangle+points2")]
    TrianglePoints2 {
        triangle: Box<[[Coord; 2]; 3]>,
        points: Vec<[Coord; 2]>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        edges: Vec<Vec<usize>>,
    },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Points2Ordered { .. } => "points2-ordered",
            Instance::Points3 { .. } => "points3",
            Instance::OctantsPoints3 { .. } => "octants+points3",
            Instance::Intervals { .. } => "intervals",
            Instance::TrianglePoints2 { .. } => "triangle+points2",
        }
    }

    /// Rejects instances that break the distinctness rules of their kind.
    pub fn validate(&self) -> octcover::Result<()> {
        match self {
            Instance::Points2Ordered { points, .. } => ordered(points).map(|_| ()),
            Instance::Points3 { points } => check_distinct_3d(&points3(points)),
            Instance::OctantsPoints3 { octants, points } => {
                let all: Vec<[Coord; 3]> = octants.iter().chain(points).cloned().collect();
                check_distinct_3d(&points3(&all))
            }
            Instance::Intervals { intervals, queries, .. } => {
                check_distinct_endpoints(intervals)?;
                let all: Vec<Interval> = intervals.iter().chain(queries).cloned().collect();
                check_distinct_endpoints(&all)
            }
            Instance::TrianglePoints2 { triangle, .. } => shape(triangle).map(|_| ()),
        }
    }
}

/// Free-form provenance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<serde_json::Value>,
}

impl Meta {
    fn is_empty(&self) -> bool {
        *self == Meta::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    #[serde(flatten)]
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Meta::is_empty")]
    pub meta: Meta,
}

impl InstanceFile {
    pub fn new(instance: Instance, meta: Meta) -> Self {
        InstanceFile { version: VERSION, instance, meta }
    }
}

/// A two-coloring of the vertices of an instance: points, or octants for
/// `octants+points3`, or intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub version: u32,
    pub kind: String,
    pub colors: Vec<u8>,
    /// Original index of the vertex arriving at each time, when the run
    /// reordered the input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrivals: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<TimedEdge>>,
}

pub fn ordered(points: &[[Coord; 2]]) -> octcover::Result<OrderedPointSet> {
    OrderedPointSet::new(points.iter().map(|[x, y]| (x.clone(), y.clone())).collect())
}

pub fn points2(points: &[[Coord; 2]]) -> Vec<Point2> {
    points.iter().enumerate().map(|(i, [x, y])| Point2::new(x.clone(), y.clone(), i)).collect()
}

pub fn points3(points: &[[Coord; 3]]) -> Vec<Point3> {
    points.iter().enumerate().map(|(i, [x, y, z])| Point3::new(x.clone(), y.clone(), z.clone(), i)).collect()
}

pub fn octants(apexes: &[[Coord; 3]]) -> Vec<Octant> {
    apexes.iter().enumerate().map(|(i, [x, y, z])| Octant::new(x.clone(), y.clone(), z.clone(), i)).collect()
}

pub fn shape(triangle: &[[Coord; 2]; 3]) -> octcover::Result<TriangleShape> {
    let v = |i: usize| (triangle[i][0].clone(), triangle[i][1].clone());
    TriangleShape::new(v(0), v(1), v(2))
}

pub fn pair(p: &Point2) -> [Coord; 2] {
    [p.x.clone(), p.y.clone()]
}

pub fn triple(p: &Point3) -> [Coord; 3] {
    [p.x.clone(), p.y.clone(), p.z.clone()]
}
