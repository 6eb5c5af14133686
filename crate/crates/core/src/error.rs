use std::fmt;

use thiserror::Error;

use crate::coord::Coord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points {first} and {second} share their {axis} coordinate")]
    CoordinateCollision { axis: Axis, first: usize, second: usize },

    #[error("degenerate triangle: the three vertices are collinear")]
    DegenerateTriangle,

    #[error("degenerate interval [{lo}, {hi}]: need lo < hi")]
    DegenerateInterval { lo: Box<Coord>, hi: Box<Coord> },

    #[error("endpoint {0} is used more than once")]
    DuplicateEndpoint(Box<Coord>),

    #[error("{op} does not apply: {reason}")]
    NotApplicable { op: &'static str, reason: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("point {point} lies in {count} ranges, fewer than the required {needed}")]
    UnderCovered { point: usize, count: usize, needed: usize },

    #[error("coloring leaves vertices uncolored: {0:?}")]
    PartialColoring(Vec<usize>),

    #[error("instance has {size} vertices, over the guard of {guard}")]
    SizeGuard { size: usize, guard: usize },

    #[error("unknown hypergraph family {0:?}")]
    UnknownFamily(String),

    #[error("vertex order is not a permutation of 0..{0}")]
    BadOrder(usize),

    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
}

impl Error {
    pub(crate) fn not_applicable(op: &'static str, reason: impl Into<String>) -> Self {
        Error::NotApplicable { op, reason: reason.into() }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
