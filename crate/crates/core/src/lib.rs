//! Two-coloring points so that every quadrant (or octant) holding enough of
//! them sees both colors, and the machinery around it.
//!
//! - [`staircase`]: the forest builder behind the 9-point guarantee for
//!   prefix wedges, and hence for octant cover decomposition.
//! - [`verify`]: brute-force and sweep certification of colorings.
//! - [`hypergraph`]: hypergraphs, dynamic closure, and the exact two-coloring
//!   search.
//! - [`reductions`]: maps between octants, wedges, triangles and intervals.
//! - [`generate`]: seeded random and scripted instances.
//! - [`lowerbound`]: a 63-point set every two-coloring of which leaves a
//!   monochromatic triangle translate with exactly 4 points.

pub mod coord;
pub mod error;
pub mod generate;
pub mod geom;
pub mod hypergraph;
pub mod lowerbound;
pub mod reductions;
pub mod staircase;
pub mod triangle;
pub mod verify;

pub use coord::{Coord, OrderedPointSet, Point2, Point3};
pub use error::{Error, Result};
pub use staircase::{color_points, StaircaseState, TwoColoring};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/coordinates.md")]
    mod coordinates {}
    #[doc = include_str!("../../../book/src/staircase.md")]
    mod staircase {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/lowerbound.md")]
    mod lowerbound {}
    #[doc = include_str!("../../../book/src/midriff.md")]
    mod midriff {}
}
