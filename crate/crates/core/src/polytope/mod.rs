//! Convex polytopes in both representations: hulls, vertex enumeration,
//! faces, sections, projections and boundary checks for diamonds.

mod hull;
pub(crate) mod lp;
mod ops;
mod repr;

pub use ops::{
    check_diamond_boundary, diamond_hull, is_extreme, project, restrict, section, supporting_line_test,
    vertices_of, Diamond, Section,
};
#[allow(unused_imports)]
pub(crate) use ops::line_interval;
pub use repr::{convex_hull, FaceRef, HPolytope, Halfspace, Polytope};

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("no points given")]
    EmptyInput,
    #[error("dimension {0} is outside the supported range 1..=4")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("point lies outside the polytope")]
    PointOutside,
    #[error("segment does not meet the face")]
    SegmentMissesFace,
    #[error("segment meets the face only at an endpoint")]
    SegmentMeetsFaceAtEndpoint,
    #[error("segment meets the face in more than one point")]
    SegmentMeetsFaceInSegment,
    #[error("diamond is not contained in the body")]
    NotContained,
}
