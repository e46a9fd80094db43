//! Exact kernel: rational scalars, points, flats and linear solving.

mod flat;
mod linalg;
mod scalar;
mod vector;

pub use flat::{AffineFlat, Segment};
pub use linalg::{
    determinant, nullspace, orientation, orthogonal_complement, orthogonalize, rank, solve_linear,
    Solution,
};
pub(crate) use linalg::{int_dot, int_gcd_all, int_hyperplane_normal, int_rank};
pub use scalar::{parse_scalars, ParseScalarError, Scalar};
pub(crate) use scalar::{lcm_of_denominators, FracSum};
pub use vector::{Point, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplane normal is zero")]
    ZeroNormal,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("no spanning vectors given")]
    EmptySpan,
}

/// `flat_coordinates`: exact chart coordinates of `point` on `flat`.
pub fn flat_coordinates(flat: &AffineFlat, point: &Point) -> Result<Option<alloc::vec::Vec<Scalar>>, GeometryError> {
    flat.coordinates(point)
}
