//! Polytope criteria: the polygonality detector, central and non-central
//! section testers, projection testers, visual-cone testers, ε-certificates
//! for extreme points and the drift inequality.

mod cones;
mod drift;
mod epsilon;
mod klee;
mod polygon;
mod report;

pub use cones::{visual_cone_test, ApexSurface, BodyConeOracle};
pub use drift::{drift_from_polytope, drift_inequality_eval, DriftConfig, DriftLengths, DriftReport};
pub use epsilon::{epsilon_certificate, no_extreme_in_cone, CertificateCase, EpsilonCert, FlatFamily};
pub use klee::{
    klee_projection_test, klee_section_test, projection_sample, Offset, SampleConfig, SectionFamily, RATIONAL_BITS,
};
pub use polygon::{polar_sample, polygonality_detect, CurvedWitness, Polygonality, MIN_POINTS};
pub use report::{Budgets, Criterion, CriterionReport, Verdict, Witness};

use crate::body::BodyError;
use crate::cones::ConeError;
use crate::geometry::GeometryError;
use crate::polytope::PolytopeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CriteriaError {
    #[error("need at least {min} sample points, got {found}")]
    TooFewPoints { min: usize, found: usize },
    #[error("section dimension k = {k} is not supported here (ambient dimension {d})")]
    InvalidK { k: usize, d: usize },
    #[error("flat {index} misses the interior of the body")]
    FlatMissesInterior { index: usize },
    #[error("apex {index} is not strictly outside the body")]
    ApexNotExterior { index: usize },
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("point is not in the body")]
    PointOutside,
    #[error("no flat in the family meets the segment transversally at its midpoint")]
    NoTransversalFlat,
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Body(#[from] BodyError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
