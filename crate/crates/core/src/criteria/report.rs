use alloc::boxed::Box;
use alloc::vec::Vec;

use super::polygon::CurvedWitness;
use crate::body::SectionSample;
use crate::cones::MirkilWitness;
use crate::geometry::AffineFlat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// Central sections.
    K1,
    /// Orthogonal projections.
    K2,
    /// Non-central section family.
    T11,
    /// Visual cones from exterior apexes.
    T12,
}

impl Criterion {
    pub fn id(self) -> &'static str {
        match self {
            Criterion::K1 => "K1",
            Criterion::K2 => "K2",
            Criterion::T11 => "T1.1",
            Criterion::T12 => "T1.2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Budgets {
    /// Flats, subspaces or apexes sampled.
    pub samples: usize,
    /// Boundary points per sampled section.
    pub points: usize,
    /// Cross-sections scanned per apex (visual cones only).
    pub scans: usize,
    pub tau: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Section {
        index: usize,
        flat: AffineFlat,
        sample: SectionSample,
        curved: CurvedWitness,
        /// Still curved when resampled at four times the points.
        reverified: bool,
    },
    Projection {
        index: usize,
        subspace: AffineFlat,
        /// Polar points of the sampled support function.
        sample: SectionSample,
        curved: CurvedWitness,
        reverified: bool,
    },
    Cone {
        index: usize,
        apex: Vec<f64>,
        scan: MirkilWitness,
        /// Still non-polyhedral with doubled points per cross-section.
        reverified: bool,
    },
}

impl Witness {
    pub fn index(&self) -> usize {
        match self {
            Witness::Section { index, .. } | Witness::Projection { index, .. } | Witness::Cone { index, .. } => *index,
        }
    }

    pub fn reverified(&self) -> bool {
        match self {
            Witness::Section { reverified, .. }
            | Witness::Projection { reverified, .. }
            | Witness::Cone { reverified, .. } => *reverified,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Nothing sampled refuted polytopality. Only a proof for exact inputs.
    PolytopeConsistent,
    NonPolytope(Box<Witness>),
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::PolytopeConsistent)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::NonPolytope(w) => Some(w),
            Verdict::PolytopeConsistent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub budgets: Budgets,
    pub seed: u64,
    /// The exact path was used (polytope input).
    pub exact: bool,
    /// Samples examined before the verdict.
    pub checked: usize,
    /// Exact path: vertex count of each section or shadow polygon, or the
    /// extreme-ray count of each visual cone.
    pub exact_counts: Vec<usize>,
    /// Samples that could not be judged (visual cones only).
    pub inconclusive: usize,
}
