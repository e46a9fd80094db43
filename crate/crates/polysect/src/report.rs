//! Report JSON. Exact values travel as `"a/b"` strings next to a decimal
//! convenience copy; field order is fixed so equal runs give equal bytes.

use polysect_core::body::SectionSample;
use polysect_core::criteria::{CriterionReport, CurvedWitness, Verdict, Witness};
use polysect_core::geometry::{AffineFlat, Scalar, Vector};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ExactVector {
    pub exact: Vec<String>,
    pub decimal: Vec<f64>,
}

impl From<&Vector> for ExactVector {
    fn from(v: &Vector) -> Self {
        ExactVector {
            exact: v.coords().iter().map(Scalar::to_string).collect(),
            decimal: v.to_f64(),
        }
    }
}

pub fn exact_list(vs: &[Vector]) -> Vec<ExactVector> {
    vs.iter().map(ExactVector::from).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactScalar {
    pub exact: String,
    pub decimal: f64,
}

impl From<&Scalar> for ExactScalar {
    fn from(s: &Scalar) -> Self {
        ExactScalar {
            exact: s.to_string(),
            decimal: s.to_f64(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatDto {
    pub base: ExactVector,
    pub basis: Vec<ExactVector>,
}

impl From<&AffineFlat> for FlatDto {
    fn from(f: &AffineFlat) -> Self {
        FlatDto {
            base: f.base().into(),
            basis: exact_list(f.basis()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvedDto {
    pub indices: [usize; 3],
    /// The bent triple in ambient coordinates.
    pub points: Vec<Vec<f64>>,
    pub area: f64,
    pub threshold: f64,
}

pub fn curved_dto(sample: &SectionSample, c: &CurvedWitness) -> CurvedDto {
    CurvedDto {
        indices: c.indices,
        points: c.points.iter().map(|p| sample.to_ambient(*p)).collect(),
        area: c.area,
        threshold: c.threshold,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessDto {
    Section {
        index: usize,
        flat: FlatDto,
        sample_points: usize,
        curved: CurvedDto,
        reverified: bool,
    },
    Projection {
        index: usize,
        subspace: FlatDto,
        sample_points: usize,
        curved: CurvedDto,
        reverified: bool,
    },
    Cone {
        index: usize,
        apex: Vec<f64>,
        scan_index: usize,
        subspace: Vec<Vec<f64>>,
        plane_normal: Vec<f64>,
        sample_points: usize,
        curved: CurvedDto,
        reverified: bool,
    },
}

impl From<&Witness> for WitnessDto {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Section { index, flat, sample, curved, reverified } => WitnessDto::Section {
                index: *index,
                flat: flat.into(),
                sample_points: sample.len(),
                curved: curved_dto(sample, curved),
                reverified: *reverified,
            },
            Witness::Projection { index, subspace, sample, curved, reverified } => WitnessDto::Projection {
                index: *index,
                subspace: subspace.into(),
                sample_points: sample.len(),
                curved: curved_dto(sample, curved),
                reverified: *reverified,
            },
            Witness::Cone { index, apex, scan, reverified } => WitnessDto::Cone {
                index: *index,
                apex: apex.clone(),
                scan_index: scan.sample_index,
                subspace: scan.subspace.clone(),
                plane_normal: scan.plane_normal.clone(),
                sample_points: scan.section.len(),
                curved: curved_dto(&scan.section, &scan.curved),
                reverified: *reverified,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetsDto {
    pub samples: usize,
    pub points: usize,
    pub scans: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionDto {
    pub criterion: &'static str,
    pub verdict: &'static str,
    pub witness: Option<WitnessDto>,
    pub budgets: BudgetsDto,
    pub seed: u64,
    pub tau: f64,
    pub exact: bool,
    pub checked: usize,
    pub exact_counts: Vec<usize>,
    pub inconclusive: usize,
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    if v.is_consistent() {
        "polytope-consistent"
    } else {
        "non-polytope"
    }
}

impl From<&CriterionReport> for CriterionDto {
    fn from(r: &CriterionReport) -> Self {
        CriterionDto {
            criterion: r.criterion.id(),
            verdict: verdict_name(&r.verdict),
            witness: r.verdict.witness().map(WitnessDto::from),
            budgets: BudgetsDto {
                samples: r.budgets.samples,
                points: r.budgets.points,
                scans: r.budgets.scans,
            },
            seed: r.seed,
            tau: r.budgets.tau,
            exact: r.exact,
            checked: r.checked,
            exact_counts: r.exact_counts.clone(),
            inconclusive: r.inconclusive,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BodyDto {
    pub source: String,
    pub kind: &'static str,
    pub dim: usize,
    pub exact: bool,
}

/// Top-level report of one CLI run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: &'static str,
    pub body: BodyDto,
    pub seed: u64,
    pub tau: f64,
    /// `ok`, `polytope-consistent` or `non-polytope`.
    pub outcome: &'static str,
    pub result: T,
    pub warnings: Vec<String>,
}

impl<T: Serialize> RunReport<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
