use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;

use super::polygon::{polar_sample, polygonality_detect, Polygonality};
use super::report::{Budgets, Criterion, CriterionReport, Verdict, Witness};
use super::CriteriaError;
use crate::body::fvec::{axpy, dot, normalized, orthonormalize};
use crate::body::{sample_section_boundary, Body, BodyError, SectionSample};
use crate::geometry::{AffineFlat, Point, Scalar, Vector};
use crate::polytope::{project, section, Polytope};
use crate::rng::{stream, unit_vector};

/// Denominator exponent used when sampled float directions are made exact.
pub const RATIONAL_BITS: u32 = 20;

/// Sampling budget shared by the testers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub samples: usize,
    pub points: usize,
    pub tau: f64,
    pub seed: u64,
}

/// Offset `δ(ξ)` of the flat with normal direction `ξ` from the body's
/// center.
#[derive(Clone, Debug, PartialEq)]
pub enum Offset {
    Central,
    Constant(f64),
    /// `δ(ξ) = amplitude · (axis · ξ)²`
    Quadratic { amplitude: f64, axis: Vec<f64> },
}

impl Offset {
    pub fn at(&self, xi: &[f64]) -> f64 {
        match self {
            Offset::Central => 0.0,
            Offset::Constant(c) => *c,
            Offset::Quadratic { amplitude, axis } => {
                let t = dot(axis, xi);
                amplitude * t * t
            }
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, Offset::Central)
    }
}

/// Which flats a section test samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionFamily {
    /// Flat dimension.
    pub k: usize,
    pub offset: Offset,
    /// A direction every sampled flat must contain.
    pub bias: Option<Vec<f64>>,
}

impl SectionFamily {
    pub fn central(k: usize) -> Self {
        SectionFamily {
            k,
            offset: Offset::Central,
            bias: None,
        }
    }
}

pub(crate) fn rationalize(v: &[f64]) -> Vector {
    Vector::from_f64_rationalized(v, RATIONAL_BITS)
}

/// Sampled flat `index`: the normal-like direction `ξ` and an orthonormal
/// spanning set of the flat's direction space.
fn flat_directions(family: &SectionFamily, d: usize, seed: u64, index: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut rng = stream(seed, index as u64);
    let bias = family.bias.as_ref().map(|b| normalized(b));
    let mut xi = unit_vector(&mut rng, d);
    if let Some(b) = &bias {
        xi = normalized(&axpy(&xi, -dot(&xi, b), b));
    }
    let mut span: Vec<Vec<f64>> = Vec::new();
    if let Some(b) = &bias {
        span.push(b.clone());
    }
    while span.len() < family.k {
        let r = unit_vector(&mut rng, d);
        let r = axpy(&r, -dot(&r, &xi), &xi);
        let mut cand = span.clone();
        cand.push(r);
        span = orthonormalize(&cand);
    }
    (xi, span)
}

fn exact_flat(base: &Point, xi: &[f64], span: &[Vec<f64>], d: usize) -> AffineFlat {
    if span.len() + 1 == d {
        let n = rationalize(xi);
        AffineFlat::hyperplane(&n, &n.dot(base)).expect("unit normal is nonzero")
    } else {
        let dirs: Vec<Vector> = span.iter().map(|v| rationalize(v)).collect();
        AffineFlat::new(base.clone(), &dirs).expect("dimensions agree")
    }
}

fn curved_section(body: &Body, flat: &AffineFlat, points: usize, tau: f64, index: usize) -> Result<Option<(SectionSample, super::CurvedWitness)>, CriteriaError> {
    let sample = sample_section_boundary(body, flat, points).map_err(|e| match e {
        BodyError::FlatMissesInterior => CriteriaError::FlatMissesInterior { index },
        other => other.into(),
    })?;
    Ok(match polygonality_detect(&sample, tau)? {
        Polygonality::Curved(w) => Some((sample, w)),
        Polygonality::Polygon { .. } => None,
    })
}

/// Section tester. Central offsets test central sections; other offsets
/// test the shifted family.
///
/// Exact bodies are sectioned exactly; a `k`-dim section with `k > 2` is
/// further cut by one central plane inside it. Oracle bodies need `k = 2`.
pub fn klee_section_test(body: &Body, family: &SectionFamily, cfg: &SampleConfig) -> Result<CriterionReport, CriteriaError> {
    let d = body.dim();
    let k = family.k;
    if k < 2 || k >= d || (!body.is_exact() && k != 2) {
        return Err(CriteriaError::InvalidK { k, d });
    }
    let criterion = if family.offset.is_central() { Criterion::K1 } else { Criterion::T11 };
    let mut report = CriterionReport {
        criterion,
        verdict: Verdict::PolytopeConsistent,
        budgets: Budgets {
            samples: cfg.samples,
            points: cfg.points,
            scans: 0,
            tau: cfg.tau,
        },
        seed: cfg.seed,
        exact: body.is_exact(),
        checked: 0,
        exact_counts: Vec::new(),
        inconclusive: 0,
    };
    let center = body.center();
    for index in 0..cfg.samples {
        let (xi, span) = flat_directions(family, d, cfg.seed, index);
        let shift = family.offset.at(&xi);
        report.checked = index + 1;
        if let Some(poly) = body.exact() {
            let base = &poly.centroid() + &rationalize(&crate::body::fvec::scale(&xi, shift));
            let flat = exact_flat(&base, &xi, &span, d);
            let count = exact_polygon(poly, &flat, cfg.seed, index).ok_or(CriteriaError::FlatMissesInterior { index })?;
            report.exact_counts.push(count);
            continue;
        }
        let base = rationalize(&axpy(&center, shift, &xi));
        let flat = exact_flat(&base, &xi, &span, d);
        if let Some((sample, curved)) = curved_section(body, &flat, cfg.points, cfg.tau, index)? {
            let reverified = curved_section(body, &flat, 4 * cfg.points, cfg.tau, index)?.is_some();
            report.verdict = Verdict::NonPolytope(Box::new(Witness::Section {
                index,
                flat,
                sample,
                curved,
                reverified,
            }));
            break;
        }
    }
    Ok(report)
}

// Vertex count of the exact polygon cut from `poly` by `flat` (recursing
// to a central plane when the flat has dimension above 2). `None` when the
// flat misses the interior.
fn exact_polygon(poly: &Polytope, flat: &AffineFlat, seed: u64, index: usize) -> Option<usize> {
    let sec = section(&poly.h_form(), flat).ok()??;
    if !sec.is_full() {
        return None;
    }
    let inner = centroid_of(&sec.ambient_vertices);
    if !poly.interior_contains(&inner) {
        return None;
    }
    let k = flat.dim();
    if k == 2 {
        return Some(sec.chart.vertices().len());
    }
    // Central plane inside the k-dim chart polytope.
    let mut rng = stream(seed ^ 0x9e37_79b9_7f4a_7c15, index as u64);
    let normal = rationalize(&unit_vector(&mut rng, k));
    let mid = sec.chart.centroid();
    let mut sub = Vec::new();
    for i in 0..k {
        let e = Vector::unit(k, i);
        let v = e.add_scaled(&-(normal.dot(&e) / normal.norm_sq()), &normal);
        if !v.is_zero() {
            sub.push(v);
        }
    }
    let plane = AffineFlat::new(mid, &sub).ok()?;
    let plane = if plane.dim() == 2 { plane } else { return None };
    let inner = section(&sec.chart.h_form(), &plane).ok()??;
    inner.is_full().then(|| inner.chart.vertices().len())
}

fn centroid_of(points: &[Point]) -> Point {
    let mut acc = Vector::zeros(points[0].dim());
    for p in points {
        acc = &acc + p;
    }
    acc.scale(&Scalar::ratio(1, points.len() as i64))
}

/// Support-function polar sample of the shadow on a 2-dim subspace.
pub fn projection_sample(body: &Body, subspace: &AffineFlat, points: usize, offset: f64) -> SectionSample {
    let (_, basis) = subspace.to_f64_frame();
    let frame = [basis[0].clone(), basis[1].clone()];
    let center = body.center();
    let c = [dot(&center, &frame[0]), dot(&center, &frame[1])];
    let angles: Vec<f64> = (0..points).map(|j| offset + TAU * j as f64 / points as f64).collect();
    let support: Vec<f64> = angles
        .iter()
        .map(|&th| {
            let (s, co) = libm::sincos(th);
            body.support(&axpy(&crate::body::fvec::scale(&frame[0], co), s, &frame[1])).0
        })
        .collect();
    let pts = polar_sample(&angles, &support, c);
    SectionSample::from_chart_points(alloc::vec![0.0; body.dim()], frame, [0.0, 0.0], pts)
}

fn random_subspace(d: usize, seed: u64, index: usize) -> AffineFlat {
    let mut rng = stream(seed, index as u64);
    loop {
        let frame = orthonormalize(&[unit_vector(&mut rng, d), unit_vector(&mut rng, d)]);
        if frame.len() == 2 {
            let dirs: Vec<Vector> = frame.iter().map(|v| rationalize(v)).collect();
            let flat = AffineFlat::through_origin(&dirs).expect("nonempty");
            if flat.dim() == 2 {
                return flat;
            }
        }
        let _: f64 = rng.random();
    }
}

/// Projection tester on random 2-dim subspaces.
pub fn klee_projection_test(body: &Body, k: usize, cfg: &SampleConfig) -> Result<CriterionReport, CriteriaError> {
    let d = body.dim();
    if k != 2 || d < 3 {
        return Err(CriteriaError::InvalidK { k, d });
    }
    let mut report = CriterionReport {
        criterion: Criterion::K2,
        verdict: Verdict::PolytopeConsistent,
        budgets: Budgets {
            samples: cfg.samples,
            points: cfg.points,
            scans: 0,
            tau: cfg.tau,
        },
        seed: cfg.seed,
        exact: body.is_exact(),
        checked: 0,
        exact_counts: Vec::new(),
        inconclusive: 0,
    };
    for index in 0..cfg.samples {
        let subspace = random_subspace(d, cfg.seed, index);
        report.checked = index + 1;
        if let Some(poly) = body.exact() {
            let shadow = project(poly, &subspace)?;
            report.exact_counts.push(shadow.vertices().len());
            continue;
        }
        let sample = projection_sample(body, &subspace, cfg.points, 0.0);
        if let Polygonality::Curved(curved) = polygonality_detect(&sample, cfg.tau)? {
            let again = projection_sample(body, &subspace, 4 * cfg.points, 0.0);
            let reverified = !polygonality_detect(&again, cfg.tau)?.is_polygon();
            report.verdict = Verdict::NonPolytope(Box::new(Witness::Projection {
                index,
                subspace,
                sample,
                curved,
                reverified,
            }));
            break;
        }
    }
    Ok(report)
}
