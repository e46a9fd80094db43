use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::fvec::{axpy, dist, dot, sub};
use super::{Body, BodyError, BISECTION_STEPS};
use crate::geometry::AffineFlat;

/// Boundary points of a 2-dim section, ordered by polar angle around an
/// interior pole, in an orthonormal chart of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionSample {
    /// Ambient position of the chart origin.
    pub base: Vec<f64>,
    /// Orthonormal chart axes.
    pub frame: [Vec<f64>; 2],
    /// Interior chart point the rays start from.
    pub pole: [f64; 2],
    pub points: Vec<[f64; 2]>,
    /// Polar angle of each point around the pole, increasing in `[0, 2π)`
    /// up to the starting offset.
    pub angles: Vec<f64>,
}

impl SectionSample {
    /// Builds a sample from chart points already ordered by angle.
    pub fn from_chart_points(base: Vec<f64>, frame: [Vec<f64>; 2], pole: [f64; 2], points: Vec<[f64; 2]>) -> Self {
        let angles = points
            .iter()
            .map(|p| wrap_angle(libm::atan2(p[1] - pole[1], p[0] - pole[0])))
            .collect();
        SectionSample {
            base,
            frame,
            pole,
            points,
            angles,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_ambient(&self, chart: [f64; 2]) -> Vec<f64> {
        let p = axpy(&self.base, chart[0], &self.frame[0]);
        axpy(&p, chart[1], &self.frame[1])
    }

    /// Largest distance between two sampled points.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.max(libm::hypot(a[0] - b[0], a[1] - b[1]));
            }
        }
        best
    }
}

/// Angle reduced to `[0, 2π)`.
pub(crate) fn wrap_angle(th: f64) -> f64 {
    let r = libm::fmod(th, TAU);
    if r < 0.0 {
        r + TAU
    } else {
        r
    }
}

/// Distance along `dir` (unit) from an inside point `origin` to the boundary
/// of `{x : inside(x)}`, bisected on `[0, reach]`. `None` when the point at
/// `reach` is still inside.
pub(crate) fn bisect_boundary(inside: impl Fn(&[f64]) -> bool, origin: &[f64], dir: &[f64], reach: f64) -> Option<f64> {
    if inside(&axpy(origin, reach, dir)) {
        return None;
    }
    let (mut lo, mut hi) = (0.0, reach);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if inside(&axpy(origin, mid, dir)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Samples `n` boundary points of `body ∩ flat` at equally spaced angles.
pub fn sample_section_boundary(body: &Body, flat: &AffineFlat, n: usize) -> Result<SectionSample, BodyError> {
    sample_section_boundary_at(body, flat, n, 0.0)
}

/// As [`sample_section_boundary`], with the first ray at angle `offset`.
pub fn sample_section_boundary_at(body: &Body, flat: &AffineFlat, n: usize, offset: f64) -> Result<SectionSample, BodyError> {
    if flat.dim() != 2 {
        return Err(BodyError::NotAPlane(flat.dim()));
    }
    if flat.ambient_dim() != body.dim() {
        return Err(BodyError::DimensionMismatch {
            expected: body.dim(),
            found: flat.ambient_dim(),
        });
    }
    if n < 3 {
        return Err(BodyError::TooFewPoints { min: 3, found: n });
    }
    let (base, basis) = flat.to_f64_frame();
    let frame = [basis[0].clone(), basis[1].clone()];
    let pole = find_pole(body, &base, &frame)?;
    let amb = |c: [f64; 2]| axpy(&axpy(&base, c[0], &frame[0]), c[1], &frame[1]);
    let origin = amb(pole);
    let reach = 2.0 * body.bounding_radius() + dist(&origin, &body.center()) + 1.0;
    let inside = |x: &[f64]| body.gap(x) <= 0.0;
    let mut points = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for j in 0..n {
        let th = offset + TAU * j as f64 / n as f64;
        let (s, c) = libm::sincos(th);
        let dir = axpy(&super::fvec::scale(&frame[0], c), s, &frame[1]);
        let r = bisect_boundary(inside, &origin, &dir, reach).expect("reach exceeds the body");
        points.push([pole[0] + r * c, pole[1] + r * s]);
        angles.push(th);
    }
    Ok(SectionSample {
        base,
        frame,
        pole,
        points,
        angles,
    })
}

// An interior chart point of the section, reasonably central.
fn find_pole(body: &Body, base: &[f64], frame: &[Vec<f64>; 2]) -> Result<[f64; 2], BodyError> {
    let radius = body.bounding_radius();
    let tol = 1e-9 * radius.max(1.0);
    let amb = |c: [f64; 2]| axpy(&axpy(base, c[0], &frame[0]), c[1], &frame[1]);
    let rel = sub(&body.center(), base);
    let projected = [dot(&rel, &frame[0]), dot(&rel, &frame[1])];
    if body.gap(&amb(projected)) < -tol {
        return Ok(projected);
    }
    const GRID: i32 = 40;
    let mut best = (f64::INFINITY, projected);
    for i in -GRID..=GRID {
        for j in -GRID..=GRID {
            let c = [
                projected[0] + radius * i as f64 / GRID as f64,
                projected[1] + radius * j as f64 / GRID as f64,
            ];
            let g = body.gap(&amb(c));
            if g < best.0 {
                best = (g, c);
            }
        }
    }
    if !(best.0 < -tol) {
        return Err(BodyError::FlatMissesInterior);
    }
    // Re-centre on the mean of a coarse boundary ring.
    let start = best.1;
    let origin = amb(start);
    let reach = 3.0 * radius + 1.0;
    let mut acc = [0.0, 0.0];
    const RING: usize = 16;
    for j in 0..RING {
        let (s, c) = libm::sincos(TAU * j as f64 / RING as f64);
        let dir = axpy(&super::fvec::scale(&frame[0], c), s, &frame[1]);
        let r = bisect_boundary(|x| body.gap(x) <= 0.0, &origin, &dir, reach).expect("bounded body");
        acc[0] += (start[0] + r * c) / RING as f64;
        acc[1] += (start[1] + r * s) / RING as f64;
    }
    if body.gap(&amb(acc)) < best.0 {
        Ok(acc)
    } else {
        Ok(start)
    }
}
