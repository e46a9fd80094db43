//! Convex bodies given by support and membership oracles: balls,
//! axis-aligned ellipsoids, exact polytopes and polytopes with a spherical
//! cap glued onto one facet. Also samplers for boundaries of 2-dim sections.

mod cap;
pub mod fvec;
mod sample;

use alloc::vec::Vec;

pub use cap::CapBody;
pub use sample::{sample_section_boundary, sample_section_boundary_at, SectionSample};
pub(crate) use sample::bisect_boundary;
#[cfg(test)]
pub(crate) use sample::wrap_angle;

use crate::polytope::{FaceRef, Polytope};
use fvec::{axpy, dist, dot, norm, sub};

/// Default boundary tolerance for floating oracles.
pub const DEFAULT_TAU: f64 = 1e-9;

/// Bisection depth for boundary searches.
pub const BISECTION_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BodyError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("ellipsoid axes must be positive")]
    NonPositiveAxis,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("face is not a facet")]
    NotAFacet,
    #[error("cap height must be positive, got {0}")]
    NonPositiveHeight(f64),
    #[error("cap height {height} exceeds the convexity bound {bound}")]
    CapTooHigh { height: f64, bound: f64 },
    #[error("flat must be a plane (dimension 2), got dimension {0}")]
    NotAPlane(usize),
    #[error("flat misses the interior of the body")]
    FlatMissesInterior,
    #[error("need at least {min} sample points, got {found}")]
    TooFewPoints { min: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// An exact polytope with floating copies of its data for fast oracles.
#[derive(Clone, Debug)]
pub struct PolytopeBody {
    exact: Polytope,
    vertices: Vec<Vec<f64>>,
    // Unit normals with offsets.
    halfspaces: Vec<(Vec<f64>, f64)>,
    centroid: Vec<f64>,
}

impl PolytopeBody {
    pub fn polytope(&self) -> &Polytope {
        &self.exact
    }
}

#[derive(Clone, Debug)]
pub enum Body {
    Ball { center: Vec<f64>, radius: f64 },
    Ellipsoid { center: Vec<f64>, axes: Vec<f64> },
    Polytope(PolytopeBody),
    Cap(CapBody),
}

pub fn make_ball(center: Vec<f64>, radius: f64) -> Result<Body, BodyError> {
    if !(radius > 0.0) {
        return Err(BodyError::NonPositiveRadius(radius));
    }
    Ok(Body::Ball { center, radius })
}

/// Axis-aligned ellipsoid with the given semi-axes.
pub fn make_ellipsoid(center: Vec<f64>, axes: Vec<f64>) -> Result<Body, BodyError> {
    if axes.len() != center.len() {
        return Err(BodyError::DimensionMismatch {
            expected: center.len(),
            found: axes.len(),
        });
    }
    if axes.iter().any(|a| !(*a > 0.0)) {
        return Err(BodyError::NonPositiveAxis);
    }
    Ok(Body::Ellipsoid { center, axes })
}

pub fn wrap_polytope(polytope: &Polytope) -> Result<Body, BodyError> {
    if !polytope.is_full_dim() {
        return Err(BodyError::NotFullDimensional);
    }
    Ok(Body::Polytope(float_polytope(polytope)))
}

pub(crate) fn float_polytope(polytope: &Polytope) -> PolytopeBody {
    let vertices: Vec<Vec<f64>> = polytope.vertices().iter().map(|v| v.to_f64()).collect();
    let halfspaces = polytope
        .facets()
        .iter()
        .map(|h| unit_halfspace(&h.normal().to_f64(), h.offset().to_f64()))
        .collect();
    PolytopeBody {
        exact: polytope.clone(),
        centroid: polytope.centroid().to_f64(),
        vertices,
        halfspaces,
    }
}

pub(crate) fn unit_halfspace(normal: &[f64], offset: f64) -> (Vec<f64>, f64) {
    let n = norm(normal);
    (fvec::scale(normal, 1.0 / n), offset / n)
}

/// Glues onto `facet` the part of a ball bulging `height` above it, cut by
/// the remaining facet halfspaces. The ball passes through every vertex
/// region of the polytope, so the result contains the polytope and is convex.
pub fn glue_cap(polytope: &Polytope, facet: &FaceRef, height: f64) -> Result<Body, BodyError> {
    CapBody::new(polytope, facet, height).map(Body::Cap)
}

// Signed distance to the intersection of unit halfspaces (max of gaps).
fn halfspace_gap(hs: &[(Vec<f64>, f64)], x: &[f64]) -> f64 {
    hs.iter().map(|(n, b)| dot(n, x) - b).fold(f64::NEG_INFINITY, f64::max)
}

// Parameter range of `origin + t·dir` inside the halfspaces.
fn clip_halfspaces(hs: &[(Vec<f64>, f64)], origin: &[f64], dir: &[f64], mut lo: f64, mut hi: f64) -> Option<(f64, f64)> {
    for (n, b) in hs {
        let a = dot(n, dir);
        let r = b - dot(n, origin);
        if a.abs() < 1e-300 {
            if r < 0.0 {
                return None;
            }
        } else if a > 0.0 {
            hi = hi.min(r / a);
        } else {
            lo = lo.max(r / a);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

// Roots of ‖origin + t·dir − center‖² = r².
fn clip_ball(center: &[f64], radius: f64, origin: &[f64], dir: &[f64]) -> Option<(f64, f64)> {
    let w = sub(origin, center);
    let a = dot(dir, dir);
    let b = dot(&w, dir);
    let c = dot(&w, &w) - radius * radius;
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    let s = libm::sqrt(disc);
    Some(((-b - s) / a, (-b + s) / a))
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Ball { center, .. } | Body::Ellipsoid { center, .. } => center.len(),
            Body::Polytope(p) => p.centroid.len(),
            Body::Cap(c) => c.dim(),
        }
    }

    /// A designated interior point: the center for quadrics, the vertex
    /// centroid for polytope-based bodies.
    pub fn center(&self) -> Vec<f64> {
        match self {
            Body::Ball { center, .. } | Body::Ellipsoid { center, .. } => center.clone(),
            Body::Polytope(p) => p.centroid.clone(),
            Body::Cap(c) => c.interior().to_vec(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Body::Polytope(_))
    }

    pub fn exact(&self) -> Option<&Polytope> {
        match self {
            Body::Polytope(p) => Some(&p.exact),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Body::Ball { .. } => "ball",
            Body::Ellipsoid { .. } => "ellipsoid",
            Body::Polytope(_) => "polytope",
            Body::Cap(_) => "cap",
        }
    }

    /// `h(u) = max u·x` and a point attaining it. `u` need not be unit.
    pub fn support(&self, u: &[f64]) -> (f64, Vec<f64>) {
        match self {
            Body::Ball { center, radius } => {
                let n = norm(u);
                let p = axpy(center, radius / n, u);
                (dot(center, u) + radius * n, p)
            }
            Body::Ellipsoid { center, axes } => {
                let s = libm::sqrt(u.iter().zip(axes).map(|(ui, a)| a * a * ui * ui).sum::<f64>());
                let p: Vec<f64> = center
                    .iter()
                    .zip(axes)
                    .zip(u)
                    .map(|((c, a), ui)| c + a * a * ui / s)
                    .collect();
                (dot(center, u) + s, p)
            }
            Body::Polytope(p) => {
                let (i, h) = p
                    .vertices
                    .iter()
                    .map(|v| dot(u, v))
                    .enumerate()
                    .fold((0, f64::NEG_INFINITY), |best, (i, h)| if h > best.1 { (i, h) } else { best });
                (h, p.vertices[i].clone())
            }
            Body::Cap(c) => c.support(u),
        }
    }

    /// Signed boundary gap: negative inside, positive outside. For balls and
    /// polytopes it is the Euclidean distance to the boundary (for points
    /// inside a polytope, to the nearest facet plane).
    pub fn gap(&self, x: &[f64]) -> f64 {
        match self {
            Body::Ball { center, radius } => dist(x, center) - radius,
            Body::Ellipsoid { center, axes } => {
                // Scaled by the smallest axis, so it underestimates distances.
                let r = libm::sqrt(
                    x.iter()
                        .zip(center)
                        .zip(axes)
                        .map(|((xi, ci), a)| ((xi - ci) / a) * ((xi - ci) / a))
                        .sum::<f64>(),
                );
                let amin = axes.iter().cloned().fold(f64::INFINITY, f64::min);
                (r - 1.0) * amin
            }
            Body::Polytope(p) => halfspace_gap(&p.halfspaces, x),
            Body::Cap(c) => c.gap(x),
        }
    }

    pub fn membership(&self, x: &[f64], tau: f64) -> Membership {
        let g = self.gap(x);
        if g < -tau {
            Membership::Inside
        } else if g > tau {
            Membership::Outside
        } else {
            Membership::Boundary
        }
    }

    /// `{t : origin + t·dir ∈ K}` as a closed interval, if nonempty.
    pub fn ray_interval(&self, origin: &[f64], dir: &[f64]) -> Option<(f64, f64)> {
        match self {
            Body::Ball { center, radius } => clip_ball(center, *radius, origin, dir),
            Body::Ellipsoid { center, axes } => {
                let o: Vec<f64> = origin.iter().zip(center).zip(axes).map(|((x, c), a)| (x - c) / a).collect();
                let d: Vec<f64> = dir.iter().zip(axes).map(|(x, a)| x / a).collect();
                clip_ball(&alloc::vec![0.0; o.len()], 1.0, &o, &d)
            }
            Body::Polytope(p) => clip_halfspaces(&p.halfspaces, origin, dir, f64::NEG_INFINITY, f64::INFINITY),
            Body::Cap(c) => c.ray_interval(origin, dir),
        }
    }

    /// Radius of a ball around [`Body::center`] containing the body.
    pub fn bounding_radius(&self) -> f64 {
        match self {
            Body::Ball { radius, .. } => *radius,
            Body::Ellipsoid { axes, .. } => axes.iter().cloned().fold(0.0, f64::max),
            Body::Polytope(p) => p.vertices.iter().map(|v| dist(v, &p.centroid)).fold(0.0, f64::max),
            Body::Cap(c) => c.bounding_radius(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::pt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn cube() -> Polytope {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(pt![x, y, z]);
                }
            }
        }
        convex_hull(&v).unwrap()
    }

    #[test]
    fn ball_support() {
        let b = make_ball(alloc::vec![0.0; 3], 1.0).unwrap();
        let (h, p) = b.support(&[0.0, 0.6, 0.8]);
        assert!((h - 1.0).abs() < 1e-15);
        assert!((p[2] - 0.8).abs() < 1e-15);
        assert!(make_ball(alloc::vec![0.0; 3], 0.0).is_err());
    }

    #[test]
    fn ellipsoid_support() {
        let e = make_ellipsoid(alloc::vec![0.0; 3], alloc::vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(e.support(&[1.0, 0.0, 0.0]).0, 2.0);
        assert_eq!(e.support(&[0.0, 1.0, 0.0]).0, 1.0);
        assert!(make_ellipsoid(alloc::vec![0.0; 3], alloc::vec![2.0, -1.0, 1.0]).is_err());
    }

    #[test]
    fn cube_support() {
        let c = wrap_polytope(&cube()).unwrap();
        let s = 1.0 / libm::sqrt(3.0);
        let (h, p) = c.support(&[s, s, s]);
        // Oracle: max of u·v over the 8 vertices by hand is 3/√3.
        assert!((h - libm::sqrt(3.0)).abs() < 1e-12);
        assert_eq!(p, alloc::vec![1.0, 1.0, 1.0]);
        assert!(c.is_exact());
        let flat = convex_hull(&[pt![0, 0, 0], pt![1, 0, 0], pt![0, 1, 0]]).unwrap();
        assert_eq!(wrap_polytope(&flat).unwrap_err(), BodyError::NotFullDimensional);
    }

    #[test]
    fn membership_and_rays() {
        let b = make_ball(alloc::vec![1.0, 0.0, 0.0], 2.0).unwrap();
        assert_eq!(b.membership(&[1.0, 0.0, 0.0], DEFAULT_TAU), Membership::Inside);
        assert_eq!(b.membership(&[3.0, 0.0, 0.0], DEFAULT_TAU), Membership::Boundary);
        assert_eq!(b.membership(&[3.1, 0.0, 0.0], DEFAULT_TAU), Membership::Outside);
        let (lo, hi) = b.ray_interval(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap();
        assert!((lo + 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
        let c = wrap_polytope(&cube()).unwrap();
        let (lo, hi) = c.ray_interval(&[0.0, 0.0, 0.0], &[1.0, 1.0, 0.0]).unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));
        assert!(c.ray_interval(&[2.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).is_none());
        let e = make_ellipsoid(alloc::vec![0.0; 3], alloc::vec![2.0, 1.0, 1.0]).unwrap();
        let (lo, hi) = e.ray_interval(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((lo + 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
    }

    fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = norm(&v);
            if n > 0.1 && n <= 1.0 {
                return fvec::scale(&v, 1.0 / n);
            }
        }
    }

    #[test]
    fn ball_support_is_affine_in_center() {
        let c = alloc::vec![0.5, -1.0, 2.0];
        let b = make_ball(c.clone(), 1.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let u = random_unit(&mut rng, 3);
            let (h, p) = b.support(&u);
            assert!((h - (dot(&c, &u) + 1.5)).abs() <= DEFAULT_TAU);
            assert!((dot(&u, &p) - h).abs() <= DEFAULT_TAU);
        }
    }

    #[test]
    fn support_is_sublinear() {
        let bodies = [
            make_ball(alloc::vec![0.2, 0.0, 0.0], 1.0).unwrap(),
            make_ellipsoid(alloc::vec![0.0; 3], alloc::vec![2.0, 1.0, 0.5]).unwrap(),
            wrap_polytope(&cube()).unwrap(),
            glue_cap(&cube(), &cube().face_of(&[pt![1, 0, 0]]).unwrap(), 0.4).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for b in &bodies {
            for _ in 0..300 {
                let u = random_unit(&mut rng, 3);
                let v = random_unit(&mut rng, 3);
                let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
                assert!(b.support(&w).0 <= b.support(&u).0 + b.support(&v).0 + 4.0 * DEFAULT_TAU, "{}", b.kind());
                let (h, p) = b.support(&u);
                assert!((dot(&u, &p) - h).abs() <= DEFAULT_TAU, "{}", b.kind());
                assert_ne!(b.membership(&p, 1e-7), Membership::Outside, "{}", b.kind());
            }
        }
    }
}
