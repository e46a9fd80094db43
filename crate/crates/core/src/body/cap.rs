use alloc::vec::Vec;

use super::fvec::{axpy, dist, dot, norm, solve, sub};
use super::{clip_ball, clip_halfspaces, halfspace_gap, unit_halfspace, BodyError};
use crate::geometry::Scalar;
use crate::polytope::lp::{maximize, vertex_bound, Constraint};
use crate::polytope::{FaceRef, Polytope};

/// A polytope with one facet replaced by a spherical cap: the remaining
/// facet halfspaces intersected with a ball whose top lies `height` above
/// the facet's vertex centroid.
#[derive(Clone, Debug)]
pub struct CapBody {
    polytope: Polytope,
    facet: usize,
    height: f64,
    kept: Vec<(Vec<f64>, f64)>,
    ball_center: Vec<f64>,
    radius: f64,
    interior: Vec<f64>,
}

impl CapBody {
    pub(crate) fn new(polytope: &Polytope, face: &FaceRef, height: f64) -> Result<Self, BodyError> {
        if !polytope.is_full_dim() {
            return Err(BodyError::NotFullDimensional);
        }
        let d = polytope.ambient_dim();
        if face.facets.len() != 1 || polytope.face_dim(face) + 1 != d {
            return Err(BodyError::NotAFacet);
        }
        if !(height > 0.0) {
            return Err(BodyError::NonPositiveHeight(height));
        }
        let facet = face.facets[0];
        let hs = &polytope.facets()[facet];
        let (unit, off) = unit_halfspace(&hs.normal().to_f64(), hs.offset().to_f64());

        // Height of the relaxed polytope above the facet plane.
        let others: Vec<Constraint> = polytope
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != facet)
            .map(|(_, h)| Constraint::new(h.normal().coords().to_vec(), h.offset().clone()))
            .collect();
        let bound = vertex_bound(&others, d) * Scalar::from_int(2);
        let top = maximize(&others, hs.normal().coords(), &bound).expect("polytope is nonempty");
        if top.iter().all(|c| c.abs() < bound) {
            let x: Vec<f64> = top.iter().map(Scalar::to_f64).collect();
            let reach = dot(&unit, &x) - off;
            if height > reach / 2.0 {
                return Err(BodyError::CapTooHigh {
                    height,
                    bound: reach / 2.0,
                });
            }
        }

        let verts: Vec<Vec<f64>> = polytope.vertices().iter().map(|v| v.to_f64()).collect();
        let on_facet = &polytope.incidence()[facet];
        let mut fc = alloc::vec![0.0; d];
        for &i in on_facet {
            fc = axpy(&fc, 1.0 / on_facet.len() as f64, &verts[i]);
        }
        // Smallest radius keeping every vertex inside the ball.
        let radius = verts
            .iter()
            .map(|v| {
                let w = sub(v, &fc);
                let t = dot(&unit, &w).min(0.0);
                let lifted = axpy(&w, -height, &unit);
                dot(&lifted, &lifted) / (2.0 * (height - t))
            })
            .fold(0.0, f64::max);
        let ball_center = axpy(&fc, -(radius - height), &unit);
        let kept = polytope
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != facet)
            .map(|(_, h)| unit_halfspace(&h.normal().to_f64(), h.offset().to_f64()))
            .collect();
        Ok(CapBody {
            polytope: polytope.clone(),
            facet,
            height,
            kept,
            ball_center,
            radius,
            interior: polytope.centroid().to_f64(),
        })
    }

    pub fn dim(&self) -> usize {
        self.interior.len()
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// Index of the replaced facet.
    pub fn facet(&self) -> usize {
        self.facet
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn ball_center(&self) -> &[f64] {
        &self.ball_center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub(crate) fn interior(&self) -> &[f64] {
        &self.interior
    }

    pub(crate) fn gap(&self, x: &[f64]) -> f64 {
        halfspace_gap(&self.kept, x).max(dist(x, &self.ball_center) - self.radius)
    }

    pub(crate) fn ray_interval(&self, origin: &[f64], dir: &[f64]) -> Option<(f64, f64)> {
        let (lo, hi) = clip_ball(&self.ball_center, self.radius, origin, dir)?;
        clip_halfspaces(&self.kept, origin, dir, lo, hi)
    }

    pub(crate) fn bounding_radius(&self) -> f64 {
        dist(&self.interior, &self.ball_center) + self.radius
    }

    /// The maximiser lies either on the sphere within a flat cut out by at
    /// most `d − 1` active halfspaces, or at a vertex of the halfspaces.
    /// Both candidate families are enumerated.
    pub(crate) fn support(&self, u: &[f64]) -> (f64, Vec<f64>) {
        let d = self.dim();
        let tol = 1e-9 * (1.0 + self.radius);
        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut consider = |x: Vec<f64>| {
            if halfspace_gap(&self.kept, &x) > tol || dist(&x, &self.ball_center) > self.radius + tol {
                return;
            }
            let h = dot(u, &x);
            if best.as_ref().map_or(true, |(b, _)| h > *b) {
                best = Some((h, x));
            }
        };
        let m = self.kept.len();
        let mut subset: Vec<usize> = Vec::new();
        // Enumerate subsets of size ≤ d in lexicographic order.
        loop {
            if subset.len() < d {
                if let Some(x) = self.sphere_candidate(&subset, u) {
                    consider(x);
                }
            } else if let Some(x) = self.vertex_candidate(&subset) {
                consider(x);
            }
            // Next subset.
            if subset.len() < d {
                let next = subset.last().map_or(0, |l| l + 1);
                if next < m {
                    subset.push(next);
                    continue;
                }
            }
            loop {
                match subset.pop() {
                    None => {
                        let (h, x) = best.expect("the cap top is always a candidate");
                        return (h, x);
                    }
                    Some(l) if l + 1 < m => {
                        subset.push(l + 1);
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
    }

    // Maximiser of u·x on the sphere within {n_i · x = b_i, i ∈ subset}.
    fn sphere_candidate(&self, subset: &[usize], u: &[f64]) -> Option<Vec<f64>> {
        let (foot, dir) = if subset.is_empty() {
            (self.ball_center.clone(), u.to_vec())
        } else {
            let rows: Vec<&Vec<f64>> = subset.iter().map(|&i| &self.kept[i].0).collect();
            let gram: Vec<Vec<f64>> = rows.iter().map(|a| rows.iter().map(|b| dot(a, b)).collect()).collect();
            let resid: Vec<f64> = subset
                .iter()
                .map(|&i| dot(&self.kept[i].0, &self.ball_center) - self.kept[i].1)
                .collect();
            let lam = solve(gram.clone(), resid)?;
            let mut foot = self.ball_center.clone();
            for (a, l) in rows.iter().zip(&lam) {
                foot = axpy(&foot, -l, a);
            }
            let mu = solve(gram, rows.iter().map(|a| dot(a, u)).collect())?;
            let mut dir = u.to_vec();
            for (a, l) in rows.iter().zip(&mu) {
                dir = axpy(&dir, -l, a);
            }
            (foot, dir)
        };
        let rho2 = self.radius * self.radius - {
            let w = sub(&foot, &self.ball_center);
            dot(&w, &w)
        };
        let nd = norm(&dir);
        if rho2 < 0.0 || nd < 1e-12 {
            return None;
        }
        Some(axpy(&foot, libm::sqrt(rho2) / nd, &dir))
    }

    fn vertex_candidate(&self, subset: &[usize]) -> Option<Vec<f64>> {
        let m = subset.iter().map(|&i| self.kept[i].0.clone()).collect();
        let rhs = subset.iter().map(|&i| self.kept[i].1).collect();
        solve(m, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{glue_cap, Membership, DEFAULT_TAU};
    use super::*;
    use crate::pt;

    fn cube_cap(h: f64) -> Result<super::super::Body, BodyError> {
        let c = super::super::tests::cube();
        let f = c.face_of(&[pt![1, 0, 0]]).unwrap();
        glue_cap(&c, &f, h)
    }

    #[test]
    fn cap_geometry() {
        let b = cube_cap(0.5).unwrap();
        let super::super::Body::Cap(cap) = &b else { unreachable!() };
        // Facet corners (1,±1,±1) lie on the sphere: R = (2 + 1/4)/(2·1/2).
        assert!((cap.radius() - 2.25).abs() < 1e-12);
        assert!((cap.ball_center()[0] - (1.0 - 1.75)).abs() < 1e-12);
        let (h, p) = b.support(&[1.0, 0.0, 0.0]);
        assert!((h - 1.5).abs() < 1e-12);
        assert!((p[1]).abs() < 1e-12);
        assert_eq!(b.membership(&[1.4, 0.0, 0.0], DEFAULT_TAU), Membership::Inside);
        assert_eq!(b.membership(&[1.1, 1.0, 1.0], DEFAULT_TAU), Membership::Outside);
        assert_eq!(b.membership(&[-1.0, 0.0, 0.0], DEFAULT_TAU), Membership::Boundary);
        // Support in a direction away from the cap is the cube's.
        let (h, _) = b.support(&[-1.0, -1.0, 0.0]);
        assert!((h - 2.0).abs() < 1e-9);
    }

    #[test]
    fn cap_parameters_checked() {
        assert!(matches!(cube_cap(0.0), Err(BodyError::NonPositiveHeight(_))));
        // The square prism left after dropping x ≤ 1 is unbounded upward, so
        // any positive height is admitted.
        assert!(cube_cap(5.0).is_ok());
        // Cube with the corner (1,1,1) cut off at x + y + z = 5/2: dropping the
        // cut leaves the corner at height (1/2)/√3 above it.
        let mut pts: Vec<crate::geometry::Point> = super::super::tests::cube()
            .vertices()
            .iter()
            .filter(|v| **v != pt![1, 1, 1])
            .cloned()
            .collect();
        let half = Scalar::ratio(1, 2);
        let one = Scalar::one();
        for i in 0..3 {
            let mut c = alloc::vec![one.clone(); 3];
            c[i] = half.clone();
            pts.push(crate::geometry::Vector::new(c));
        }
        let cut = crate::polytope::convex_hull(&pts).unwrap();
        let corner = crate::geometry::Vector::new(alloc::vec![Scalar::ratio(5, 6); 3]);
        let face = cut.face_of(&[corner]).unwrap();
        assert!(glue_cap(&cut, &face, 0.1).is_ok());
        match glue_cap(&cut, &face, 0.2) {
            Err(BodyError::CapTooHigh { bound, .. }) => assert!((bound - 0.25 / libm::sqrt(3.0)).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let vertex = cut.face_of(&[pt![-1, -1, -1]]).unwrap();
        assert_eq!(glue_cap(&cut, &vertex, 0.1).unwrap_err(), BodyError::NotAFacet);
    }

    #[test]
    fn membership_monotone_along_rays() {
        let b = cube_cap(0.4).unwrap();
        let c = b.center();
        for k in 0..64 {
            let th = k as f64 * 0.1;
            let dir = [libm::cos(th), libm::sin(th) * 0.7, libm::sin(th) * 0.3];
            let mut was_inside = true;
            for s in 0..200 {
                let x = axpy(&c, s as f64 * 0.02, &dir);
                let inside = b.gap(&x) <= 0.0;
                assert!(was_inside || !inside);
                was_inside = inside;
            }
        }
    }
}
