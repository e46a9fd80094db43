use alloc::vec::Vec;

use super::klee::rationalize;
use super::CriteriaError;
use crate::geometry::{AffineFlat, Point, Scalar, Vector};
use crate::polytope::{section, Polytope};
use crate::rng::{stream, unit_vector};

/// Hyperplanes through the segment midpoint: the coordinate normals plus
/// `random` seeded random normals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatFamily {
    pub random: usize,
    pub seed: u64,
}

impl Default for FlatFamily {
    fn default() -> Self {
        FlatFamily { random: 64, seed: 0 }
    }
}

impl FlatFamily {
    pub fn normals(&self, d: usize) -> Vec<Vector> {
        let mut out: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
        for i in 0..self.random {
            let mut rng = stream(self.seed, i as u64);
            let n = rationalize(&unit_vector(&mut rng, d));
            if !n.is_zero() {
                out.push(n);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateCase {
    /// The open segment crosses the interior; `radius` is the inscribed
    /// radius used at the midpoint.
    InteriorCrossing { midpoint: Point, radius: f64 },
    /// The segment lies in the boundary; `vertices` are the section
    /// vertices on section facets through the midpoint.
    BoundarySegment {
        flat: AffineFlat,
        vertices: Vec<Point>,
        delta: f64,
        interior: Point,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonCert {
    pub p: Point,
    pub q: Point,
    pub case: CertificateCase,
    pub epsilon: f64,
}

/// Angle at `apex` between `a − apex` and `b − apex`.
fn angle_at(apex: &Point, a: &Point, b: &Point) -> f64 {
    let u = (a - apex).to_f64();
    let v = (b - apex).to_f64();
    let c = crate::body::fvec::dot(&u, &v) / (crate::body::fvec::norm(&u) * crate::body::fvec::norm(&v));
    libm::acos(c.clamp(-1.0, 1.0))
}

/// Radius `ε` of a cone-shaped neighbourhood of `p` around `[p q]` that
/// holds no vertex of `body` other than `p`.
pub fn epsilon_certificate(body: &Polytope, p: &Point, q: &Point, family: &FlatFamily) -> Result<EpsilonCert, CriteriaError> {
    if p == q {
        return Err(CriteriaError::DegenerateSegment);
    }
    if !body.contains(p) || !body.contains(q) {
        return Err(CriteriaError::PointOutside);
    }
    let x = p.midpoint(q);
    let dist_px = libm::sqrt(p.sq_dist(&x).to_f64());
    if body.interior_contains(&x) {
        // Distance from the midpoint to the boundary.
        let dist_sq = body
            .facets()
            .iter()
            .map(|f| f.slack(&x).square() / f.normal().norm_sq())
            .min()
            .expect("a full polytope has facets");
        let to_boundary = libm::sqrt(dist_sq.to_f64());
        let radius = if to_boundary < dist_px { to_boundary } else { dist_px / 2.0 };
        let ratio = radius / dist_px;
        let bound = libm::sqrt(dist_px * dist_px - radius * radius).min(libm::asin(ratio));
        return Ok(EpsilonCert {
            p: p.clone(),
            q: q.clone(),
            case: CertificateCase::InteriorCrossing { midpoint: x, radius },
            epsilon: bound / 2.0,
        });
    }

    let u = q - p;
    let normal = family
        .normals(p.dim())
        .into_iter()
        .filter(|n| !n.dot(&u).is_zero())
        .max_by(|a, b| {
            let ca = a.dot(&u).square() / a.norm_sq();
            let cb = b.dot(&u).square() / b.norm_sq();
            ca.cmp(&cb)
        })
        .ok_or(CriteriaError::NoTransversalFlat)?;
    let flat = AffineFlat::hyperplane(&normal, &normal.dot(&x))?;
    let sec = section(&body.h_form(), &flat)?.ok_or(CriteriaError::NoTransversalFlat)?;
    if !sec.is_full() {
        return Err(CriteriaError::NoTransversalFlat);
    }
    let tight = sec.chart.tight_facets(&Vector::new(flat.project_coordinates(&x)));
    let mut idx: Vec<usize> = tight.iter().flat_map(|&f| sec.chart.incidence()[f].iter().copied()).collect();
    idx.sort_unstable();
    idx.dedup();
    let vertices: Vec<Point> = idx
        .into_iter()
        .map(|i| sec.ambient_vertices[i].clone())
        .filter(|v| v != &x)
        .collect();
    let delta = libm::sqrt((normal.dot(&(p - &x)).square() / normal.norm_sq()).to_f64());
    let min_angle = vertices.iter().map(|v| angle_at(p, v, q)).fold(f64::INFINITY, f64::min);
    let interior = {
        let n = sec.ambient_vertices.len() as i64;
        let mut acc = Vector::zeros(p.dim());
        for v in &sec.ambient_vertices {
            acc = &acc + v;
        }
        acc.scale(&Scalar::ratio(1, n))
    };
    Ok(EpsilonCert {
        p: p.clone(),
        q: q.clone(),
        case: CertificateCase::BoundarySegment {
            flat,
            vertices,
            delta,
            interior,
        },
        epsilon: delta.min(min_angle) / 2.0,
    })
}

/// Whether no vertex `y ≠ p` of `body` has both `‖p − y‖ < ε` and
/// `∠ y p q < ε`. Distances compare exactly; the angle test widens the cone
/// slightly so rounding can only make the answer more pessimistic.
pub fn no_extreme_in_cone(body: &Polytope, p: &Point, q: &Point, epsilon: f64) -> bool {
    let Some(eps) = Scalar::from_f64_exact(epsilon) else {
        return false;
    };
    let eps_sq = eps.square();
    let cos_eps = Scalar::rationalize(libm::cos(epsilon) - 1e-12, 52);
    let u = q - p;
    let un = u.norm_sq();
    body.vertices().iter().filter(|y| *y != p).all(|y| {
        let w = y - p;
        let wn = w.norm_sq();
        if wn >= eps_sq {
            return true;
        }
        // cos∠ = w·u / (|w||u|) compared with cos_eps via squares.
        let dot = w.dot(&u);
        let rhs = cos_eps.square() * &wn * &un;
        let inside = if cos_eps.is_negative() {
            !dot.is_negative() || dot.square() < rhs
        } else {
            dot.is_positive() && dot.square() > rhs
        };
        !inside
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::pt;

    fn cube() -> Polytope {
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
    fn cube_diagonal_is_interior_case() {
        let c = cube();
        let cert = epsilon_certificate(&c, &pt![1, 1, 1], &pt![-1, -1, -1], &FlatFamily::default()).unwrap();
        let CertificateCase::InteriorCrossing { radius, .. } = &cert.case else { panic!() };
        assert_eq!(*radius, 1.0);
        // Independent evaluation of both branch values.
        let a = libm::sqrt(3.0 - 1.0);
        let b = libm::asin(1.0 / libm::sqrt(3.0));
        assert!(b < a);
        assert!((cert.epsilon - 0.5 * b).abs() < 1e-12);
        assert!((cert.epsilon - 0.30780).abs() < 1e-4);
        assert!(no_extreme_in_cone(&c, &cert.p, &cert.q, cert.epsilon));
    }

    #[test]
    fn cube_edge_is_boundary_case() {
        let c = cube();
        let cert = epsilon_certificate(&c, &pt![1, 1, 1], &pt![1, 1, -1], &FlatFamily::default()).unwrap();
        let CertificateCase::BoundarySegment { flat, vertices, delta, interior } = &cert.case else { panic!() };
        assert!(flat.contains(&pt![0, 0, 0]) && flat.contains(&pt![1, -1, 0]) && flat.contains(&pt![-1, 1, 0]));
        let mut v = vertices.clone();
        v.sort();
        assert_eq!(v, alloc::vec![pt![-1, 1, 0], pt![1, -1, 0]]);
        assert_eq!(*delta, 1.0);
        assert!(c.interior_contains(interior));
        // ∠ between (0,−2,−1) and (0,0,−2) is acos(1/√5) > 1.
        let ang = libm::acos(1.0 / libm::sqrt(5.0));
        assert!(ang > 1.0);
        assert_eq!(cert.epsilon, 0.5);
        assert!(no_extreme_in_cone(&c, &cert.p, &cert.q, cert.epsilon));
    }

    #[test]
    fn coincident_points_rejected() {
        let c = cube();
        assert_eq!(
            epsilon_certificate(&c, &pt![1, 1, 1], &pt![1, 1, 1], &FlatFamily::default()),
            Err(CriteriaError::DegenerateSegment)
        );
        assert_eq!(
            epsilon_certificate(&c, &pt![1, 1, 1], &pt![2, 1, 1], &FlatFamily::default()),
            Err(CriteriaError::PointOutside)
        );
    }

    #[test]
    fn oversized_epsilon_lets_vertices_in() {
        let c = cube();
        assert!(!no_extreme_in_cone(&c, &pt![1, 1, 1], &pt![1, 1, -1], 10.0));
    }

    #[test]
    fn simplex_pairs() {
        let s = convex_hull(&[pt![0, 0, 0], pt![1, 0, 0], pt![0, 1, 0], pt![0, 0, 1]]).unwrap();
        for p in s.vertices() {
            for q in s.vertices() {
                if p == q {
                    continue;
                }
                let cert = epsilon_certificate(&s, p, q, &FlatFamily::default()).unwrap();
                assert!(cert.epsilon > 0.0);
                assert!(no_extreme_in_cone(&s, p, q, cert.epsilon));
            }
        }
    }
}
