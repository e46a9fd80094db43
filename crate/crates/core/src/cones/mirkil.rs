use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{cone_section, ConeError, ConeOracle};
use crate::body::fvec::{axpy, dot, normalized, orthonormalize, scale};
use crate::body::SectionSample;
use crate::criteria::{polygonality_detect, CurvedWitness, Polygonality, MIN_POINTS};
use crate::geometry::{AffineFlat, Vector};
use crate::rng::{stream, unit_vector};

/// Cross-sections wider than this multiple of the axis length count as
/// inconclusive rather than sampled.
const REACH: f64 = 1e3;

/// How far the cross-section normal is tilted off the axis when the cone
/// lives in three dimensions.
const TILT: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirkilConfig {
    /// Number of random subspaces (or cross-sections in 3D).
    pub samples: usize,
    /// Boundary points per cross-section.
    pub points: usize,
    pub tau: f64,
    pub seed: u64,
}

/// A cross-section of the cone that failed the polygon test.
#[derive(Clone, Debug, PartialEq)]
pub struct MirkilWitness {
    pub sample_index: usize,
    /// Orthonormal frame of the 3-dim subspace through the apex.
    pub subspace: Vec<Vec<f64>>,
    /// Normal of the cross-section plane `{y : normal · (y − apex) = 1}`.
    pub plane_normal: Vec<f64>,
    pub section: SectionSample,
    pub curved: CurvedWitness,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MirkilVerdict {
    /// No sampled subspace refuted polyhedrality. Not a proof.
    Consistent {
        samples: usize,
        inconclusive: usize,
        zero_budget: bool,
    },
    NonPolyhedral(Box<MirkilWitness>),
}

impl MirkilVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, MirkilVerdict::Consistent { .. })
    }
}

/// Samples 3-dim subspaces through the apex and tests whether the cone's
/// section in each has a polygonal cross-section. In three dimensions the
/// cone's own cross-sections by tilted planes are tested instead.
///
/// Exact cones are sectioned exactly and can never yield a witness.
pub fn mirkil_scan(oracle: &dyn ConeOracle, cfg: &MirkilConfig) -> Result<MirkilVerdict, ConeError> {
    let d = oracle.dim();
    if !(3..=4).contains(&d) && oracle.exact().is_some() || d < 3 {
        return Err(ConeError::UnsupportedDimension(d));
    }
    if cfg.points < MIN_POINTS {
        return Err(ConeError::TooFewPoints(cfg.points));
    }
    let axis = normalized(&oracle.axis());
    let apex = oracle.apex();
    let mut inconclusive = 0;
    for index in 0..cfg.samples {
        let mut rng = stream(cfg.seed, index as u64);
        let (subspace, normal) = if d == 3 {
            let tilt = unit_vector(&mut rng, 3);
            let n = normalized(&axpy(&axis, TILT, &tilt));
            (orthonormalize(&[alloc::vec![1.0, 0.0, 0.0], alloc::vec![0.0, 1.0, 0.0], alloc::vec![0.0, 0.0, 1.0]]), n)
        } else {
            let r1 = unit_vector(&mut rng, d);
            let r2 = unit_vector(&mut rng, d);
            let frame = orthonormalize(&[axis.clone(), r1, r2]);
            if frame.len() < 3 {
                inconclusive += 1;
                continue;
            }
            (frame, axis.clone())
        };

        if let Some(cone) = oracle.exact() {
            if d > 3 {
                let dirs: Vec<Vector> = subspace.iter().map(|v| Vector::from_f64_rationalized(v, 20)).collect();
                let flat = AffineFlat::new(cone.apex().clone(), &dirs)?;
                // The exact section is a polyhedral cone (or just the apex).
                cone_section(cone, &flat)?;
            }
            continue;
        }

        // Cross-section plane {normal · y = 1} inside the subspace, with
        // in-plane axes orthogonal to the normal and the pole on the axis.
        let in_sub: Vec<Vec<f64>> = subspace
            .iter()
            .map(|v| axpy(v, -dot(v, &normal), &normal))
            .collect();
        let plane_axes = orthonormalize(&in_sub);
        let frame = [plane_axes[0].clone(), plane_axes[1].clone()];
        let pole_dir = scale(&axis, 1.0 / dot(&axis, &normal));
        let base = axpy(&apex, 1.0, &pole_dir);
        let mut points = Vec::with_capacity(cfg.points);
        let mut open = false;
        for j in 0..cfg.points {
            let (s, c) = libm::sincos(TAU * j as f64 / cfg.points as f64);
            let ray = axpy(&scale(&frame[0], c), s, &frame[1]);
            let inside = |x: &[f64]| {
                let dir: Vec<f64> = x.iter().zip(&apex).map(|(a, b)| a - b).collect();
                oracle.contains_direction(&dir)
            };
            match crate::body::bisect_boundary(inside, &base, &ray, REACH) {
                Some(r) => points.push([r * c, r * s]),
                None => {
                    open = true;
                    break;
                }
            }
        }
        if open {
            inconclusive += 1;
            continue;
        }
        let section = SectionSample::from_chart_points(base, frame, [0.0, 0.0], points);
        if let Polygonality::Curved(curved) = polygonality_detect(&section, cfg.tau).map_err(|_| ConeError::TooFewPoints(cfg.points))? {
            return Ok(MirkilVerdict::NonPolyhedral(Box::new(MirkilWitness {
                sample_index: index,
                subspace,
                plane_normal: normal,
                section,
                curved,
            })));
        }
    }
    Ok(MirkilVerdict::Consistent {
        samples: cfg.samples,
        inconclusive,
        zero_budget: cfg.samples == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{visual_cone, ExactConeOracle};
    use super::*;
    use crate::body::fvec::norm;
    use crate::polytope::convex_hull;
    use crate::pt;

    /// Round cone `‖y_⊥‖ ≤ slope · y_axis` around the last axis.
    struct RoundCone {
        dim: usize,
        slope: f64,
    }

    impl ConeOracle for RoundCone {
        fn dim(&self) -> usize {
            self.dim
        }
        fn apex(&self) -> Vec<f64> {
            alloc::vec![0.0; self.dim]
        }
        fn axis(&self) -> Vec<f64> {
            let mut a = alloc::vec![0.0; self.dim];
            a[self.dim - 1] = 1.0;
            a
        }
        fn contains_direction(&self, dir: &[f64]) -> bool {
            let (last, rest) = dir.split_last().unwrap();
            norm(rest) <= self.slope * last
        }
    }

    fn cfg(samples: usize) -> MirkilConfig {
        MirkilConfig {
            samples,
            points: 32,
            tau: 1e-9,
            seed: 7,
        }
    }

    #[test]
    fn round_cone_refuted_quickly() {
        for dim in [3, 4] {
            let v = mirkil_scan(&RoundCone { dim, slope: 1.0 }, &cfg(10)).unwrap();
            let MirkilVerdict::NonPolyhedral(w) = v else { panic!("dim {dim}") };
            assert_eq!(w.sample_index, 0);
        }
    }

    #[test]
    fn exact_cube_cone_is_consistent() {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(pt![x, y, z]);
                }
            }
        }
        let cube = convex_hull(&v).unwrap();
        let cone = visual_cone(&pt![0, 0, 3], &cube).unwrap();
        let verdict = mirkil_scan(&ExactConeOracle::new(cone), &cfg(25)).unwrap();
        assert!(verdict.is_consistent());
    }

    #[test]
    fn exact_four_dim_cone_is_consistent() {
        let mut v = Vec::new();
        for i in 0..4 {
            for s in [-1i64, 1] {
                let mut c = [0i64; 4];
                c[i] = s;
                v.push(Vector::from_ints(&c));
            }
        }
        let cross = convex_hull(&v).unwrap();
        let cone = visual_cone(&pt![0, 0, 0, 3], &cross).unwrap();
        assert!(mirkil_scan(&ExactConeOracle::new(cone), &cfg(10)).unwrap().is_consistent());
    }

    #[test]
    fn zero_budget_flagged() {
        let v = mirkil_scan(&RoundCone { dim: 4, slope: 1.0 }, &cfg(0)).unwrap();
        assert_eq!(v, MirkilVerdict::Consistent { samples: 0, inconclusive: 0, zero_budget: true });
        assert_eq!(
            mirkil_scan(&RoundCone { dim: 4, slope: 1.0 }, &MirkilConfig { points: 4, ..cfg(3) }),
            Err(ConeError::TooFewPoints(4))
        );
    }
}
