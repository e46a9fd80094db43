use alloc::boxed::Box;
use alloc::vec::Vec;

use super::klee::{rationalize, SampleConfig};
use super::report::{Budgets, Criterion, CriterionReport, Verdict, Witness};
use super::CriteriaError;
use crate::body::fvec::{axpy, sub};
use crate::body::{Body, Membership};
use crate::cones::{mirkil_scan, visual_cone, ConeOracle, ExactConeOracle, MirkilConfig, MirkilVerdict};
use crate::rng::{stream, unit_vector};

/// Where apexes come from.
#[derive(Clone, Debug, PartialEq)]
pub enum ApexSurface {
    /// Uniform random points on a sphere.
    Sphere { center: Vec<f64>, radius: f64 },
    /// Fixed apexes, used in order (cycled if the budget is larger).
    Points(Vec<Vec<f64>>),
}

impl ApexSurface {
    pub fn apex(&self, d: usize, seed: u64, index: usize) -> Vec<f64> {
        match self {
            ApexSurface::Sphere { center, radius } => {
                let mut rng = stream(seed, index as u64);
                axpy(center, *radius, &unit_vector(&mut rng, d))
            }
            ApexSurface::Points(pts) => pts[index % pts.len()].clone(),
        }
    }
}

/// The visual cone of an oracle body, known through ray casts.
pub struct BodyConeOracle<'a> {
    body: &'a Body,
    apex: Vec<f64>,
}

impl<'a> BodyConeOracle<'a> {
    pub fn new(body: &'a Body, apex: Vec<f64>) -> Self {
        BodyConeOracle { body, apex }
    }
}

impl ConeOracle for BodyConeOracle<'_> {
    fn dim(&self) -> usize {
        self.body.dim()
    }

    fn apex(&self) -> Vec<f64> {
        self.apex.clone()
    }

    fn axis(&self) -> Vec<f64> {
        sub(&self.body.center(), &self.apex)
    }

    fn contains_direction(&self, dir: &[f64]) -> bool {
        matches!(self.body.ray_interval(&self.apex, dir), Some((_, hi)) if hi >= 0.0)
    }
}

/// Visual-cone tester: samples apexes and scans each visual cone.
pub fn visual_cone_test(body: &Body, surface: &ApexSurface, cfg: &SampleConfig, scans: usize) -> Result<CriterionReport, CriteriaError> {
    let d = body.dim();
    if d < 3 {
        return Err(CriteriaError::InvalidK { k: 3, d });
    }
    let mut report = CriterionReport {
        criterion: Criterion::T12,
        verdict: Verdict::PolytopeConsistent,
        budgets: Budgets {
            samples: cfg.samples,
            points: cfg.points,
            scans,
            tau: cfg.tau,
        },
        seed: cfg.seed,
        exact: body.is_exact(),
        checked: 0,
        exact_counts: Vec::new(),
        inconclusive: 0,
    };
    for index in 0..cfg.samples {
        let apex = surface.apex(d, cfg.seed, index);
        report.checked = index + 1;
        let scan_cfg = MirkilConfig {
            samples: scans,
            points: cfg.points,
            tau: cfg.tau,
            seed: cfg.seed.wrapping_add(index as u64),
        };
        if let Some(poly) = body.exact() {
            let z = rationalize(&apex);
            if poly.contains(&z) {
                return Err(CriteriaError::ApexNotExterior { index });
            }
            let cone = visual_cone(&z, poly)?;
            report.exact_counts.push(cone.rays().len());
            if d > 3 {
                mirkil_scan(&ExactConeOracle::new(cone), &scan_cfg)?;
            }
            continue;
        }
        if body.membership(&apex, cfg.tau) != Membership::Outside {
            return Err(CriteriaError::ApexNotExterior { index });
        }
        let oracle = BodyConeOracle::new(body, apex.clone());
        match mirkil_scan(&oracle, &scan_cfg)? {
            MirkilVerdict::Consistent { inconclusive, .. } => report.inconclusive += inconclusive,
            MirkilVerdict::NonPolyhedral(scan) => {
                let again = MirkilConfig {
                    samples: scan.sample_index + 1,
                    points: 2 * cfg.points,
                    ..scan_cfg
                };
                let reverified = !mirkil_scan(&oracle, &again)?.is_consistent();
                report.verdict = Verdict::NonPolytope(Box::new(Witness::Cone {
                    index,
                    apex,
                    scan: *scan,
                    reverified,
                }));
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{make_ball, wrap_polytope};
    use crate::polytope::convex_hull;
    use crate::pt;

    fn cfg(samples: usize) -> SampleConfig {
        SampleConfig {
            samples,
            points: 32,
            tau: 1e-9,
            seed: 11,
        }
    }

    #[test]
    fn cube_cones_are_polyhedral() {
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(pt![x, y, z]);
                }
            }
        }
        let cube = wrap_polytope(&convex_hull(&v).unwrap()).unwrap();
        let sphere = ApexSurface::Sphere { center: alloc::vec![0.0; 3], radius: 3.0 };
        let r = visual_cone_test(&cube, &sphere, &cfg(20), 4).unwrap();
        assert!(r.verdict.is_consistent());
        assert_eq!(r.exact_counts.len(), 20);
        assert!(r.exact_counts.iter().all(|&n| (4..=7).contains(&n)), "{:?}", r.exact_counts);
    }

    #[test]
    fn ball_cone_refuted_immediately() {
        let b = make_ball(alloc::vec![0.0; 3], 1.0).unwrap();
        let sphere = ApexSurface::Sphere { center: alloc::vec![0.0; 3], radius: 3.0 };
        let r = visual_cone_test(&b, &sphere, &cfg(3), 10).unwrap();
        let w = r.verdict.witness().unwrap();
        assert_eq!(w.index(), 0);
        assert!(w.reverified());
        let b4 = make_ball(alloc::vec![0.0; 4], 1.0).unwrap();
        let sphere4 = ApexSurface::Sphere { center: alloc::vec![0.0; 4], radius: 3.0 };
        assert!(!visual_cone_test(&b4, &sphere4, &cfg(1), 10).unwrap().verdict.is_consistent());
    }

    #[test]
    fn apex_on_boundary_rejected() {
        let b = make_ball(alloc::vec![0.0; 3], 1.0).unwrap();
        let on = ApexSurface::Points(alloc::vec![alloc::vec![1.0, 0.0, 0.0]]);
        assert_eq!(visual_cone_test(&b, &on, &cfg(1), 4), Err(CriteriaError::ApexNotExterior { index: 0 }));
        let mut v = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    v.push(pt![x, y, z]);
                }
            }
        }
        let cube = wrap_polytope(&convex_hull(&v).unwrap()).unwrap();
        let corner = ApexSurface::Points(alloc::vec![alloc::vec![1.0, 1.0, 0.5]]);
        assert_eq!(visual_cone_test(&cube, &corner, &cfg(1), 4), Err(CriteriaError::ApexNotExterior { index: 0 }));
    }
}
