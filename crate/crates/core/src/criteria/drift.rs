use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::CriteriaError;
use crate::body::fvec::{add, axpy, dist, dot, norm, normalized, scale, sub};
use crate::polytope::Polytope;

/// Angles and lengths of one drift configuration: `eps1` is the distance
/// from `p` to the drifting point, `eps2` its angle off the limit ray.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftConfig {
    pub gamma: f64,
    pub xi: f64,
    pub phi: f64,
    pub eps1: f64,
    pub eps2: f64,
}

/// `|b−q|, |b−p|, |a−b|, |a−t|, |b−t|`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftLengths {
    pub bq: f64,
    pub bp: f64,
    pub ab: f64,
    pub at: f64,
    pub bt: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriftReport {
    pub config: DriftConfig,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// Measured `cot φ`; no Lipschitz bound is claimed for it.
    pub cot_phi: f64,
    pub lengths: DriftLengths,
    /// `|a−b| ≤ |a−t| + |t−b|`
    pub chain_holds: bool,
    /// Built from actual points rather than a free angle tuple.
    pub realized: bool,
    /// Largest deviation between measured lengths and the closed forms
    /// (zero for synthetic configurations).
    pub identity_error: f64,
}

fn check(cfg: &DriftConfig) -> Result<(), CriteriaError> {
    if cfg.phi == 0.0 {
        return Err(CriteriaError::InvalidConfig("φ = 0 is degenerate"));
    }
    if !(0.0..FRAC_PI_2).contains(&cfg.gamma) {
        return Err(CriteriaError::InvalidConfig("γ must lie in [0, π/2)"));
    }
    if !(cfg.phi > 0.0 && cfg.phi <= FRAC_PI_2) {
        return Err(CriteriaError::InvalidConfig("φ must lie in (0, π/2]"));
    }
    if !(0.0..=FRAC_PI_2).contains(&cfg.xi) {
        return Err(CriteriaError::InvalidConfig("ξ must lie in [0, π/2]"));
    }
    if !(cfg.eps1 > 0.0 && cfg.eps1.is_finite()) {
        return Err(CriteriaError::InvalidConfig("ε₁ must be positive"));
    }
    if !(cfg.eps2 > 0.0 && cfg.eps2 < FRAC_PI_2) {
        return Err(CriteriaError::InvalidConfig("ε₂ must lie in (0, π/2)"));
    }
    Ok(())
}

// Exact values at the ends of the ranges, so closed forms compare exactly.
fn sin_cos(a: f64) -> (f64, f64) {
    if a == FRAC_PI_2 {
        (1.0, 0.0)
    } else if a == 0.0 {
        (0.0, 1.0)
    } else {
        libm::sincos(a)
    }
}

fn tan(a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        libm::tan(a)
    }
}

fn cot(a: f64) -> f64 {
    if a == FRAC_PI_2 {
        0.0
    } else {
        1.0 / libm::tan(a)
    }
}

fn lengths_of(cfg: &DriftConfig) -> DriftLengths {
    let (s2, c2) = libm::sincos(cfg.eps2);
    let (sx, cx) = sin_cos(cfg.xi);
    let bq = cfg.eps1 * s2;
    let bp = cfg.eps1 * c2;
    DriftLengths {
        bq,
        bp,
        ab: bp * tan(cfg.gamma),
        at: bq * cx * cot(cfg.phi),
        bt: bq * sx,
    }
}

/// Both sides of `tan γ ≤ tan ε₂ (cos ξ cot φ + sin ξ)` for a free angle
/// tuple, together with the length chain behind it.
pub fn drift_inequality_eval(cfg: &DriftConfig) -> Result<DriftReport, CriteriaError> {
    check(cfg)?;
    let (sx, cx) = sin_cos(cfg.xi);
    let lhs = tan(cfg.gamma);
    let rhs = tan(cfg.eps2) * (cx * cot(cfg.phi) + sx);
    let lengths = lengths_of(cfg);
    Ok(DriftReport {
        config: *cfg,
        lhs,
        rhs,
        holds: lhs <= rhs,
        cot_phi: cot(cfg.phi),
        chain_holds: lengths.ab <= lengths.at + lengths.bt,
        lengths,
        realized: false,
        identity_error: 0.0,
    })
}

fn angle(apex: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let u = sub(a, apex);
    let v = sub(b, apex);
    libm::acos((dot(&u, &v) / (norm(&u) * norm(&v))).clamp(-1.0, 1.0))
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    alloc::vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Builds a drift configuration at vertex `p` of a 3-polytope: the segment
/// runs along the edge to `toward`, the limit ray is tilted by `lambda`
/// toward the edge to `side`, and the drifting point sits at `1/8` of the
/// edge to `drift`. `None` when the drifting point projects behind `p` or
/// lies in the plane of the two edges.
pub fn drift_from_polytope(
    body: &Polytope,
    p: usize,
    toward: usize,
    side: usize,
    drift: usize,
    lambda: f64,
) -> Result<Option<DriftReport>, CriteriaError> {
    if body.ambient_dim() != 3 {
        return Err(CriteriaError::InvalidK { k: 2, d: body.ambient_dim() });
    }
    let v: Vec<Vec<f64>> = body.vertices().iter().map(|x| x.to_f64()).collect();
    let pp = &v[p];
    let m = normalized(&sub(&v[toward], pp));
    let w = normalized(&sub(&v[side], pp));
    let u = normalized(&axpy(&m, lambda, &w));
    let n_h = normalized(&cross(&m, &w));
    let qn = axpy(pp, 0.125, &sub(&v[drift], pp));
    let along = dot(&sub(&qn, pp), &u);
    let off = dot(&sub(&qn, pp), &n_h);
    if along <= 1e-12 || off.abs() <= 1e-12 || dot(&m, &u) <= 1e-12 {
        return Ok(None);
    }
    let b = axpy(pp, along, &u);
    let s = axpy(&b, dot(&sub(&qn, &b), &n_h), &n_h);
    let t = axpy(&qn, -off, &n_h);
    let a = add(pp, &scale(&m, along / dot(&m, &u)));

    let cfg = DriftConfig {
        gamma: angle(pp, &a, &b),
        xi: angle(&b, &qn, &s),
        phi: angle(&a, &qn, &t),
        eps1: dist(pp, &qn),
        eps2: angle(pp, &qn, &b),
    };
    let mut report = drift_inequality_eval(&cfg)?;
    let measured = DriftLengths {
        bq: dist(&b, &qn),
        bp: dist(&b, pp),
        ab: dist(&a, &b),
        at: dist(&a, &t),
        bt: dist(&b, &t),
    };
    let f = report.lengths;
    report.identity_error = [
        (f.bq, measured.bq),
        (f.bp, measured.bp),
        (f.ab, measured.ab),
        (f.at, measured.at),
        (f.bt, measured.bt),
    ]
    .iter()
    .map(|(x, y)| (x - y).abs())
    .fold(0.0, f64::max);
    // The measured chain is a triangle inequality among actual points.
    report.chain_holds = measured.ab <= measured.at + measured.bt + 1e-12 * cfg.eps1;
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-9) + 1e-12;
    report.lengths = measured;
    report.realized = true;
    Ok(Some(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;
    use crate::pt;

    fn cfg(gamma: f64, xi: f64, phi: f64) -> DriftConfig {
        DriftConfig {
            gamma,
            xi,
            phi,
            eps1: 0.1,
            eps2: 0.2,
        }
    }

    #[test]
    fn flat_gamma_always_holds() {
        for xi in [0.0, 0.3, 1.0, FRAC_PI_2] {
            for phi in [0.1, 0.7, FRAC_PI_2] {
                let r = drift_inequality_eval(&cfg(0.0, xi, phi)).unwrap();
                assert_eq!(r.lhs, 0.0);
                assert!(r.holds);
                assert!(r.chain_holds);
            }
        }
    }

    #[test]
    fn right_angle_xi_drops_cosine_term() {
        for gamma in [0.0, 0.1, 0.2, 0.25, 1.2] {
            let r = drift_inequality_eval(&cfg(gamma, FRAC_PI_2, 0.4)).unwrap();
            assert_eq!(r.rhs, libm::tan(0.2));
            assert_eq!(r.holds, gamma <= 0.2);
        }
    }

    #[test]
    fn synthetic_tuple_can_fail() {
        let r = drift_inequality_eval(&cfg(1.3, 1.0, 1.4)).unwrap();
        assert!(!r.holds && !r.realized);
    }

    #[test]
    fn bad_configs() {
        assert!(drift_inequality_eval(&cfg(0.1, 0.2, 0.0)).is_err());
        assert!(drift_inequality_eval(&cfg(FRAC_PI_2, 0.2, 0.3)).is_err());
        assert!(drift_inequality_eval(&cfg(0.1, 2.0, 0.3)).is_err());
    }

    #[test]
    fn cube_geometry() {
        let mut v = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    v.push(pt![x, y, z]);
                }
            }
        }
        let c = convex_hull(&v).unwrap();
        let idx = |p: crate::geometry::Point| c.vertices().iter().position(|x| *x == p).unwrap();
        let (o, x, y, z) = (idx(pt![0, 0, 0]), idx(pt![1, 0, 0]), idx(pt![0, 1, 0]), idx(pt![0, 0, 1]));
        for lambda in [0.1, 0.5, 0.9] {
            // Drifting along z is orthogonal to the ray: projects onto p.
            assert!(drift_from_polytope(&c, o, x, y, z, lambda).unwrap().is_none());
        }
        // A skewed polytope where the third edge leans forward.
        let k = convex_hull(&[pt![0, 0, 0], pt![4, 0, 0], pt![0, 4, 0], pt![2, 1, 3], pt![3, 3, 3]]).unwrap();
        let idx = |p: crate::geometry::Point| k.vertices().iter().position(|x| *x == p).unwrap();
        let r = drift_from_polytope(&k, idx(pt![0, 0, 0]), idx(pt![4, 0, 0]), idx(pt![0, 4, 0]), idx(pt![2, 1, 3]), 0.3)
            .unwrap()
            .unwrap();
        assert!(r.realized && r.holds && r.chain_holds, "{r:?}");
        assert!(r.identity_error < 1e-9, "{r:?}");
        assert!(r.config.gamma > 0.0);
    }
}
