//! Polyhedral cones in generator form, visual cones of polytopes from
//! exterior apexes, sections of cones by flats through the apex, and the
//! randomized subspace scan for oracle cones.

mod mirkil;

use alloc::vec::Vec;

pub use mirkil::{mirkil_scan, MirkilConfig, MirkilVerdict, MirkilWitness};

use crate::geometry::{AffineFlat, GeometryError, Point, Scalar, Vector};
use crate::polytope::lp::{maximize, vertex_bound, Constraint};
use crate::polytope::{convex_hull, vertices_of, HPolytope, Halfspace, Polytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("apex lies in the body")]
    ApexInBody,
    #[error("flat does not contain the apex")]
    FlatMissesApex,
    #[error("generators do not span a pointed cone")]
    NotPointed,
    #[error("points per section must be at least 8, got {0}")]
    TooFewPoints(usize),
    #[error("cone dimension {0} is outside the supported range 3..=4")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A pointed polyhedral cone `apex + cone(rays)`.
///
/// Rays are primitive integer directions, sorted. The halfspace form is
/// `normal · (y − apex) ≤ 0` for every facet normal, together with
/// `normal · (y − apex) = 0` for every equation when the cone is not
/// full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    apex: Point,
    rays: Vec<Vector>,
    facets: Vec<Vector>,
    equations: Vec<Vector>,
    // Strictly positive on every nonzero direction of the cone.
    functional: Vector,
    dim: usize,
}

impl PolyCone {
    /// Reduces `generators` to extreme rays and derives the halfspace form.
    /// Zero generators are ignored; no generators gives the apex alone.
    pub fn from_generators(apex: Point, generators: &[Vector]) -> Result<Self, ConeError> {
        let d = apex.dim();
        let gens: Vec<&Vector> = generators.iter().filter(|g| !g.is_zero()).collect();
        if let Some(g) = gens.iter().find(|g| g.dim() != d) {
            return Err(GeometryError::DimensionMismatch { expected: d, found: g.dim() }.into());
        }
        if gens.is_empty() {
            return Ok(PolyCone {
                apex,
                rays: Vec::new(),
                facets: Vec::new(),
                equations: (0..d).map(|i| Vector::unit(d, i)).collect(),
                functional: Vector::zeros(d),
                dim: 0,
            });
        }
        let w = positive_functional(&gens).ok_or(ConeError::NotPointed)?;
        let lifted: Vec<Point> = gens
            .iter()
            .map(|g| g.scale(&w.dot(g).recip().expect("positive")))
            .collect();
        let base = convex_hull(&lifted)?;
        let rays: Vec<Vector> = {
            let mut r: Vec<Vector> = base.vertices().iter().map(Vector::primitive).collect();
            r.sort();
            r
        };
        let homogenize = |n: &Vector, off: &Scalar| -> Vector { n.add_scaled(&-off, &w).primitive() };
        let facets: Vec<Vector> = base
            .ambient_facets()
            .iter()
            .map(|f| homogenize(f.normal(), f.offset()))
            .collect();
        let equations: Vec<Vector> = base
            .span_equations()
            .iter()
            .map(|(n, off)| homogenize(n, off))
            .filter(|n| !n.is_zero())
            .collect();
        Ok(PolyCone {
            apex,
            rays,
            facets,
            equations,
            functional: w,
            dim: base.dim() + 1,
        })
    }

    pub fn apex(&self) -> &Point {
        &self.apex
    }

    /// Extreme ray directions.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// Facet normals `n` with `n · (y − apex) ≤ 0`.
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    /// Normals `n` with `n · (y − apex) = 0` on the cone.
    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    /// A direction `w` with `w · r > 0` for every ray.
    pub fn functional(&self) -> &Vector {
        &self.functional
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.apex.dim()
    }

    pub fn contains_direction(&self, v: &Vector) -> bool {
        self.facets.iter().all(|n| !n.dot(v).is_positive()) && self.equations.iter().all(|n| n.dot(v).is_zero())
    }

    pub fn contains(&self, y: &Point) -> bool {
        self.contains_direction(&(y - &self.apex))
    }

    /// Halfspace form in ambient coordinates (equations as pairs).
    pub fn h_form(&self) -> HPolytope {
        let mut hs: Vec<Halfspace> = self
            .facets
            .iter()
            .map(|n| Halfspace::new(n.clone(), n.dot(&self.apex)).expect("nonzero normal"))
            .collect();
        for n in &self.equations {
            let off = n.dot(&self.apex);
            hs.push(Halfspace::new(-n, -off.clone()).expect("nonzero normal"));
            hs.push(Halfspace::new(n.clone(), off).expect("nonzero normal"));
        }
        HPolytope::new(self.ambient_dim(), hs).expect("consistent dimension")
    }

    /// Generator-form cones are polyhedral by construction.
    pub fn is_polyhedral_exact(&self) -> bool {
        true
    }
}

/// Exact counterpart of [`PolyCone::is_polyhedral_exact`] as a free function.
pub fn is_polyhedral_exact(cone: &PolyCone) -> bool {
    cone.is_polyhedral_exact()
}

// Some w with w · g ≥ 1 for every generator, or None when no such w exists.
fn positive_functional(gens: &[&Vector]) -> Option<Vector> {
    let d = gens[0].dim();
    let cons: Vec<Constraint> = gens
        .iter()
        .map(|g| Constraint::new(g.coords().iter().map(|c| -c).collect(), -Scalar::one()))
        .collect();
    // Prefer the sum of the generators when it already works.
    let sum = gens.iter().fold(Vector::zeros(d), |acc, g| &acc + *g);
    if gens.iter().all(|g| sum.dot(g).is_positive()) {
        return Some(sum.primitive());
    }
    let bound = vertex_bound(&cons, d);
    let zero = alloc::vec![Scalar::zero(); d];
    maximize(&cons, &zero, &bound).map(|w| Vector::new(w).primitive())
}

/// The visual cone `C(z, K)` of a polytope from an exterior apex.
pub fn visual_cone(apex: &Point, body: &Polytope) -> Result<PolyCone, ConeError> {
    if apex.dim() != body.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: body.ambient_dim(),
            found: apex.dim(),
        }
        .into());
    }
    if body.contains(apex) {
        return Err(ConeError::ApexInBody);
    }
    let gens: Vec<Vector> = body.vertices().iter().map(|v| v - apex).collect();
    PolyCone::from_generators(apex.clone(), &gens)
}

/// A cone cut by a flat through its apex, in the flat's chart (apex at the
/// chart origin).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSection {
    pub apex: Point,
    /// The cutting flat, based at the apex.
    pub flat: AffineFlat,
    pub chart: PolyCone,
}

impl ConeSection {
    /// Extreme rays mapped back to ambient directions.
    pub fn ambient_rays(&self) -> Vec<Vector> {
        self.chart
            .rays()
            .iter()
            .map(|r| self.flat.direction_at(r.coords()).primitive())
            .collect()
    }
}

/// `C ∩ flat`; `Ok(None)` when the flat meets the cone only at its apex.
pub fn cone_section(cone: &PolyCone, flat: &AffineFlat) -> Result<Option<ConeSection>, ConeError> {
    if flat.ambient_dim() != cone.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: cone.ambient_dim(),
            found: flat.ambient_dim(),
        }
        .into());
    }
    if !flat.contains(cone.apex()) {
        return Err(ConeError::FlatMissesApex);
    }
    let flat = flat.translated_to(cone.apex().clone());
    let k = flat.dim();
    let pull = |n: &Vector| -> Vector { Vector::new(flat.basis().iter().map(|b| n.dot(b)).collect()) };
    let mut hs = Vec::new();
    let mut push = |n: Vector, off: Scalar| {
        if n.is_zero() {
            // Constant rows are satisfied at the apex; drop them.
            debug_assert!(!off.is_negative());
        } else {
            hs.push(Halfspace::new(n, off).expect("nonzero"));
        }
    };
    for n in cone.facets() {
        push(pull(n), Scalar::zero());
    }
    for n in cone.equations() {
        let m = pull(n);
        push(-&m, Scalar::zero());
        push(m, Scalar::zero());
    }
    let w = pull(cone.functional());
    if w.is_zero() {
        // Every chart direction has w · y = 0, so only the apex is shared.
        return Ok(None);
    }
    push(-&w, -Scalar::one());
    push(w, Scalar::one());
    let Some(base) = vertices_of(&HPolytope::new(k, hs)?)? else {
        return Ok(None);
    };
    let chart = PolyCone::from_generators(Vector::zeros(k), base.vertices())?;
    Ok(Some(ConeSection {
        apex: cone.apex().clone(),
        flat,
        chart,
    }))
}

/// A cone known through membership of directions from its apex.
pub trait ConeOracle {
    fn dim(&self) -> usize;

    fn apex(&self) -> Vec<f64>;

    /// A direction in the interior of the cone.
    fn axis(&self) -> Vec<f64>;

    /// Whether `apex + t · dir` lies in the cone for `t > 0`.
    fn contains_direction(&self, dir: &[f64]) -> bool;

    /// The exact cone, when there is one.
    fn exact(&self) -> Option<&PolyCone> {
        None
    }
}

/// A [`PolyCone`] seen through the oracle interface.
#[derive(Clone, Debug)]
pub struct ExactConeOracle {
    cone: PolyCone,
}

impl ExactConeOracle {
    pub fn new(cone: PolyCone) -> Self {
        ExactConeOracle { cone }
    }
}

impl ConeOracle for ExactConeOracle {
    fn dim(&self) -> usize {
        self.cone.ambient_dim()
    }

    fn apex(&self) -> Vec<f64> {
        self.cone.apex().to_f64()
    }

    fn axis(&self) -> Vec<f64> {
        let mut sum = Vector::zeros(self.dim());
        for r in self.cone.rays() {
            sum = sum.add_scaled(&r.norm_sq().to_f64().sqrt_recip(), r);
        }
        sum.to_f64()
    }

    fn contains_direction(&self, dir: &[f64]) -> bool {
        let v: Vec<Scalar> = dir.iter().map(|&x| Scalar::from_f64_exact(x).unwrap_or_default()).collect();
        self.cone.contains_direction(&Vector::new(v))
    }

    fn exact(&self) -> Option<&PolyCone> {
        Some(&self.cone)
    }
}

trait SqrtRecip {
    fn sqrt_recip(self) -> Scalar;
}

impl SqrtRecip for f64 {
    // Rationalized 1/√x; only used to balance the axis.
    fn sqrt_recip(self) -> Scalar {
        Scalar::rationalize(1.0 / libm::sqrt(self), 20)
    }
}
