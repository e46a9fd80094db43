//! Shadow boundary of a 3-polytope traced by walking the visual cones of
//! lifted lines.
//!
//! A chart point `x` of the shadow plane `ξ^⊥` lifts to the line
//! `x + tξ`. Seen from a far apex on that line, the polytope's visual cone
//! has the line on its boundary whenever `x` is on the shadow boundary. If
//! the line sits inside one cone facet, the face of the polytope on that
//! facet projects to a shadow edge through `x` and the walk jumps to its
//! counterclockwise end; if the line is a cone edge, `x` is a shadow vertex.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cones::{visual_cone, ConeError};
use crate::geometry::{AffineFlat, Point, Scalar, Vector};
use crate::polytope::Polytope;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SilhouetteError {
    #[error("the walk needs a full-dimensional polytope in 3 dimensions")]
    NotThreeDimensional,
    #[error("direction is zero or has the wrong dimension")]
    BadDirection,
    #[error("chart point is not on the shadow boundary")]
    NotOnBoundary,
    #[error("walk did not close after {0} calls")]
    NoClosure(usize),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// Shadow plane `ξ^⊥` through the origin with an orthogonal basis
/// oriented so that `(b₁, b₂, ξ)` is right-handed.
pub fn shadow_chart(direction: &Vector) -> Result<AffineFlat, SilhouetteError> {
    if direction.dim() != 3 || direction.is_zero() {
        return Err(SilhouetteError::BadDirection);
    }
    let plane = AffineFlat::hyperplane(direction, &Scalar::zero()).map_err(|_| SilhouetteError::BadDirection)?;
    let b = plane.basis();
    let (b1, b2) = (b[0].clone(), b[1].clone());
    let det = triple(&b1, &b2, direction);
    let (b1, b2) = if det.is_negative() { (b2, b1) } else { (b1, b2) };
    Ok(AffineFlat::through_origin(&[b1, b2]).expect("independent basis"))
}

fn triple(a: &Vector, b: &Vector, c: &Vector) -> Scalar {
    let cross = Vector::new(alloc::vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]);
    cross.dot(c)
}

/// Line over chart point `x` in direction `ξ`.
pub fn lift_line(chart: &AffineFlat, x: &[Scalar], direction: &Vector) -> AffineFlat {
    AffineFlat::new(chart.point_at(x), core::slice::from_ref(direction)).expect("nonzero direction")
}

/// Cross product of `a − o` and `b − o` in the chart.
fn turn(o: &Point, a: &Point, b: &Point) -> Scalar {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Walk bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    pub direction: Vector,
    pub chart: AffineFlat,
    /// Current boundary point in chart coordinates.
    pub current: Point,
    /// Polar angle of `current` about `pole`, unwrapped along the walk.
    pub angle: f64,
    /// Interior point of the shadow used for angles.
    pub pole: Point,
    /// Apex used at the last step.
    pub apex: Option<Point>,
    pub visited: Vec<Point>,
}

impl WalkState {
    pub fn new(body: &Polytope, direction: &Vector, start: Point) -> Result<Self, SilhouetteError> {
        let chart = shadow_chart(direction)?;
        let pole = shadow_pole(body, &chart);
        let angle = polar_angle(&pole, &start);
        Ok(WalkState {
            direction: direction.clone(),
            chart,
            current: start,
            angle,
            pole,
            apex: None,
            visited: Vec::new(),
        })
    }
}

fn polar_angle(pole: &Point, x: &Point) -> f64 {
    libm::atan2((&x[1] - &pole[1]).to_f64(), (&x[0] - &pole[0]).to_f64())
}

fn shadow_pole(body: &Polytope, chart: &AffineFlat) -> Point {
    let mut acc = Vector::zeros(2);
    for v in body.vertices() {
        acc = &acc + &Vector::new(chart.project_coordinates(v));
    }
    acc.scale(&Scalar::ratio(1, body.vertices().len() as i64))
}

/// Outcome of one step.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// The lifted line lies inside one cone facet; `segment` is the
    /// projection of the face on it, ordered clockwise to counterclockwise.
    Facet { next: Point, segment: [Point; 2] },
    /// The lifted line is a cone edge: the current point is a shadow vertex.
    /// `next` is the following vertex counterclockwise.
    IsolatedExtreme { next: Point },
}

/// One step of the walk from `state.current`.
pub fn step_g(body: &Polytope, state: &mut WalkState) -> Result<Step, SilhouetteError> {
    let xi = &state.direction;
    let base = state.chart.point_at(state.current.coords());
    let xi_sq = xi.norm_sq();
    let heights: Vec<Scalar> = body.vertices().iter().map(|v| v.dot(xi) / &xi_sq).collect();
    let top = heights.iter().max().expect("nonempty").clone();
    let bottom = heights.iter().min().expect("nonempty").clone();
    let spread = &top - &bottom;
    let apex = base.add_scaled(&(&top + &(Scalar::from_int(3) * &spread)), xi);
    let cone = visual_cone(&apex, body)?;
    state.apex = Some(apex.clone());

    // Cone facets containing the downward direction of the line.
    let down = -xi;
    let tight: Vec<&Vector> = cone.facets().iter().filter(|n| n.dot(&down).is_zero()).collect();
    if tight.is_empty() {
        return Err(SilhouetteError::NotOnBoundary);
    }
    let cur = &state.current;
    let pole = &state.pole;
    let faces: Vec<Vec<Point>> = tight
        .iter()
        .map(|n| {
            let mut pts: Vec<Point> = body
                .vertices()
                .iter()
                .filter(|w| n.dot(&(*w - &apex)).is_zero())
                .map(|w| Vector::new(state.chart.project_coordinates(w)))
                .collect();
            pts.sort();
            pts.dedup();
            pts
        })
        .collect();
    // Counterclockwise-most candidate: positive turn about the pole, then
    // farthest from the current point along the shadow edge.
    let pick = |cands: &mut dyn Iterator<Item = &Point>| -> Option<Point> {
        cands
            .filter(|w| *w != cur && turn(pole, cur, w).is_positive())
            .max_by(|a, b| {
                // Ties along one edge: the farther one.
                match turn(cur, a, b).sign() {
                    Ordering::Equal => cur.sq_dist(a).cmp(&cur.sq_dist(b)),
                    _ => turn(pole, a, b).sign(),
                }
            })
            .cloned()
    };
    if tight.len() == 1 {
        let face = &faces[0];
        let (lo, hi) = extremes_along(face, pole);
        let next = pick(&mut face.iter()).unwrap_or_else(|| hi.clone());
        return Ok(Step::Facet { next, segment: [lo, hi] });
    }
    let next = pick(&mut faces.iter().flatten()).ok_or(SilhouetteError::NotOnBoundary)?;
    Ok(Step::IsolatedExtreme { next })
}

// Clockwise-most and counterclockwise-most points of a collinear set seen
// from the pole.
fn extremes_along(face: &[Point], pole: &Point) -> (Point, Point) {
    let mut lo = face[0].clone();
    let mut hi = face[0].clone();
    for p in face {
        if turn(pole, &hi, p).is_positive() {
            hi = p.clone();
        }
        if turn(pole, p, &lo).is_positive() {
            lo = p.clone();
        }
    }
    (lo, hi)
}

/// Chart start point: the midpoint of the shadow's support set in chart
/// direction `(1, 0)`.
pub fn walk_start(body: &Polytope, chart: &AffineFlat) -> Point {
    let pts: Vec<Point> = body.vertices().iter().map(|v| Vector::new(chart.project_coordinates(v))).collect();
    let top = pts.iter().map(|p| p[0].clone()).max().expect("nonempty");
    let on: Vec<&Point> = pts.iter().filter(|p| p[0] == top).collect();
    let lo = on.iter().map(|p| p[1].clone()).min().expect("nonempty");
    let hi = on.iter().map(|p| p[1].clone()).max().expect("nonempty");
    Vector::new(alloc::vec![top, (lo + hi) * Scalar::ratio(1, 2)])
}

/// Result of a full walk.
#[derive(Clone, Debug, PartialEq)]
pub struct Walk {
    pub chart: AffineFlat,
    pub start: Point,
    /// Shadow vertices in counterclockwise order, in chart coordinates.
    pub vertices: Vec<Point>,
    /// Unwrapped polar angles about `pole`, strictly increasing.
    pub angles: Vec<f64>,
    pub pole: Point,
    /// Applications of `g` from the first shadow vertex until the walk is
    /// back at it.
    pub steps: usize,
    /// All `step_g` calls, including the approach from a start point that
    /// is not a vertex and the call that detects closure.
    pub calls: usize,
}

impl Walk {
    pub fn ambient_vertices(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| self.chart.point_at(v.coords())).collect()
    }
}

/// Counterclockwise vertex cycle of the shadow of `body` on `ξ^⊥`.
pub fn shadow_walk(body: &Polytope, direction: &Vector, start: Option<Point>) -> Result<Walk, SilhouetteError> {
    if body.ambient_dim() != 3 || !body.is_full_dim() {
        return Err(SilhouetteError::NotThreeDimensional);
    }
    let chart = shadow_chart(direction)?;
    let start = start.unwrap_or_else(|| walk_start(body, &chart));
    let mut state = WalkState::new(body, direction, start.clone())?;
    let limit = 2 * body.vertices().len() + 4;
    let mut angles: Vec<f64> = Vec::new();
    let mut calls = 0;
    loop {
        if calls >= limit || state.visited.len() > body.vertices().len() {
            return Err(SilhouetteError::NoClosure(calls));
        }
        calls += 1;
        match step_g(body, &mut state)? {
            Step::Facet { next, .. } => state.current = next,
            Step::IsolatedExtreme { next } => {
                if state.visited.first() == Some(&state.current) {
                    break;
                }
                let a = polar_angle(&state.pole, &state.current);
                let a = match angles.last() {
                    Some(&prev) => {
                        let mut a = a;
                        while a <= prev {
                            a += core::f64::consts::TAU;
                        }
                        a
                    }
                    None => a,
                };
                angles.push(a);
                state.angle = a;
                state.visited.push(state.current.clone());
                state.current = next;
            }
        }
    }
    let steps = state.visited.len();
    Ok(Walk {
        chart,
        start,
        vertices: state.visited,
        angles,
        pole: state.pole,
        steps,
        calls,
    })
}
