use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::lp::{maximize, vertex_bound, Constraint};
use super::repr::{convex_hull, HPolytope, Halfspace, Polytope};
use super::PolytopeError;
use crate::geometry::{lcm_of_denominators, nullspace, AffineFlat, GeometryError, Point, Scalar, Vector};

/// Vertices of a bounded H-polytope; `Ok(None)` when it is empty.
///
/// A maximal-slack LP finds a relative-interior point. With positive slack
/// the vertices are read off the facets of the polar hull around that
/// point; with zero slack the implicit equalities are found and the problem
/// is solved again inside their solution flat.
pub fn vertices_of(h: &HPolytope) -> Result<Option<Polytope>, PolytopeError> {
    let d = h.dim();
    if !(1..=4).contains(&d) {
        return Err(PolytopeError::UnsupportedDimension(d));
    }
    let rows: Vec<Constraint> = h
        .halfspaces()
        .iter()
        .map(|hs| Constraint::new(hs.normal().coords().to_vec(), hs.offset().clone()))
        .collect();
    match enumerate(d, rows)? {
        None => Ok(None),
        Some(points) => {
            let pts: Vec<Point> = points.into_iter().map(Vector::new).collect();
            convex_hull(&pts).map(Some)
        }
    }
}

fn l1(v: &[Scalar]) -> Scalar {
    v.iter().map(Scalar::abs).sum()
}

fn enumerate(dim: usize, rows: Vec<Constraint>) -> Result<Option<Vec<Vec<Scalar>>>, PolytopeError> {
    let mut cons = Vec::with_capacity(rows.len());
    for c in rows {
        if c.normal.iter().all(Scalar::is_zero) {
            if c.offset.is_negative() {
                return Ok(None);
            }
        } else {
            cons.push(c);
        }
    }
    if dim == 0 {
        return Ok(Some(alloc::vec![Vec::new()]));
    }
    if cons.is_empty() {
        return Err(PolytopeError::Unbounded);
    }
    if dim == 2 {
        return clip_polygon(&cons);
    }

    // max s  s.t.  a·x + |a|₁ s ≤ b,  s ≤ 1
    let mut lifted: Vec<Constraint> = cons
        .iter()
        .map(|c| {
            let mut n = c.normal.clone();
            n.push(l1(&c.normal));
            Constraint::new(n, c.offset.clone())
        })
        .collect();
    let mut cap = alloc::vec![Scalar::zero(); dim + 1];
    cap[dim] = Scalar::one();
    lifted.push(Constraint::new(cap.clone(), Scalar::one()));
    let bound = vertex_bound(&lifted, dim + 1);
    let Some(opt) = maximize(&lifted, &cap, &bound) else {
        return Ok(None);
    };
    let slack = &opt[dim];
    let x0: Vec<Scalar> = opt[..dim].to_vec();
    if slack.is_negative() {
        return Ok(None);
    }
    if slack.is_positive() {
        return polar_vertices(dim, &cons, &x0).map(Some);
    }

    // Zero slack: collect implicit equalities among the constraints tight at x0.
    let bound = vertex_bound(&cons, dim);
    let mut equalities = Vec::new();
    for c in &cons {
        if dot(&c.normal, &x0) != c.offset {
            continue;
        }
        let neg: Vec<Scalar> = c.normal.iter().map(|v| -v).collect();
        let y = maximize(&cons, &neg, &bound).expect("x0 is feasible");
        if dot(&c.normal, &y) == c.offset {
            equalities.push(Vector::new(c.normal.clone()));
        }
    }
    let dirs = nullspace(&equalities, dim);
    if dirs.is_empty() {
        return Ok(Some(alloc::vec![x0]));
    }
    let flat = AffineFlat::new(Vector::new(x0), &dirs)?;
    let restricted: Vec<Constraint> = cons.iter().map(|c| restrict_row(c, &flat)).collect();
    Ok(enumerate(flat.dim(), restricted)?.map(|pts| {
        pts.into_iter()
            .map(|c| flat.point_at(&c).into_coords())
            .collect()
    }))
}

/// Planar case: clips a box by each halfplane in turn. A float estimate
/// of the vertex range gives a small power-of-two box; if the result still
/// touches it, the clip is redone in a box no vertex can reach, and
/// touching that one means the region is unbounded.
fn clip_polygon(cons: &[Constraint]) -> Result<Option<Vec<Vec<Scalar>>>, PolytopeError> {
    if let Some(b) = float_box(cons) {
        match clip_in_box(cons, &b) {
            Some(poly) if !touches_box(&poly, &b) => return Ok(Some(poly)),
            None => return Ok(None),
            Some(_) => {}
        }
    }
    let b = vertex_bound(cons, 2);
    match clip_in_box(cons, &b) {
        Some(poly) if touches_box(&poly, &b) => Err(PolytopeError::Unbounded),
        poly => Ok(poly),
    }
}

// Power of two well above every pairwise line intersection, in floats.
fn float_box(cons: &[Constraint]) -> Option<Scalar> {
    let rows: Vec<[f64; 3]> = cons
        .iter()
        .map(|c| [c.normal[0].to_f64(), c.normal[1].to_f64(), c.offset.to_f64()])
        .collect();
    let mut reach: f64 = 1.0;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let det = a[0] * b[1] - a[1] * b[0];
            let scale = (a[0].abs() + a[1].abs()) * (b[0].abs() + b[1].abs());
            if det.abs() <= 1e-9 * scale {
                continue;
            }
            let x = (a[2] * b[1] - a[1] * b[2]) / det;
            let y = (a[0] * b[2] - a[2] * b[0]) / det;
            reach = reach.max(x.abs()).max(y.abs());
        }
    }
    if !reach.is_finite() {
        return None;
    }
    let e = libm::ceil(libm::log2(reach)) as i64 + 4;
    if !(0..=1000).contains(&e) {
        return None;
    }
    let mut b = Scalar::one();
    let two = Scalar::from_int(2);
    for _ in 0..e {
        b = &b * &two;
    }
    Some(b)
}

fn touches_box(poly: &[Vec<Scalar>], b: &Scalar) -> bool {
    poly.iter().flatten().any(|x| &x.abs() == b)
}

// Line `l[0] x + l[1] y + l[2] w = 0` in homogeneous integer coordinates.
type Line = [BigInt; 3];

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn eval(l: &Line, p: &[BigInt; 3]) -> BigInt {
    &l[0] * &p[0] + &l[1] * &p[1] + &l[2] * &p[2]
}

/// Clips the box `[-b, b]²` by every constraint. Vertices are homogeneous
/// integer points with positive weight; each edge remembers its supporting
/// line, so a new vertex is the cross product of two input lines and no
/// fraction is reduced until the end.
fn clip_in_box(cons: &[Constraint], b: &Scalar) -> Option<Vec<Vec<Scalar>>> {
    let bi = b.numer().clone();
    let one = BigInt::one();
    let zero = BigInt::zero();
    let corner = |x: &BigInt, y: &BigInt| [x.clone(), y.clone(), one.clone()];
    let nb = -bi.clone();
    // Vertex i with the line of the edge from vertex i to vertex i + 1.
    let mut poly: Vec<([BigInt; 3], Line)> = alloc::vec![
        (corner(&nb, &nb), [zero.clone(), -one.clone(), nb.clone()]),
        (corner(&bi, &nb), [one.clone(), zero.clone(), nb.clone()]),
        (corner(&bi, &bi), [zero.clone(), one.clone(), nb.clone()]),
        (corner(&nb, &bi), [-one.clone(), zero.clone(), nb.clone()]),
    ];
    for c in cons {
        let mut row = c.normal.clone();
        row.push(-c.offset.clone());
        let lcm = lcm_of_denominators(&row);
        let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        let line: Line = [ints[0].clone(), ints[1].clone(), ints[2].clone()];
        // Positive means strictly outside.
        let side: Vec<Ordering> = poly.iter().map(|(p, _)| eval(&line, p).sign().cmp(&Sign::NoSign)).collect();
        if side.iter().all(|s| *s != Ordering::Greater) {
            continue;
        }
        let n = poly.len();
        let mut out: Vec<([BigInt; 3], Line)> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, edge) = &poly[i];
            match (side[i], side[j]) {
                (Ordering::Greater, Ordering::Less) => {
                    out.push((meet(edge, &line), edge.clone()));
                }
                (Ordering::Greater, _) => {}
                (Ordering::Less, Ordering::Greater) => {
                    out.push((p.clone(), edge.clone()));
                    out.push((meet(edge, &line), line.clone()));
                }
                (Ordering::Equal, Ordering::Greater) => out.push((p.clone(), line.clone())),
                _ => out.push((p.clone(), edge.clone())),
            }
        }
        if out.is_empty() {
            return None;
        }
        poly = out;
    }
    let mut pts: Vec<Vec<Scalar>> = poly
        .into_iter()
        .map(|(p, _)| {
            let [x, y, w] = p;
            alloc::vec![
                Scalar::new(x, w.clone()).expect("positive weight"),
                Scalar::new(y, w).expect("positive weight"),
            ]
        })
        .collect();
    pts.dedup();
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    Some(pts)
}

// Intersection of two crossing lines, with positive weight.
fn meet(a: &Line, b: &Line) -> [BigInt; 3] {
    let p = cross3(a, b);
    if p[2].is_negative() {
        [-&p[0], -&p[1], -&p[2]]
    } else {
        p
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn polar_vertices(dim: usize, cons: &[Constraint], x0: &[Scalar]) -> Result<Vec<Vec<Scalar>>, PolytopeError> {
    let duals: Vec<Point> = cons
        .iter()
        .map(|c| {
            let gap = &c.offset - dot(&c.normal, x0);
            let inv = gap.recip().expect("x0 is strictly interior");
            Vector::new(c.normal.iter().map(|a| a * &inv).collect())
        })
        .collect();
    let polar = convex_hull(&duals)?;
    if polar.dim() < dim {
        return Err(PolytopeError::Unbounded);
    }
    let mut out = Vec::with_capacity(polar.facets().len());
    for f in polar.facets() {
        if !f.offset().is_positive() {
            return Err(PolytopeError::Unbounded);
        }
        let inv = f.offset().recip().expect("positive");
        out.push(
            f.normal()
                .coords()
                .iter()
                .zip(x0)
                .map(|(n, x)| x + n * &inv)
                .collect(),
        );
    }
    Ok(out)
}

fn restrict_row(c: &Constraint, flat: &AffineFlat) -> Constraint {
    let n = Vector::new(c.normal.clone());
    let normal = flat.basis().iter().map(|b| n.dot(b)).collect();
    Constraint::new(normal, &c.offset - n.dot(flat.base()))
}

/// The halfspaces of `h` pulled back to the chart of `flat`. Halfspaces
/// parallel to the flat become constant and are dropped when satisfied;
/// an unsatisfied one is kept as `0 · x ≤ offset` so emptiness is visible.
pub fn restrict(h: &HPolytope, flat: &AffineFlat) -> Result<HPolytope, PolytopeError> {
    if flat.ambient_dim() != h.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: h.dim(),
            found: flat.ambient_dim(),
        }
        .into());
    }
    let mut out = Vec::new();
    for hs in h.halfspaces() {
        let c = restrict_row(
            &Constraint::new(hs.normal().coords().to_vec(), hs.offset().clone()),
            flat,
        );
        if c.normal.iter().all(Scalar::is_zero) && !c.offset.is_negative() {
            continue;
        }
        out.push(Halfspace::new_unchecked(Vector::new(c.normal), c.offset));
    }
    Ok(HPolytope::new_unchecked(flat.dim(), out))
}

/// An exact section `K ∩ flat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub flat: AffineFlat,
    /// The section in chart coordinates of `flat`.
    pub chart: Polytope,
    /// Vertices of `chart` mapped back to ambient space, in the same order.
    pub ambient_vertices: Vec<Point>,
}

impl Section {
    /// Chart dimension equals flat dimension, i.e. the flat meets the
    /// interior of the body (for flats through interior points).
    pub fn is_full(&self) -> bool {
        self.chart.dim() == self.flat.dim()
    }
}

/// Intersects a bounded H-polytope with a flat. `Ok(None)` when they miss.
pub fn section(body: &HPolytope, flat: &AffineFlat) -> Result<Option<Section>, PolytopeError> {
    let local = restrict(body, flat)?;
    let Some(chart) = vertices_of(&local)? else {
        return Ok(None);
    };
    let ambient_vertices = chart
        .vertices()
        .iter()
        .map(|v| flat.point_at(v.coords()))
        .collect();
    Ok(Some(Section {
        flat: flat.clone(),
        chart,
        ambient_vertices,
    }))
}

/// Orthogonal projection onto a linear subspace, in the subspace's chart.
pub fn project(body: &Polytope, subspace: &AffineFlat) -> Result<Polytope, PolytopeError> {
    if subspace.ambient_dim() != body.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: body.ambient_dim(),
            found: subspace.ambient_dim(),
        }
        .into());
    }
    let pts: Vec<Point> = body
        .vertices()
        .iter()
        .map(|v| Vector::new(subspace.project_coordinates(v)))
        .collect();
    convex_hull(&pts)
}

/// Whether `point` is an extreme point of `body`.
pub fn is_extreme(point: &Point, body: &Polytope) -> Result<bool, PolytopeError> {
    if !body.contains(point) {
        return Err(PolytopeError::PointOutside);
    }
    Ok(body.is_vertex_point(point))
}

/// Parameter interval `{t : base + t·dir ∈ body}`; `None` ends are
/// unbounded. Returns `None` when the line misses.
pub(crate) fn line_interval(
    body: &HPolytope,
    base: &Point,
    dir: &Vector,
) -> Option<(Option<Scalar>, Option<Scalar>)> {
    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    for hs in body.halfspaces() {
        let a = hs.normal().dot(dir);
        let rest = hs.slack(base);
        if a.is_zero() {
            if rest.is_negative() {
                return None;
            }
            continue;
        }
        let t = rest / &a;
        if a.is_positive() {
            if hi.as_ref().map_or(true, |h| &t < h) {
                hi = Some(t);
            }
        } else if lo.as_ref().map_or(true, |l| &t > l) {
            lo = Some(t);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Whether the line meets `body` only in its boundary (and meets it at all).
pub fn supporting_line_test(line: &AffineFlat, body: &HPolytope) -> bool {
    if line.dim() != 1 || line.ambient_dim() != body.dim() {
        return false;
    }
    let dir = &line.basis()[0];
    let Some((lo, hi)) = line_interval(body, line.base(), dir) else {
        return false;
    };
    // If any point of the chord were interior, so would be its midpoint.
    let t = match (lo, hi) {
        (Some(l), Some(h)) => (l + h) / Scalar::from_int(2),
        (Some(l), None) => l + Scalar::one(),
        (None, Some(h)) => h - Scalar::one(),
        (None, None) => Scalar::zero(),
    };
    let probe = line.base().add_scaled(&t, dir);
    !body.interior_contains(&probe)
}

/// `conv{Q, p, q}` together with the point where `(p q)` crosses `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub hull: Polytope,
    pub crossing: Point,
}

/// Builds the diamond over the face `Q` (given by its points) and the
/// segment `[p q]`, after checking that the open segment meets `Q` in
/// exactly one point.
pub fn diamond_hull(face: &[Point], p: &Point, q: &Point) -> Result<Diamond, PolytopeError> {
    if p == q {
        return Err(GeometryError::DegenerateSegment.into());
    }
    let face_poly = convex_hull(face)?;
    let dir = q - p;
    let Some((lo, hi)) = line_interval(&face_poly.h_form(), p, &dir) else {
        return Err(PolytopeError::SegmentMissesFace);
    };
    let zero = Scalar::zero();
    let one = Scalar::one();
    // A bounded face gives a bounded interval.
    let lo = lo.expect("bounded face").max(zero.clone());
    let hi = hi.expect("bounded face").min(one.clone());
    if lo > hi {
        return Err(PolytopeError::SegmentMissesFace);
    }
    if lo < hi {
        return Err(PolytopeError::SegmentMeetsFaceInSegment);
    }
    if lo == zero || lo == one {
        return Err(PolytopeError::SegmentMeetsFaceAtEndpoint);
    }
    let crossing = p.add_scaled(&lo, &dir);
    let mut pts = face.to_vec();
    pts.push(p.clone());
    pts.push(q.clone());
    Ok(Diamond {
        hull: convex_hull(&pts)?,
        crossing,
    })
}

/// Whether `diamond ⊂ ∂K`. A convex subset of the boundary lies in a single
/// supporting hyperplane, so it suffices that the diamond's centroid is not
/// interior.
pub fn check_diamond_boundary(body: &HPolytope, diamond: &Polytope) -> Result<bool, PolytopeError> {
    if diamond.vertices().iter().any(|v| !body.contains(v)) {
        return Err(PolytopeError::NotContained);
    }
    Ok(!body.interior_contains(&diamond.centroid()))
}
