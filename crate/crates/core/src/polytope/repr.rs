use alloc::vec::Vec;
use core::cmp::Ordering;

use super::hull::full_dim_hull;
use super::PolytopeError;
use crate::geometry::{rank, FracSum, AffineFlat, GeometryError, Point, Scalar, Vector};

/// `{x : normal · x ≤ offset}`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    normal: Vector,
    offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Scalar) -> Result<Self, PolytopeError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal.into());
        }
        Ok(Halfspace { normal, offset })
    }

    pub(crate) fn new_unchecked(normal: Vector, offset: Scalar) -> Self {
        Halfspace { normal, offset }
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `offset − normal · x`; nonnegative inside.
    pub fn slack(&self, x: &Point) -> Scalar {
        &self.offset - self.normal.dot(x)
    }

    // Sign of the slack, without reducing intermediate fractions.
    fn side(&self, x: &Point) -> Ordering {
        let mut acc = FracSum::new(&self.offset);
        for (a, b) in self.normal.coords().iter().zip(x.coords()) {
            acc.add_product(a, b, true);
        }
        acc.sign()
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.side(x) != Ordering::Less
    }

    pub fn strictly_contains(&self, x: &Point) -> bool {
        self.side(x) == Ordering::Greater
    }

    pub fn is_tight(&self, x: &Point) -> bool {
        self.side(x) == Ordering::Equal
    }
}

/// A polyhedron given as an intersection of halfspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            }
            .into());
        }
        Ok(HPolytope { dim, halfspaces })
    }

    pub(crate) fn new_unchecked(dim: usize, halfspaces: Vec<Halfspace>) -> Self {
        HPolytope { dim, halfspaces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Every inequality strict: `x` is an interior point (for a
    /// full-dimensional polyhedron).
    pub fn interior_contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.strictly_contains(x))
    }
}

/// A face given by the facets that cut it out and the vertices it contains.
/// An empty facet list denotes the whole polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRef {
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// A convex polytope held in both representations.
///
/// The polytope lives in its affine span; facets are expressed in the span's
/// chart coordinates. For a full-dimensional polytope the span is the whole
/// space with the standard chart, so facets are ambient halfspaces.
/// Vertices are sorted lexicographically by ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    span: AffineFlat,
    vertices: Vec<Point>,
    chart_vertices: Vec<Point>,
    facets: Vec<Halfspace>,
    incidence: Vec<Vec<usize>>,
}

/// Exact convex hull of a point set in ambient dimension 1 to 4.
///
/// Lower-dimensional input is hulled inside its affine span, which is
/// reported through [`Polytope::span`].
pub fn convex_hull(points: &[Point]) -> Result<Polytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyInput)?;
    let d = first.dim();
    if !(1..=4).contains(&d) {
        return Err(PolytopeError::UnsupportedDimension(d));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: p.dim(),
        }
        .into());
    }
    let mut unique: Vec<Point> = points.to_vec();
    unique.sort();
    unique.dedup();

    let base = unique[0].clone();
    let diffs: Vec<Vector> = unique[1..].iter().map(|p| p - &base).collect();
    let span = if rank(&diffs) == d {
        AffineFlat::whole_space(d)
    } else {
        AffineFlat::new(base, &diffs)?
    };
    let k = span.dim();
    let chart: Vec<Point> = if span.is_whole_space() {
        unique.clone()
    } else {
        unique
            .iter()
            .map(|p| Vector::new(span.project_coordinates(p)))
            .collect()
    };

    let (vertex_ids, facets): (Vec<usize>, Vec<Halfspace>) = match k {
        0 => (alloc::vec![0], Vec::new()),
        1 => {
            let (lo, _) = chart.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("nonempty");
            let (hi, _) = chart.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).expect("nonempty");
            let facets = alloc::vec![
                Halfspace::new_unchecked(Vector::from_ints(&[-1]), -chart[lo][0].clone()),
                Halfspace::new_unchecked(Vector::from_ints(&[1]), chart[hi][0].clone()),
            ];
            let mut ids = alloc::vec![lo, hi];
            ids.sort_unstable();
            (ids, facets)
        }
        _ => {
            let raw = full_dim_hull(&chart);
            let facets = raw
                .facets
                .into_iter()
                .map(|f| {
                    let normal = Vector::new(f.normal.into_iter().map(Scalar::from_bigint).collect());
                    Halfspace::new_unchecked(normal, f.offset)
                })
                .collect();
            (raw.vertices, facets)
        }
    };

    // `unique` is sorted, so increasing ids keep the lexicographic order.
    let vertices: Vec<Point> = vertex_ids.iter().map(|&i| unique[i].clone()).collect();
    let chart_vertices: Vec<Point> = vertex_ids.iter().map(|&i| chart[i].clone()).collect();
    Ok(Polytope::assemble(span, vertices, chart_vertices, facets))
}

impl Polytope {
    fn assemble(span: AffineFlat, vertices: Vec<Point>, chart_vertices: Vec<Point>, facets: Vec<Halfspace>) -> Self {
        let incidence = facets
            .iter()
            .map(|f| {
                chart_vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| f.is_tight(v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Polytope {
            span,
            vertices,
            chart_vertices,
            facets,
            incidence,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.span.ambient_dim()
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_full_dim(&self) -> bool {
        self.span.is_whole_space()
    }

    pub fn span(&self) -> &AffineFlat {
        &self.span
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn chart_vertices(&self) -> &[Point] {
        &self.chart_vertices
    }

    /// Facets in chart coordinates of the span.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Vertex indices on each facet.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Chart coordinates of `x`, `None` off the span.
    pub fn chart_of(&self, x: &Point) -> Option<Point> {
        if self.span.is_whole_space() {
            return (x.dim() == self.ambient_dim()).then(|| x.clone());
        }
        self.span.coordinates(x).ok().flatten().map(Vector::new)
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self.chart_of(x) {
            Some(c) => self.facets.iter().all(|f| f.contains(&c)),
            None => false,
        }
    }

    /// Strictly inside every facet, i.e. in the relative interior.
    pub fn relative_interior_contains(&self, x: &Point) -> bool {
        match self.chart_of(x) {
            Some(c) => self.facets.iter().all(|f| f.strictly_contains(&c)),
            None => false,
        }
    }

    /// In the polytope and in the topological interior of the ambient space.
    pub fn interior_contains(&self, x: &Point) -> bool {
        self.is_full_dim() && self.relative_interior_contains(x)
    }

    /// Indices of facets tight at `x` (chart test; `x` must lie on the span).
    pub fn tight_facets(&self, x: &Point) -> Vec<usize> {
        let Some(c) = self.chart_of(x) else {
            return Vec::new();
        };
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_tight(&c))
            .map(|(i, _)| i)
            .collect()
    }

    /// Facets as ambient halfspaces, valid on the span.
    pub fn ambient_facets(&self) -> Vec<Halfspace> {
        if self.span.is_whole_space() {
            return self.facets.clone();
        }
        self.facets
            .iter()
            .map(|f| {
                let mut normal = Vector::zeros(self.ambient_dim());
                for ((a, b), bb) in f.normal().coords().iter().zip(self.span.basis()).zip(self.span_norms()) {
                    if !a.is_zero() {
                        normal = normal.add_scaled(&(a / &bb), b);
                    }
                }
                let offset = f.offset() + normal.dot(self.span.base());
                Halfspace::new_unchecked(normal, offset)
            })
            .collect()
    }

    fn span_norms(&self) -> Vec<Scalar> {
        self.span.basis().iter().map(Vector::norm_sq).collect()
    }

    /// Equations `normal · x = offset` cutting out the affine span.
    pub fn span_equations(&self) -> Vec<(Vector, Scalar)> {
        if self.span.is_whole_space() {
            return Vec::new();
        }
        self.span
            .normal_space()
            .into_iter()
            .map(|n| {
                let off = n.dot(self.span.base());
                (n, off)
            })
            .collect()
    }

    /// Ambient H-representation; span equations become halfspace pairs.
    pub fn h_form(&self) -> HPolytope {
        let mut hs = self.ambient_facets();
        for (n, off) in self.span_equations() {
            hs.push(Halfspace::new_unchecked(-&n, -off.clone()));
            hs.push(Halfspace::new_unchecked(n, off));
        }
        HPolytope::new_unchecked(self.ambient_dim(), hs)
    }

    /// Average of the vertices; in the relative interior.
    pub fn centroid(&self) -> Point {
        let n = Scalar::from_int(self.vertices.len() as i64);
        let mut acc = Vector::zeros(self.ambient_dim());
        for v in &self.vertices {
            acc = &acc + v;
        }
        acc.scale(&n.recip().expect("nonempty polytope"))
    }

    /// Smallest face containing all `points`. Points outside the polytope
    /// yield an error.
    pub fn face_of(&self, points: &[Point]) -> Result<FaceRef, PolytopeError> {
        let mut facets: Vec<usize> = (0..self.facets.len()).collect();
        for p in points {
            if !self.contains(p) {
                return Err(PolytopeError::PointOutside);
            }
            let tight = self.tight_facets(p);
            facets.retain(|f| tight.contains(f));
        }
        Ok(self.face_from_facets(facets))
    }

    pub(crate) fn face_from_facets(&self, facets: Vec<usize>) -> FaceRef {
        let vertices = (0..self.vertices.len())
            .filter(|v| facets.iter().all(|&f| self.incidence[f].contains(v)))
            .collect();
        FaceRef { facets, vertices }
    }

    /// The `i`-th facet as a face.
    pub fn facet_face(&self, i: usize) -> FaceRef {
        self.face_from_facets(alloc::vec![i])
    }

    /// Dimension of a face of this polytope.
    pub fn face_dim(&self, face: &FaceRef) -> usize {
        if face.vertices.is_empty() {
            return 0;
        }
        let normals: Vec<Vector> = face.facets.iter().map(|&f| self.facets[f].normal().clone()).collect();
        self.dim() - rank(&normals)
    }

    /// The face as a polytope of its own.
    pub fn face_polytope(&self, face: &FaceRef) -> Result<Polytope, PolytopeError> {
        let pts: Vec<Point> = face.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        convex_hull(&pts)
    }

    /// Vertex index pairs joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        if self.dim() == 1 {
            return alloc::vec![(0, 1)];
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let common: Vec<Vector> = self
                    .incidence
                    .iter()
                    .enumerate()
                    .filter(|(_, inc)| inc.contains(&i) && inc.contains(&j))
                    .map(|(f, _)| self.facets[f].normal().clone())
                    .collect();
                if rank(&common) + 1 == self.dim() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Is `x` a vertex? Decided by the rank of the facets tight at `x`.
    pub(crate) fn is_vertex_point(&self, x: &Point) -> bool {
        let normals: Vec<Vector> = self
            .tight_facets(x)
            .into_iter()
            .map(|f| self.facets[f].normal().clone())
            .collect();
        rank(&normals) == self.dim()
    }
}
