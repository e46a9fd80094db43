use alloc::vec::Vec;

use super::linalg::{orthogonal_complement, orthogonalize};
use super::scalar::Scalar;
use super::vector::{Point, Vector};
use super::GeometryError;

/// An affine flat `base + span(basis)`.
///
/// The basis is pairwise orthogonal but not normalised, so every coordinate
/// chart stays rational. Bases built through the constructors are scaled to
/// primitive integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFlat {
    base: Point,
    basis: Vec<Vector>,
    // Squared lengths of the basis vectors, cached for chart maps.
    norms: Vec<Scalar>,
}

impl AffineFlat {
    /// Flat through `base` spanned by `spanning` (dependent vectors are dropped).
    pub fn new(base: Point, spanning: &[Vector]) -> Result<Self, GeometryError> {
        for v in spanning {
            if v.dim() != base.dim() {
                return Err(GeometryError::DimensionMismatch {
                    expected: base.dim(),
                    found: v.dim(),
                });
            }
        }
        let basis: Vec<Vector> = orthogonalize(spanning).iter().map(Vector::primitive).collect();
        Ok(Self::from_orthogonal(base, basis))
    }

    /// Flat through the origin.
    pub fn through_origin(spanning: &[Vector]) -> Result<Self, GeometryError> {
        let d = spanning.first().map(Vector::dim).ok_or(GeometryError::EmptySpan)?;
        Self::new(Vector::zeros(d), spanning)
    }

    /// `{x : normal · x = offset}`.
    pub fn hyperplane(normal: &Vector, offset: &Scalar) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        let base = normal.scale(&(offset / normal.norm_sq()));
        let basis = orthogonal_complement(core::slice::from_ref(normal), normal.dim());
        Ok(Self::from_orthogonal(base, basis))
    }

    /// The whole space with the standard chart.
    pub fn whole_space(dim: usize) -> Self {
        let basis = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        Self::from_orthogonal(Vector::zeros(dim), basis)
    }

    pub(crate) fn from_orthogonal(base: Point, basis: Vec<Vector>) -> Self {
        debug_assert!(basis
            .iter()
            .enumerate()
            .all(|(i, u)| !u.is_zero() && basis[..i].iter().all(|w| w.dot(u).is_zero())));
        let norms = basis.iter().map(Vector::norm_sq).collect();
        AffineFlat { base, basis, norms }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Intrinsic dimension `k`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn is_whole_space(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn passes_through_origin(&self) -> bool {
        self.contains(&Vector::zeros(self.ambient_dim()))
    }

    /// Chart coordinates of the orthogonal projection of `point` onto the flat.
    pub fn project_coordinates(&self, point: &Point) -> Vec<Scalar> {
        let rel = point - &self.base;
        self.direction_coordinates(&rel)
    }

    /// Chart coordinates of the orthogonal projection of a direction.
    pub fn direction_coordinates(&self, v: &Vector) -> Vec<Scalar> {
        self.basis
            .iter()
            .zip(&self.norms)
            .map(|(b, nn)| v.dot(b) / nn)
            .collect()
    }

    /// Exact chart coordinates of `point`, or `None` when it is not on the flat.
    pub fn coordinates(&self, point: &Point) -> Result<Option<Vec<Scalar>>, GeometryError> {
        if point.dim() != self.ambient_dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: point.dim(),
            });
        }
        let coords = self.project_coordinates(point);
        if self.is_whole_space() || &self.point_at(&coords) == point {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, point: &Point) -> bool {
        matches!(self.coordinates(point), Ok(Some(_)))
    }

    /// `base + Σ coords[i] · basis[i]`.
    pub fn point_at(&self, coords: &[Scalar]) -> Point {
        let mut p = self.base.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                p = p.add_scaled(c, b);
            }
        }
        p
    }

    /// `Σ coords[i] · basis[i]`.
    pub fn direction_at(&self, coords: &[Scalar]) -> Vector {
        let mut v = Vector::zeros(self.ambient_dim());
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = v.add_scaled(c, b);
            }
        }
        v
    }

    /// Whether `v` lies in the direction space of the flat.
    pub fn contains_direction(&self, v: &Vector) -> bool {
        let c = self.direction_coordinates(v);
        &self.direction_at(&c) == v
    }

    /// Orthogonal basis of the normal space.
    pub fn normal_space(&self) -> Vec<Vector> {
        orthogonal_complement(&self.basis, self.ambient_dim())
    }

    /// Same flat, moved to pass through `base`.
    pub fn translated_to(&self, base: Point) -> Self {
        AffineFlat {
            base,
            basis: self.basis.clone(),
            norms: self.norms.clone(),
        }
    }

    /// Orthonormal floating-point frame `(base, unit basis)`.
    pub fn to_f64_frame(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let base = self.base.to_f64();
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let v = b.to_f64();
                let n = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
                v.into_iter().map(|x| x / n).collect()
            })
            .collect();
        (base, basis)
    }
}

/// A closed segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    start: Point,
    end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self, GeometryError> {
        if start.dim() != end.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: start.dim(),
                found: end.dim(),
            });
        }
        if start == end {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { start, end })
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn end(&self) -> &Point {
        &self.end
    }

    pub fn direction(&self) -> Vector {
        &self.end - &self.start
    }

    pub fn midpoint(&self) -> Point {
        self.start.midpoint(&self.end)
    }

    /// `start + t · (end − start)`.
    pub fn at(&self, t: &Scalar) -> Point {
        self.start.add_scaled(t, &self.direction())
    }

    /// The supporting line as a one-dimensional flat.
    pub fn line(&self) -> AffineFlat {
        AffineFlat::new(self.start.clone(), &[self.direction()]).expect("segment dimensions agree")
    }
}
