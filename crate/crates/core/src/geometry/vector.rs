use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{lcm_of_denominators, FracSum, Scalar};
use super::GeometryError;

/// A point or direction with exact rational coordinates.
///
/// Points and vectors share one representation; the ambient dimension is the
/// coordinate count. Operators panic on mismatched dimensions, the `try_*`
/// methods report [`GeometryError::DimensionMismatch`] instead.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vector {
    coords: Vec<Scalar>,
}

pub type Point = Vector;

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            coords: (0..dim).map(|_| Scalar::zero()).collect(),
        }
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[axis] = Scalar::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector {
            coords: values.iter().map(|&v| Scalar::from_int(v)).collect(),
        }
    }

    pub fn from_f64_rationalized(values: &[f64], bits: u32) -> Self {
        Vector {
            coords: values.iter().map(|&v| Scalar::rationalize(v, bits)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check(&self, other: &Vector) -> Result<(), GeometryError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector, GeometryError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Vector) -> Result<Vector, GeometryError> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_dot(&self, other: &Vector) -> Result<Scalar, GeometryError> {
        self.check(other)?;
        Ok(self.dot(other))
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        let mut acc = FracSum::new(&Scalar::zero());
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc.add_product(a, b, false);
        }
        acc.finish()
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self + factor · other`
    pub fn add_scaled(&self, factor: &Scalar, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + factor * b)
                .collect(),
        }
    }

    /// Midpoint of two points.
    pub fn midpoint(&self, other: &Vector) -> Vector {
        (self + other).scale(&Scalar::ratio(1, 2))
    }

    /// The positive multiple of `self` with coprime integer coordinates.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = lcm_of_denominators(&self.coords);
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
        Vector {
            coords: ints
                .into_iter()
                .map(|v| Scalar::from_bigint(v / &gcd))
                .collect(),
        }
    }

    /// Integer coordinates after multiplying by `factor`; the caller
    /// guarantees divisibility.
    pub(crate) fn scaled_integers(&self, factor: &BigInt) -> Vec<BigInt> {
        self.coords
            .iter()
            .map(|c| c.numer() * (factor / c.denom()))
            .collect()
    }

    pub fn sq_dist(&self, other: &Vector) -> Scalar {
        (self - other).norm_sq()
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a, 'b> Add<&'b Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, rhs: &'b Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        Vector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, 'b> Sub<&'b Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, rhs: &'b Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        Vector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

impl<'a> Neg for &'a Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<T: IntoIterator<Item = Scalar>>(iter: T) -> Self {
        Vector::new(iter.into_iter().collect())
    }
}

/// `Vector::from_ints` shorthand, mostly for tests.
#[macro_export]
macro_rules! pt {
    ($($x:expr),* $(,)?) => {
        $crate::geometry::Vector::from_ints(&[$($x as i64),*])
    };
}
