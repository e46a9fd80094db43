//! Exact rational scalars.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

/// Failure to parse a [`Scalar`] from text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Scalar(BigRational::from_integer(value))
    }

    /// `numer / denom`, reduced. Returns `None` for a zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(numer, denom)))
        }
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom)).expect("zero denominator")
    }

    pub fn from_rational(value: BigRational) -> Self {
        Scalar(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Sign as an [`Ordering`] against zero.
    pub fn sign(&self) -> Ordering {
        self.0.numer().sign().cmp(&Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn square(&self) -> Self {
        Scalar(&self.0 * &self.0)
    }

    /// Nearest `f64`. Huge or tiny values saturate the way `BigInt::to_f64` does.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        // Shift both parts down until they fit into an f64 without overflow.
        let n = self.0.numer();
        let d = self.0.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let ns = (n >> shift).to_f64().unwrap_or(0.0);
        let ds = (d >> shift).to_f64().unwrap_or(1.0);
        if ds == 0.0 {
            if ns.is_sign_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            ns / ds
        }
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64_exact(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Scalar)
    }

    /// `round(value · 2^bits) / 2^bits`.
    pub fn rationalize(value: f64, bits: u32) -> Self {
        let scaled = libm::round(value * libm::ldexp(1.0, bits as i32));
        let numer = BigRational::from_float(scaled)
            .map(|r| r.to_integer())
            .unwrap_or_else(BigInt::zero);
        Scalar(BigRational::new(numer, BigInt::one() << bits))
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Short decimal rendering for human-facing output; never authoritative.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let v = self.to_f64();
        if self.is_integer() {
            return self.numer().to_string();
        }
        let mut s = alloc::format!("{:.*}", digits, v);
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        if s == "-0" {
            s = "0".into();
        }
        s
    }
}

/// An unreduced fraction for summing products without a gcd per step.
/// Terms sharing the running denominator (the common case for points with
/// a common denominator) only add numerators.
#[derive(Clone, Debug)]
pub(crate) struct FracSum {
    numer: BigInt,
    denom: BigInt,
}

impl FracSum {
    pub fn new(start: &Scalar) -> Self {
        FracSum {
            numer: start.numer().clone(),
            denom: start.denom().clone(),
        }
    }

    /// Adds `sign · a · b`.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar, negate: bool) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let mut n = a.numer() * b.numer();
        if negate {
            n = -n;
        }
        let d = a.denom() * b.denom();
        if d == self.denom {
            self.numer += n;
        } else if d.is_one() {
            self.numer += n * &self.denom;
        } else if self.denom.is_one() {
            self.numer = &self.numer * &d + n;
            self.denom = d;
        } else {
            self.numer = &self.numer * &d + n * &self.denom;
            self.denom *= d;
        }
    }

    pub fn sign(&self) -> Ordering {
        self.numer.sign().cmp(&Sign::NoSign)
    }

    pub fn finish(self) -> Scalar {
        Scalar(BigRational::new(self.numer, self.denom))
    }
}

/// Least common multiple of the denominators.
pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts integers, `a/b` fractions and decimals with an optional
    /// exponent (`-1.25e-3`). Decimals are converted exactly.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(text.to_string());
        let s = text.trim();
        if s.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| err())?;
            let d: BigInt = den.trim().parse().map_err(|_| err())?;
            return Scalar::new(n, d).ok_or_else(err);
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let e: i32 = s[pos + 1..].parse().map_err(|_| err())?;
                (&s[..pos], e)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut all = String::with_capacity(int_part.len() + frac_part.len());
        all.push_str(int_part);
        all.push_str(frac_part);
        let mut numer: BigInt = if all.is_empty() {
            BigInt::zero()
        } else {
            all.parse().map_err(|_| err())?
        };
        if negative {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Scalar(value))
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_bigint(v)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $amethod(&mut self, rhs: Scalar) {
                self.0.$amethod(rhs.0);
            }
        }
        impl<'a> $atr<&'a Scalar> for Scalar {
            fn $amethod(&mut self, rhs: &'a Scalar) {
                self.0.$amethod(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Exact parse helper used by tests and file readers.
pub fn parse_scalars(items: &[&str]) -> Result<Vec<Scalar>, ParseScalarError> {
    items.iter().map(|s| s.parse()).collect()
}
