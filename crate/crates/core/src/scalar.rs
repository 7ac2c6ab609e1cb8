//! Weight scalars.
//!
//! Every weighted object in the crate is generic over [`Scalar`]. The exact
//! instantiation ([`crate::Rational`]) is the one the constructions are proven
//! against: equalities such as "every edge total is exactly 1" are asserted
//! with zero tolerance. Floating-point instantiations exist for quick
//! exploration and carry a small comparison tolerance.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumRef, Signed, ToPrimitive, Zero};

/// Numeric type usable as a cover weight, vertex load or LP coefficient.
pub trait Scalar:
    Num + NumRef + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    /// The value `num / den`. Panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;

    /// Absolute slack used by [`Scalar::approx_eq`] and friends; zero for exact types.
    fn tolerance() -> Self;

    fn from_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize representable")
    }

    /// Exact rational view. Floats convert their binary value exactly.
    fn to_rational(&self) -> BigRational;

    fn approx_eq(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.clone() - other.clone()).abs() <= Self::tolerance()
        }
    }

    /// `self >= other`, up to tolerance.
    fn approx_ge(&self, other: &Self) -> bool {
        if Self::EXACT {
            self >= other
        } else {
            self.clone() + Self::tolerance() >= *other
        }
    }

    /// Strictly negative beyond tolerance.
    fn is_definitely_negative(&self) -> bool {
        if Self::EXACT {
            self.is_negative()
        } else {
            *self < -Self::tolerance()
        }
    }

    /// Strictly positive beyond tolerance.
    fn is_definitely_positive(&self) -> bool {
        if Self::EXACT {
            self.is_positive()
        } else {
            *self > Self::tolerance()
        }
    }

    fn is_approx_zero(&self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs() <= Self::tolerance()
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn tolerance() -> Self {
        1e-9
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        (num as f64 / den as f64) as f32
    }

    fn tolerance() -> Self {
        1e-5
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }
}

/// Dyadic rational within `2^-bits` of `x` (round to nearest).
pub fn dyadic_approx(x: f64, bits: u32) -> BigRational {
    let scale = (bits as f64).exp2();
    let num = (x * scale).round();
    let num = BigInt::from_f64(num).expect("finite");
    BigRational::new(num, BigInt::from(1u8) << bits)
}

/// Integer power of a scalar by repeated squaring.
pub fn powi<T: Scalar>(base: &T, exp: u32) -> T {
    let mut result = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    result
}
