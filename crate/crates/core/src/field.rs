//! The `Field` trait shared by every level of the coefficient tower, plus
//! arbitrary-precision rationals as the base field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator (guaranteed by `num_rational`).
pub type BigRat = BigRational;

/// Exact field operations. Every type in the coefficient tower (rationals,
/// parameter fractions, rational functions in z, rational functions in the
/// recurrence index) implements this, so polynomials, fractions, series, and
/// linear algebra are written once.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers must guard, and the
    /// public operations map guard failures to [`crate::Error::DivisionByZero`].
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Field for BigRat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Shorthand constructor for a rational n/d.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand constructor for an integer rational.
pub fn int(n: i64) -> BigRat {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders a rational without the `num` default `x/1` noise.
pub fn fmt_rat(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True if the rational is negative (for sign-aware rendering).
pub fn rat_is_negative(r: &BigRat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_is_automatic() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-3, -6), rat(1, 2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert_eq!(rat(0, 7), int(0));
    }

    #[test]
    fn field_ops() {
        let a = rat(2, 3);
        let b = rat(-1, 6);
        assert_eq!(a.add(&b), rat(1, 2));
        assert_eq!(a.mul(&b), rat(-1, 9));
        assert_eq!(a.inv(), rat(3, 2));
        assert_eq!(a.pow(3), rat(8, 27));
        assert!(Field::is_zero(&<BigRat as Field>::zero()));
    }
}
