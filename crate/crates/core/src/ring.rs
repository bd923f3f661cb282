//! The coefficient contract shared by polynomials and power series.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{to_f64, Rational};

/// Operations a coefficient type must support.
///
/// `abs_dev` is the maximum absolute difference over all scalar components;
/// for exact rationals it is zero precisely when the values are equal.
pub trait CoefficientRing: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn div_int(&self, n: i64) -> Self;
    fn abs_dev(&self, other: &Self) -> f64;
    fn magnitude(&self) -> f64;
    /// Accumulated error bound carried by the value (0 for exact types).
    fn error_bound(&self) -> f64 {
        0.0
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl CoefficientRing for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn div_int(&self, n: i64) -> Self {
        self / Rational::from_integer(BigInt::from(n))
    }

    fn abs_dev(&self, other: &Self) -> f64 {
        to_f64(&(self - other).abs())
    }

    fn magnitude(&self) -> f64 {
        to_f64(&self.abs())
    }
}
