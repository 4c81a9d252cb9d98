//! Exact scalars: arbitrary-precision integers and rationals, the quadratic
//! field `Q(sqrt q)`, and normalized `l`-adic valuations of rationals.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`. The rest of
//! the crate is written against the [`Scalar`] trait so that matrices and
//! polynomials work over either.

mod parse;
mod quad;
mod valuation;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use parse::{format_rational, parse_bigint, parse_rational};
pub use quad::{half_power, quad_mul, QuadExt};
pub use valuation::{is_prime, multiplicity_of, NormalizedValuation};

/// A commutative ring with exact (checked) division, the coefficient domain of
/// [`crate::poly::Poly`] and [`crate::matrixops::Matrix`].
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn from_bigint(n: &BigInt) -> Self;

    fn to_rational(&self) -> BigRational;

    /// Canonical string form used by the JSON interfaces.
    fn to_exact_string(&self) -> String;
}

impl Scalar for BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

impl Scalar for BigRational {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_exact_string(&self) -> String {
        format_rational(self)
    }
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Binomial coefficient over machine integers; the sizes involved (Betti
/// numbers) are small.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u64 / (j + 1) as u64;
    }
    acc
}

/// Returns `Some(r)` with `r >= 0` when `n = r^2`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Integer value of a rational, if it has denominator one.
pub fn as_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_div_integers() {
        assert_eq!(int(12).exact_div(&int(4)), Some(int(3)));
        assert_eq!(int(12).exact_div(&int(5)), None);
        assert_eq!(int(12).exact_div(&int(0)), None);
        assert_eq!(rat(1, 2).exact_div(&rat(1, 3)), Some(rat(3, 2)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&int(36)), Some(int(6)));
        assert_eq!(exact_sqrt(&int(6)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
