use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse::{format_rational, parse_rational};
use super::{exact_sqrt, pow};
use crate::error::{Error, Result};

/// An element `a + b*sqrt(q)` of `Q(sqrt q)` for a fixed integer `q > 1`.
///
/// When `q` is a perfect square the value is kept rational: `b` is folded
/// into `a` on construction, so `b` is always zero for such radicands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    radicand: BigInt,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, radicand: BigInt) -> Result<Self> {
        if radicand <= BigInt::one() {
            return Err(Error::Domain(format!("radicand must exceed 1, got {radicand}")));
        }
        Ok(Self::canonical(a, b, radicand))
    }

    fn canonical(a: BigRational, b: BigRational, radicand: BigInt) -> Self {
        match exact_sqrt(&radicand) {
            Some(r) if !b.is_zero() => QuadExt {
                a: a + b * BigRational::from_integer(r),
                b: BigRational::zero(),
                radicand,
            },
            _ => QuadExt { a, b, radicand },
        }
    }

    pub fn from_rational(a: BigRational, radicand: BigInt) -> Result<Self> {
        Self::new(a, BigRational::zero(), radicand)
    }

    pub fn zero(radicand: &BigInt) -> Result<Self> {
        Self::from_rational(BigRational::zero(), radicand.clone())
    }

    pub fn one(radicand: &BigInt) -> Result<Self> {
        Self::from_rational(BigRational::one(), radicand.clone())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.radicand == other.radicand {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "mismatched radicands {} and {}",
                self.radicand, other.radicand
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            radicand: self.radicand.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let q = BigRational::from_integer(self.radicand.clone());
        Ok(QuadExt {
            a: &self.a * &other.a + &self.b * &other.b * q,
            b: &self.a * &other.b + &other.a * &self.b,
            radicand: self.radicand.clone(),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadExt {
            a: &self.a * r,
            b: &self.b * r,
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    /// The Galois conjugate `a - b*sqrt(q)`.
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a^2 - q b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.radicand.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = self.norm();
        Ok(self.conj().scale(&n.recip()))
    }

    /// Parses `"a + b*sqrt(q)"`, `"a - b*sqrt(q)"`, `"b*sqrt(q)"` or a plain
    /// rational. The radicand written in the string must equal `radicand`.
    pub fn parse(s: &str, radicand: &BigInt) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = t.find("sqrt(") else {
            return Self::from_rational(parse_rational(&t)?, radicand.clone());
        };
        let inner = t[pos + 5..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated sqrt in {s:?}")))?;
        let q = super::parse_bigint(inner)?;
        if &q != radicand {
            return Err(Error::Domain(format!("expected sqrt({radicand}), found sqrt({q})")));
        }
        let head = &t[..pos];
        let head = head
            .strip_suffix('*')
            .ok_or_else(|| Error::Parse(format!("expected b*sqrt(q) in {s:?}")))?;
        // split at the last top-level sign that separates a from b
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
            None => (BigRational::zero(), parse_rational(head)?),
        };
        Self::new(a, b, q)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {} {}*sqrt({})",
            format_rational(&self.a),
            sign,
            format_rational(&self.b.abs()),
            self.radicand
        )
    }
}

/// Product in `Q(sqrt q)`; errors when the radicands differ.
pub fn quad_mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt> {
    x.checked_mul(y)
}

/// `q^(i*n/2)` as an element of `Q(sqrt q)`.
pub fn half_power(q: &BigInt, i: u32, n: u32) -> Result<QuadExt> {
    let e = u64::from(i) * u64::from(n);
    let whole = BigRational::from_integer(pow(q, e / 2));
    if e % 2 == 0 {
        QuadExt::from_rational(whole, q.clone())
    } else {
        QuadExt::new(BigRational::zero(), whole, q.clone())
    }
}
