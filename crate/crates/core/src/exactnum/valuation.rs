use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Deterministic trial division; primes here are small.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `e` with `prime^e | n`, for nonzero `n`.
pub fn multiplicity_of(prime: &BigInt, n: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(prime);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// The `l`-adic valuation on `Q`, scaled so that `nu(q) = 1` whenever `l | q`.
///
/// When `l` does not divide `q` the normalizer is zero and values are plain
/// (unnormalized) `l`-adic valuations; such a valuation is only meaningful for
/// the slope-zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedValuation {
    prime: BigInt,
    q: BigInt,
    normalizer: u64,
}

impl NormalizedValuation {
    pub fn new(prime: BigInt, q: BigInt) -> Result<Self> {
        if !is_prime(&prime) {
            return Err(Error::Domain(format!("{prime} is not prime")));
        }
        if q <= BigInt::one() {
            return Err(Error::Domain(format!("q must exceed 1, got {q}")));
        }
        let normalizer = multiplicity_of(&prime, &q);
        Ok(Self { prime, q, normalizer })
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `v_l(q)`; zero when `l` does not divide `q`.
    pub fn normalizer(&self) -> u64 {
        self.normalizer
    }

    pub fn divides_q(&self) -> bool {
        self.normalizer > 0
    }

    pub fn valuate(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        let v = multiplicity_of(&self.prime, x.numer()) as i64
            - multiplicity_of(&self.prime, x.denom()) as i64;
        let v = BigRational::from_integer(BigInt::from(v));
        Ok(if self.normalizer > 0 {
            v / BigRational::from_integer(BigInt::from(self.normalizer))
        } else {
            v
        })
    }

    pub fn valuate_int(&self, x: &BigInt) -> Result<BigRational> {
        self.valuate(&BigRational::from_integer(x.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn valuation_examples() {
        let v2 = NormalizedValuation::new(int(2), int(6)).unwrap();
        let v3 = NormalizedValuation::new(int(3), int(6)).unwrap();
        assert_eq!(v2.valuate(&rat(6, 1)).unwrap(), rat(1, 1));
        assert_eq!(v3.valuate(&rat(36, 1)).unwrap(), rat(2, 1));
        assert_eq!(v3.valuate(&rat(24, 1)).unwrap(), rat(1, 1));
        assert!(v3.valuate(&rat(0, 1)).is_err());
    }

    #[test]
    fn normalization_and_tags() {
        let v = NormalizedValuation::new(int(2), int(8)).unwrap();
        assert_eq!(v.normalizer(), 3);
        assert_eq!(v.valuate(&rat(8, 1)).unwrap(), rat(1, 1));
        assert_eq!(v.valuate(&rat(1, 4)).unwrap(), rat(-2, 3));
        let u = NormalizedValuation::new(int(5), int(6)).unwrap();
        assert!(!u.divides_q());
        assert_eq!(u.valuate(&rat(50, 3)).unwrap(), rat(2, 1));
        assert!(NormalizedValuation::new(int(4), int(6)).is_err());
        assert!(NormalizedValuation::new(int(2), int(1)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn valuation_is_multiplicative(
            a in (-5000i64..5000).prop_filter("nonzero", |v| *v != 0),
            b in 1i64..5000,
            c in (-5000i64..5000).prop_filter("nonzero", |v| *v != 0),
            d in 1i64..5000,
            prime in prop::sample::select(vec![2i64, 3, 5, 7]),
            q in prop::sample::select(vec![2i64, 4, 6, 12, 45, 49, 10]),
        ) {
            let v = NormalizedValuation::new(int(prime), int(q)).unwrap();
            let x = rat(a, b);
            let y = rat(c, d);
            let lhs = v.valuate(&(&x * &y)).unwrap();
            let rhs = v.valuate(&x).unwrap() + v.valuate(&y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
