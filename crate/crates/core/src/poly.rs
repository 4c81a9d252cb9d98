//! Dense univariate polynomials over exact scalars, plus the reciprocal
//! transforms behind the functional equations of characteristic polynomials.
//!
//! Coefficients are stored lowest degree first. The external (JSON) form and
//! the accessors named `leading_first` use the opposite order, where `a_0` is
//! the leading coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{exact_sqrt, half_power, pow, QuadExt, Scalar};
use crate::matrixops::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<BigRational>;

impl<T: Scalar> Poly<T> {
    /// Builds from coefficients of `t^0, t^1, ...`.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from `a_0, ..., a_n` with `a_0` the leading coefficient.
    pub fn from_leading_first(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `t - root`.
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading_first(&self) -> Vec<T> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    /// `t^deg * P(1/t)`: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        Self::from_leading_first(self.coeffs.clone())
    }

    /// `P(c * t)`.
    pub fn substitute_scaled(&self, c: &T) -> Self {
        let mut power = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * &power);
            power = power * c;
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.clone() * &T::from_bigint(&BigInt::from(k)))
                .collect(),
        )
    }

    /// Division with remainder by a polynomial whose leading coefficient
    /// divides every intermediate leading term (always true for monic
    /// divisors). Returns `None` when some step is not exact.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        let dl = divisor.lead();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.exact_div(&dl)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(c.clone() * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Largest `m` with `factor^m | self`, together with the cofactor.
    pub fn exact_divide_out(&self, factor: &Self) -> Result<(Self, u32)> {
        if !factor.is_monic() || factor.degree() == 0 {
            return Err(Error::Precondition(
                "factor must be monic and nonconstant".into(),
            ));
        }
        let mut quotient = self.clone();
        let mut m = 0;
        while !quotient.is_zero() {
            match quotient.div_rem(factor) {
                Some((q, r)) if r.is_zero() => {
                    quotient = q;
                    m += 1;
                }
                _ => break,
            }
        }
        Ok((quotient, m))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        Poly::new(self.coeffs.iter().map(Scalar::to_rational).collect())
    }

    /// Coefficients leading first as exact strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.leading_first().iter().map(Scalar::to_exact_string).collect()
    }
}

impl RatPolynomial {
    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("field division");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Yun's square-free decomposition of a nonzero polynomial: returns
    /// `(f_k, k)` with `P = c * prod f_k^k`, each `f_k` monic, square-free and
    /// pairwise coprime. Constant factors are skipped.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPolynomial, u32)> {
        let p = self.make_monic();
        if p.degree() == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_rem(&a0).expect("field").0;
        let mut c = dp.div_rem(&a0).expect("field").0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut k = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).expect("field").0;
            c = d.div_rem(&a).expect("field").0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// The integer polynomial with these coefficients, if all are integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_exact_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}*t")?,
                _ if unit => write!(f, "t^{k}")?,
                _ => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(t*I - M)`, computed with Berkowitz's division-free recurrence so
/// integer matrices never leave the integers.
pub fn charpoly<T: Scalar>(m: &Matrix<T>) -> Result<Poly<T>> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // p holds the characteristic polynomial of the leading k x k block,
    // leading coefficient first.
    let mut p: Vec<T> = vec![T::one()];
    for k in 1..=n {
        let last = k - 1;
        let mut column = Vec::with_capacity(k + 1);
        column.push(T::one());
        column.push(-m.get(last, last).clone());
        let mut w: Vec<T> = (0..last).map(|r| m.get(r, last).clone()).collect();
        for _ in 0..last {
            let rw = (0..last).fold(T::zero(), |acc, j| acc + &(m.get(last, j).clone() * &w[j]));
            column.push(-rw);
            w = (0..last)
                .map(|r| (0..last).fold(T::zero(), |acc, j| acc + &(m.get(r, j).clone() * &w[j])))
                .collect();
        }
        let mut next = vec![T::zero(); k + 1];
        for (r, slot) in next.iter_mut().enumerate() {
            for s in 0..=r.min(k - 1) {
                *slot = slot.clone() + &(column[r - s].clone() * &p[s]);
            }
        }
        p = next;
    }
    Ok(Poly::from_leading_first(p))
}

/// Outcome of testing `t^n P(q^i/t) = (-1)^eps q^(i n/2) P(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquationResult {
    pub holds: bool,
    /// `Some(0 | 1)` exactly when `holds`.
    pub epsilon: Option<u8>,
    /// First coefficient index `k` (leading-first) at which the identity fails.
    pub failure_index: Option<usize>,
}

fn require_monic_nonsingular(p: &IntPolynomial) -> Result<()> {
    if !p.is_monic() {
        return Err(Error::Precondition(format!("{p} is not monic")));
    }
    if p.constant_term().is_zero() {
        return Err(Error::SingularAction(format!("{p} has a zero root")));
    }
    Ok(())
}

/// Checks the weight-`i` functional equation coefficientwise:
/// `a_(n-k) = s * a_k * q^(i(n/2 - k))` for `k <= n/2` with one sign `s`.
pub fn functional_equation_check(
    p: &IntPolynomial,
    q: &BigInt,
    i: u32,
) -> Result<FunctionalEquationResult> {
    require_monic_nonsingular(p)?;
    let n = p.degree();
    if i % 2 == 1 && n % 2 == 1 {
        return Err(Error::Validity(format!(
            "odd degree {n} in odd weight {i}"
        )));
    }
    let a = p.leading_first();
    // a_n = s * q^(i n/2); with i*n even this power is an integer.
    let top = pow(q, u64::from(i) * n as u64 / 2);
    let sign = if a[n] == top {
        BigInt::one()
    } else if a[n] == -top.clone() {
        -BigInt::one()
    } else {
        return Ok(FunctionalEquationResult {
            holds: false,
            epsilon: None,
            failure_index: Some(0),
        });
    };
    for k in 1..=n / 2 {
        // i(n/2 - k) = i(n - 2k)/2 is integral whenever i*n is even.
        let e = u64::from(i) * (n - 2 * k) as u64 / 2;
        if a[n - k] != &sign * &a[k] * pow(q, e) {
            return Ok(FunctionalEquationResult {
                holds: false,
                epsilon: None,
                failure_index: Some(k),
            });
        }
    }
    Ok(FunctionalEquationResult {
        holds: true,
        epsilon: Some(if sign.is_positive() { 0 } else { 1 }),
        failure_index: None,
    })
}

/// The monic polynomial whose roots are `q^d / lambda` for the roots `lambda`
/// of `p`: `t^n P(q^d/t) / P(0)`.
pub fn duality_partner(p: &IntPolynomial, q: &BigInt, d: u32) -> Result<IntPolynomial> {
    require_monic_nonsingular(p)?;
    let n = p.degree();
    let c0 = p.constant_term();
    // coefficient of t^k in t^n P(q^d/t) is c_(n-k) q^(d(n-k))
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let c = p.coeff(n - k) * pow(q, u64::from(d) * (n - k) as u64);
        let c = c.exact_div(&c0).ok_or_else(|| {
            Error::Inconsistent(format!(
                "{p} has no integral dual for q = {q}, d = {d}"
            ))
        })?;
        out.push(c);
    }
    Ok(Poly::new(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossDualityResult {
    pub holds: bool,
    /// The realized `(-1)^eps`, when the identity holds.
    pub sign: Option<i8>,
    /// Whether that sign agrees with the functional equation of `P_i`
    /// (`None` if that equation itself fails).
    pub matches_functional_sign: Option<bool>,
}

/// Verifies `t^b P_i(q^d/t) = (-1)^eps q^(i b/2) P_(2d-i)(t)` over `Q(sqrt q)`.
pub fn cross_duality_check(
    p_i: &IntPolynomial,
    p_dual: &IntPolynomial,
    q: &BigInt,
    d: u32,
    i: u32,
) -> Result<CrossDualityResult> {
    require_monic_nonsingular(p_i)?;
    require_monic_nonsingular(p_dual)?;
    let b = p_i.degree();
    if p_dual.degree() != b {
        return Err(Error::DualityViolation(format!(
            "b_{i} = {b} but b_{} = {}",
            2 * d as i64 - i as i64,
            p_dual.degree()
        )));
    }
    let h = half_power(q, i, b as u32)?;
    // coefficient of t^k on the left: c_(b-k) q^(d(b-k))
    let lhs: Vec<QuadExt> = (0..=b)
        .map(|k| {
            let c = p_i.coeff(b - k) * pow(q, u64::from(d) * (b - k) as u64);
            QuadExt::from_rational(BigRational::from_integer(c), q.clone())
        })
        .collect::<Result<_>>()?;
    let rhs: Vec<QuadExt> = (0..=b)
        .map(|k| h.scale(&BigRational::from_integer(p_dual.coeff(k))))
        .collect();
    let mut sign = None;
    for s in [1i8, -1] {
        let factor = BigRational::from_integer(BigInt::from(s));
        if lhs.iter().zip(&rhs).all(|(l, r)| *l == r.scale(&factor)) {
            sign = Some(s);
            break;
        }
    }
    let fe = if i % 2 == 1 && b % 2 == 1 {
        None
    } else {
        functional_equation_check(p_i, q, i)?.epsilon
    };
    Ok(CrossDualityResult {
        holds: sign.is_some(),
        sign,
        matches_functional_sign: match (sign, fe) {
            (Some(s), Some(e)) => Some((s == 1) == (e == 0)),
            _ => None,
        },
    })
}

/// Power sums `p_1..p_N` of the roots via Newton's identities.
pub fn power_sums(p: &IntPolynomial, count: usize) -> Result<Vec<BigInt>> {
    if !p.is_monic() {
        return Err(Error::Precondition(format!("{p} is not monic")));
    }
    let n = p.degree();
    // c_k: coefficient of t^(n-k)
    let c: Vec<BigInt> = (0..=n).map(|k| p.coeff(n - k)).collect();
    let mut sums: Vec<BigInt> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut acc = BigInt::zero();
        for j in 1..m.min(n + 1) {
            acc += &c[j] * &sums[m - j - 1];
        }
        if m <= n {
            acc += BigInt::from(m) * &c[m];
        }
        sums.push(-acc);
    }
    Ok(sums)
}

/// Multiplicities `(mu_+, mu_-)` of the real candidates `+-q^(i/2)` as roots
/// of `p`.
///
/// For odd `i` with non-square `q` the two are Galois conjugate and both
/// equal the multiplicity of `t^2 - q^i`; otherwise `q^(i/2)` is an integer
/// and the linear factors are divided out separately.
pub fn real_weil_multiplicities(p: &IntPolynomial, q: &BigInt, i: u32) -> Result<(u32, u32)> {
    if p.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    if p.degree() == 0 {
        return Ok((0, 0));
    }
    let root = if i.is_multiple_of(2) {
        Some(pow(q, u64::from(i / 2)))
    } else {
        exact_sqrt(q).map(|r| pow(&r, u64::from(i)))
    };
    match root {
        Some(r) => {
            let (_, plus) = p.exact_divide_out(&Poly::linear(r.clone()))?;
            let (_, minus) = p.exact_divide_out(&Poly::linear(-r))?;
            Ok((plus, minus))
        }
        None => {
            let pair = Poly::new(vec![-pow(q, u64::from(i)), BigInt::zero(), BigInt::one()]);
            let (_, m) = p.exact_divide_out(&pair)?;
            Ok((m, m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn ip(lf: &[i64]) -> IntPolynomial {
        Poly::from_leading_first(lf.iter().map(|&c| int(c)).collect())
    }

    fn im(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&Matrix::<BigInt>::identity(2)).unwrap(), ip(&[1, -2, 1]));
        assert_eq!(charpoly(&im(&[&[1, -5], &[1, 1]])).unwrap(), ip(&[1, -2, 6]));
        assert_eq!(charpoly(&im(&[&[2, 0], &[0, 3]])).unwrap(), ip(&[1, -5, 6]));
        let rect = Matrix::new(1, 2, vec![int(1), int(2)]).unwrap();
        assert!(matches!(charpoly(&rect), Err(Error::Shape(_))));
    }

    #[test]
    fn functional_equation_examples() {
        let ex = ip(&[1, -4, 16, -24, 36]);
        let r = functional_equation_check(&ex, &int(6), 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.epsilon, Some(0));
        // t - q^j in weight 2j
        for (q, j) in [(6, 1), (4, 2), (7, 3)] {
            let p = Poly::linear(pow(&int(q), j));
            let r = functional_equation_check(&p, &int(q), 2 * j as u32).unwrap();
            assert_eq!((r.holds, r.epsilon), (true, Some(1)));
        }
        let r = functional_equation_check(&ip(&[1, -5, 6]), &int(6), 1).unwrap();
        assert_eq!((r.holds, r.epsilon), (true, Some(0)));
    }

    #[test]
    fn functional_equation_errors_and_failures() {
        assert!(matches!(
            functional_equation_check(&ip(&[1, 0, 0, -8]), &int(2), 1),
            Err(Error::Validity(_))
        ));
        assert!(matches!(
            functional_equation_check(&ip(&[1, -2, 0]), &int(2), 2),
            Err(Error::SingularAction(_))
        ));
        let corrupted = ip(&[1, -4, 16, -24, 35]);
        let r = functional_equation_check(&corrupted, &int(6), 1).unwrap();
        assert_eq!((r.holds, r.failure_index), (false, Some(0)));
        let inner = ip(&[1, -4, 17, -24, 36]);
        let r = functional_equation_check(&inner, &int(6), 1).unwrap();
        assert!(r.holds, "middle coefficient is unconstrained");
        let bad = ip(&[1, -4, 16, -25, 36]);
        let r = functional_equation_check(&bad, &int(6), 1).unwrap();
        assert_eq!((r.holds, r.epsilon, r.failure_index), (false, None, Some(1)));
    }

    #[test]
    fn duality_partner_examples() {
        assert_eq!(duality_partner(&ip(&[1, -1]), &int(6), 2).unwrap(), ip(&[1, -36]));
        assert_eq!(duality_partner(&ip(&[1, -2, 6]), &int(6), 1).unwrap(), ip(&[1, -2, 6]));
        // (t-2)(t-18): the roots swap under lambda -> 36/lambda
        let p = ip(&[1, -20, 36]);
        assert_eq!(duality_partner(&p, &int(6), 2).unwrap(), p);
        assert!(matches!(
            duality_partner(&ip(&[1, -5]), &int(6), 1),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn cross_duality_examples() {
        for q in [2, 6, 9] {
            let r = cross_duality_check(&ip(&[1, -1]), &ip(&[1, -q]), &int(q), 1, 0).unwrap();
            assert_eq!((r.holds, r.sign, r.matches_functional_sign), (true, Some(-1), Some(true)));
        }
        let e = ip(&[1, -2, 6]);
        let r = cross_duality_check(&e, &e, &int(6), 1, 1).unwrap();
        assert_eq!((r.holds, r.sign), (true, Some(1)));
        let p1 = ip(&[1, -4, 16, -24, 36]);
        let p3 = duality_partner(&p1, &int(6), 2).unwrap();
        let r = cross_duality_check(&p1, &p3, &int(6), 2, 1).unwrap();
        assert_eq!((r.holds, r.sign, r.matches_functional_sign), (true, Some(1), Some(true)));
        assert!(matches!(
            cross_duality_check(&p1, &e, &int(6), 2, 1),
            Err(Error::DualityViolation(_))
        ));
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&ip(&[1, -5, 6]), 2).unwrap(), vec![int(5), int(13)]);
        assert_eq!(power_sums(&ip(&[1, -2, 6]), 2).unwrap(), vec![int(2), int(-8)]);
        let m = 7;
        let p = Poly::linear(int(m)).pow(2);
        let sums = power_sums(&p, 6).unwrap();
        for (n, s) in sums.iter().enumerate() {
            assert_eq!(*s, int(2) * pow(&int(m), n as u64 + 1));
        }
    }

    #[test]
    fn divide_out_examples() {
        let f = ip(&[1, 0, -6]);
        let p = f.pow(2).mul(&ip(&[1, -1]));
        assert_eq!(p.exact_divide_out(&f).unwrap().1, 2);
        assert_eq!(ip(&[1, -4, 16, -24, 36]).exact_divide_out(&f).unwrap().1, 0);
        let lin = Poly::linear(int(6));
        let (quot, m) = lin.pow(3).exact_divide_out(&lin).unwrap();
        assert_eq!((quot, m), (Poly::one(), 3));
        assert!(p.exact_divide_out(&ip(&[2, 1])).is_err());
    }

    #[test]
    fn real_multiplicities() {
        let p = ip(&[1, 0, -6]).pow(2).mul(&ip(&[1, -2, 6]));
        assert_eq!(real_weil_multiplicities(&p, &int(6), 1).unwrap(), (2, 2));
        let p = Poly::linear(int(2)).pow(2).mul(&Poly::linear(int(-2)));
        assert_eq!(real_weil_multiplicities(&p, &int(4), 1).unwrap(), (2, 1));
        let p = Poly::linear(int(-36));
        assert_eq!(real_weil_multiplicities(&p, &int(6), 4).unwrap(), (0, 1));
    }

    #[test]
    fn squarefree_parts() {
        let p = ip(&[1, -2]).pow(3).mul(&ip(&[1, 0, 5])).mul(&ip(&[1, 1]).pow(2)).to_rational();
        let parts = p.squarefree_decomposition();
        let degrees: Vec<(usize, u32)> = parts.iter().map(|(f, k)| (f.degree(), *k)).collect();
        assert_eq!(degrees, vec![(2, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn display() {
        assert_eq!(ip(&[1, -4, 16, -24, 36]).to_string(), "t^4 - 4*t^3 + 16*t^2 - 24*t + 36");
        assert_eq!(ip(&[-1, 0, 1]).to_string(), "-t^2 + 1");
    }
}
