//! Lefschetz numbers of iterates and the dynamical zeta function
//! `Z_f(t) = exp(sum N_n t^n / n)`, held as the rational function
//! `prod_{i odd} det(1 - f^* t | H^i) / prod_{i even} det(1 - f^* t | H^i)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{half_power, pow, QuadExt};
use crate::poly::{functional_equation_check, power_sums, real_weil_multiplicities, IntPolynomial, Poly};
use crate::varieties::VarietyModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
    pub chi: i64,
}

impl ZetaFunction {
    pub fn of(model: &VarietyModel) -> Self {
        let mut numerator = Poly::one();
        let mut denominator = Poly::one();
        for a in model.actions() {
            let r = a.charpoly.reversed();
            if a.degree % 2 == 1 {
                numerator = numerator.mul(&r);
            } else {
                denominator = denominator.mul(&r);
            }
        }
        ZetaFunction {
            numerator,
            denominator,
            chi: model.euler_characteristic(),
        }
    }

    /// Power-series coefficients `z_0..z_order` of `Z_f`.
    pub fn series(&self, order: usize) -> Vec<BigInt> {
        let inv = inverse_series(&self.denominator, order);
        (0..=order)
            .map(|k| {
                (0..=k)
                    .map(|j| self.numerator.coeff(j) * &inv[k - j])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }
}

/// Truncated `1 / f` for `f(0) = 1`.
fn inverse_series(f: &IntPolynomial, order: usize) -> Vec<BigInt> {
    debug_assert!(f.constant_term().is_one());
    let mut inv = vec![BigInt::zero(); order + 1];
    inv[0] = BigInt::one();
    for k in 1..=order {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(f.degree()) {
            acc += f.coeff(j) * &inv[k - j];
        }
        inv[k] = -acc;
    }
    inv
}

/// `N_n = sum_i (-1)^i tr(f^{*n} | H^i)`.
///
/// Uses power sums of each `P_i`; where a matrix is stored, `tr(M^n)` is
/// computed as well and the two must agree.
pub fn lefschetz_number(model: &VarietyModel, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("Lefschetz numbers start at n = 1".into()));
    }
    let mut total = BigInt::zero();
    for a in model.actions() {
        if a.betti == 0 {
            continue;
        }
        let p = power_sums(&a.charpoly, n)?.pop().expect("n >= 1");
        if let Some(m) = &a.matrix {
            let tr = m.pow(n as u32)?.trace();
            if tr != p {
                return Err(Error::Inconsistent(format!(
                    "degree {}: tr(M^{n}) = {tr} but p_{n}(P) = {p}",
                    a.degree
                )));
            }
        }
        if a.degree % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    Ok(total)
}

/// Checks `t Z'/Z = sum_{n=1}^{order} N_n t^n` on the power-series
/// expansion of the rational function.
pub fn zeta_series_consistency(model: &VarietyModel, order: usize) -> Result<bool> {
    if order == 0 {
        return Err(Error::Domain("series order must be at least 1".into()));
    }
    let z = ZetaFunction::of(model).series(order);
    // t Z' = L Z with Z(0) = 1 determines L term by term
    let mut log_derivative = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        let mut rest = BigInt::from(n) * &z[n];
        for j in 1..n {
            rest -= &log_derivative[j] * &z[n - j];
        }
        log_derivative[n] = rest;
    }
    for (n, expected) in log_derivative.iter().enumerate().skip(1) {
        if lefschetz_number(model, n)? != *expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFunctionalEquation {
    pub holds: bool,
    /// Realized sign `s` in `Z(q^-d / t) = s q^(d chi/2) t^chi Z(t)`.
    pub sign: Option<i8>,
    /// `(-1)^(chi + mu)`.
    pub expected_sign: i8,
    pub chi: i64,
    /// Multiplicity of `-q^(d/2)` in `P_d`.
    pub mu: u32,
}

impl ZetaFunctionalEquation {
    pub fn sign_matches(&self) -> bool {
        self.sign == Some(self.expected_sign)
    }
}

/// `t^deg f(q^-d / t) q^(d deg f)`, an integer polynomial.
fn dual_reversal(f: &IntPolynomial, q: &BigInt, d: u32) -> IntPolynomial {
    let n = f.degree();
    let mut out = vec![BigInt::zero(); n + 1];
    for (k, c) in f.coeffs().iter().enumerate() {
        out[n - k] = c * pow(q, u64::from(d) * (n - k) as u64);
    }
    Poly::new(out)
}

fn to_quad(p: &IntPolynomial, factor: &QuadExt) -> Vec<QuadExt> {
    p.coeffs()
        .iter()
        .map(|c| factor.scale(&BigRational::from_integer(c.clone())))
        .collect()
}

/// Verifies `Z(q^-d t^-1) = s q^(d chi/2) t^chi Z(t)` exactly.
///
/// Writing `Z = N / D`, the identity is equivalent to
/// `q^(d chi/2) N~ D = s N D~` with `F~(t) = t^deg F q^(d deg F) F(q^-d/t)`,
/// compared coefficientwise in `Q(sqrt q)`.
pub fn zeta_functional_equation(model: &VarietyModel) -> Result<ZetaFunctionalEquation> {
    let q = model.q();
    for a in model.actions() {
        let ok = match functional_equation_check(&a.charpoly, q, a.degree) {
            Ok(r) => r.holds,
            Err(Error::Validity(_)) => false,
            Err(e) => return Err(e),
        };
        if !ok {
            return Err(Error::NotApplicable(format!(
                "P_{} = {} fails its functional equation",
                a.degree, a.charpoly
            )));
        }
    }
    let d = model.dimension();
    let zeta = ZetaFunction::of(model);
    let chi = zeta.chi;
    let (_, mu) = real_weil_multiplicities(&model.action(d).expect("middle degree").charpoly, q, d)?;
    let expected_sign = if (chi + i64::from(mu)) % 2 == 0 { 1 } else { -1 };

    let lhs = dual_reversal(&zeta.numerator, q, d).mul(&zeta.denominator);
    let rhs = zeta.numerator.mul(&dual_reversal(&zeta.denominator, q, d));
    let h = half_power(q, d, chi.unsigned_abs() as u32)?;
    let one = QuadExt::one(q)?;
    // move q^(d|chi|/2) to whichever side keeps exponents nonnegative
    let (lf, rf) = if chi.is_negative() { (one, h) } else { (h, one) };
    let (l, r) = (to_quad(&lhs, &lf), to_quad(&rhs, &rf));
    let sign = if l.len() != r.len() {
        None
    } else {
        [1i8, -1].into_iter().find(|&s| {
            let s = BigRational::from_integer(BigInt::from(s));
            l.iter().zip(&r).all(|(x, y)| *x == y.scale(&s))
        })
    };
    Ok(ZetaFunctionalEquation {
        holds: sign.is_some(),
        sign,
        expected_sign,
        chi,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::matrixops::{int_matrix, Matrix};
    use crate::poly::duality_partner;
    use crate::varieties::{abelian_en, abelian_from_h1, generic_model, grassmannian, DegreeData, GrassmannianVariant};

    fn elliptic(m: i64) -> VarietyModel {
        abelian_from_h1(1, &Matrix::identity(2).scale(&int(m)), &int(m * m)).unwrap()
    }

    fn example() -> VarietyModel {
        abelian_en(&int_matrix(&[&[1, -5], &[1, 1]]), &int(6)).unwrap()
    }

    fn p1(q: i64) -> VarietyModel {
        grassmannian(1, 2, &int(q), GrassmannianVariant::Scalar).unwrap()
    }

    #[test]
    fn lefschetz_examples() {
        for m in 2..6 {
            for n in 1..5u32 {
                let expected: BigInt = (int(m).pow(n) - 1u32).pow(2);
                assert_eq!(lefschetz_number(&elliptic(m), n as usize).unwrap(), expected);
            }
        }
        assert_eq!(lefschetz_number(&p1(7), 1).unwrap(), int(8));
        assert!(lefschetz_number(&p1(7), 0).is_err());
    }

    #[test]
    fn lefschetz_matches_trace_sum() {
        let model = example();
        for n in 1..=5u32 {
            let direct: BigInt = model
                .actions()
                .iter()
                .map(|a| {
                    let tr = a.matrix.as_ref().unwrap().pow(n).unwrap().trace();
                    if a.degree % 2 == 0 { tr } else { -tr }
                })
                .sum();
            assert_eq!(lefschetz_number(&model, n as usize).unwrap(), direct);
        }
    }

    #[test]
    fn series_consistency() {
        assert!(zeta_series_consistency(&elliptic(3), 4).unwrap());
        assert!(zeta_series_consistency(&p1(5), 4).unwrap());
        assert!(zeta_series_consistency(&example(), 3).unwrap());
        let g = grassmannian(2, 4, &int(4), GrassmannianVariant::Involution).unwrap();
        assert!(zeta_series_consistency(&g, 6).unwrap());
    }

    #[test]
    fn zeta_shape() {
        let z = ZetaFunction::of(&p1(5));
        assert_eq!(z.numerator, Poly::one());
        assert_eq!(z.denominator, Poly::new(vec![int(1), int(-6), int(5)]));
        for model in [elliptic(2), example(), p1(3)] {
            let z = ZetaFunction::of(&model);
            assert_eq!(z.denominator.degree() as i64 - z.numerator.degree() as i64, z.chi);
            assert_eq!(z.series(0), vec![int(1)]);
        }
    }

    #[test]
    fn functional_equation_examples() {
        let r = zeta_functional_equation(&elliptic(2)).unwrap();
        assert!(r.holds);
        assert_eq!((r.sign, r.chi, r.mu), (Some(1), 0, 0));
        let r = zeta_functional_equation(&example()).unwrap();
        assert!(r.holds && r.sign_matches());
        assert_eq!(r.chi, 0);
        for variant in [GrassmannianVariant::Scalar, GrassmannianVariant::Involution] {
            let r = zeta_functional_equation(&grassmannian(2, 4, &int(6), variant).unwrap()).unwrap();
            assert!(r.holds && r.sign_matches(), "{variant:?}");
            assert_eq!(r.chi, 6);
        }
        let r = zeta_functional_equation(&p1(5)).unwrap();
        assert!(r.holds && r.sign_matches());
    }

    #[test]
    fn odd_degree_in_odd_weight_is_not_applicable() {
        let lin = |r: i64| Poly::linear(int(r));
        let data = [lin(1), lin(-4), lin(4)]
            .into_iter()
            .map(|p| DegreeData { charpoly: Some(p), matrix: None })
            .collect::<Vec<_>>();
        let model = generic_model(1, &int(4), data, None, false).unwrap();
        assert!(matches!(zeta_functional_equation(&model), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn projective_three_space() {
        let model = grassmannian(1, 4, &int(3), GrassmannianVariant::Scalar).unwrap();
        let r = zeta_functional_equation(&model).unwrap();
        assert!(r.holds && r.sign_matches());
        assert_eq!(r.chi, 4);
    }

    #[test]
    fn not_applicable_on_corrupted_data() {
        let data = [
            Poly::linear(int(1)),
            Poly::from_leading_first(vec![int(1), int(-2), int(35)]),
            Poly::linear(int(6)),
        ]
        .into_iter()
        .map(|p| DegreeData { charpoly: Some(p), matrix: None })
        .collect();
        let model = generic_model(1, &int(6), data, None, false).unwrap();
        assert!(matches!(zeta_functional_equation(&model), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn invariant_under_model_duality() {
        for model in [elliptic(3), example(), grassmannian(2, 4, &int(4), GrassmannianVariant::Involution).unwrap()] {
            let d = model.dimension();
            let top = 2 * d;
            let data = (0..=top)
                .map(|i| {
                    let partner = &model.action(top - i).unwrap().charpoly;
                    let p = if partner.degree() == 0 {
                        Poly::one()
                    } else {
                        duality_partner(partner, model.q(), d).unwrap()
                    };
                    DegreeData { charpoly: Some(p), matrix: None }
                })
                .collect();
            let dual = generic_model(d, model.q(), data, None, false).unwrap();
            assert_eq!(ZetaFunction::of(&dual), ZetaFunction::of(&model));
        }
    }
}
