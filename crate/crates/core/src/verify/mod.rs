//! Runs every per-degree and per-prime check on a model and collects the
//! outcomes into a deterministic report.
//!
//! Check ids: `functional_equation`, `cross_duality`, `jordan_symmetry`,
//! `weil_weight`, `epsilon_congruence`, `even_multiplicity` (per degree);
//! `slope_zero`, `np_symmetry`, `np_ge_hp` (per degree and prime);
//! `zeta_functional_equation` (once). Every id appears for every degree (and
//! prime), with `not_applicable` filling the gaps. `np_ge_hp` results are
//! advisory: a `fail` there is recorded but does not fail the report.

mod weil;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, NormalizedValuation};
use crate::matrixops::jordan_symmetry_check;
use crate::polygons::{
    hodge_polygon, newton_polygon, np_ge_hp, slope_zero_check, symmetry_check, NpHpComparison, Polygon,
    PolygonJson,
};
use crate::poly::{cross_duality_check, functional_equation_check, real_weil_multiplicities, IntPolynomial};
use crate::varieties::{ModelKind, VarietyModel};
use crate::zeta::{zeta_functional_equation, ZetaFunction};

pub use weil::{weil_weight_check, WeilWeightCheck};

/// Default working precision (decimal digits) for [`weil_weight_check`].
pub const DEFAULT_PRECISION: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    FunctionalEquation,
    CrossDuality,
    JordanSymmetry,
    WeilWeight,
    EpsilonCongruence,
    EvenMultiplicity,
    SlopeZero,
    NpSymmetry,
    NpGeHp,
    ZetaFunctionalEquation,
}

impl CheckId {
    pub const PER_DEGREE: [CheckId; 6] = [
        CheckId::FunctionalEquation,
        CheckId::CrossDuality,
        CheckId::JordanSymmetry,
        CheckId::WeilWeight,
        CheckId::EpsilonCongruence,
        CheckId::EvenMultiplicity,
    ];
    pub const PER_PRIME: [CheckId; 3] = [CheckId::SlopeZero, CheckId::NpSymmetry, CheckId::NpGeHp];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::FunctionalEquation => "functional_equation",
            CheckId::CrossDuality => "cross_duality",
            CheckId::JordanSymmetry => "jordan_symmetry",
            CheckId::WeilWeight => "weil_weight",
            CheckId::EpsilonCongruence => "epsilon_congruence",
            CheckId::EvenMultiplicity => "even_multiplicity",
            CheckId::SlopeZero => "slope_zero",
            CheckId::NpSymmetry => "np_symmetry",
            CheckId::NpGeHp => "np_ge_hp",
            CheckId::ZetaFunctionalEquation => "zeta_functional_equation",
        }
    }

    /// Advisory checks never count as failures of the report.
    pub fn is_advisory(self) -> bool {
        self == CheckId::NpGeHp
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<String>,
    pub status: Status,
    /// Values backing the verdict (signs, failure indices, multiplicities,
    /// reasons for not-applicable).
    pub witness: Map<String, Value>,
}

impl CheckResult {
    fn new(check: CheckId, degree: Option<u32>, prime: Option<&BigInt>, status: Status, witness: Value) -> Self {
        let witness = match witness {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        CheckResult {
            check,
            degree,
            prime: prime.map(BigInt::to_string),
            status,
            witness,
        }
    }

    fn not_applicable(check: CheckId, degree: Option<u32>, prime: Option<&BigInt>, reason: &str) -> Self {
        Self::new(check, degree, prime, Status::NotApplicable, json!({ "reason": reason }))
    }

    fn verdict(check: CheckId, degree: Option<u32>, prime: Option<&BigInt>, ok: bool, witness: Value) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self::new(check, degree, prime, status, witness)
    }

    /// A non-advisory failure.
    pub fn is_failure(&self) -> bool {
        self.status == Status::Fail && !self.check.is_advisory()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub dimension: u32,
    pub q: String,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub polarization_witness: Option<Vec<Vec<String>>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRow {
    pub prime: String,
    pub newton: Option<PolygonJson>,
    pub hodge: Option<PolygonJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: u32,
    pub betti: usize,
    /// Leading-first coefficients of `P_i`.
    pub charpoly: Vec<String>,
    pub epsilon: Option<u8>,
    pub mu_plus: Option<u32>,
    pub mu_minus: Option<u32>,
    pub polygons: Vec<PolygonRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaSummary {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub chi: i64,
    pub sign: Option<i8>,
    pub expected_sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: ModelSummary,
    pub primes: Vec<String>,
    pub precision: u32,
    pub degrees: Vec<DegreeRow>,
    pub checks: Vec<CheckResult>,
    pub zeta: ZetaSummary,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn find(&self, check: CheckId, degree: Option<u32>, prime: Option<&BigInt>) -> Option<&CheckResult> {
        let prime = prime.map(BigInt::to_string);
        self.checks
            .iter()
            .find(|c| c.check == check && c.degree == degree && c.prime == prime)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `epsilon_i == b_i + mu_{-q^{i/2}} (mod 2)`, and `epsilon_i = 0` for odd `i`.
pub fn epsilon_congruence_check(p: &IntPolynomial, q: &BigInt, i: u32) -> Result<bool> {
    let fe = functional_equation_check(p, q, i)?;
    let Some(epsilon) = fe.epsilon else {
        return Err(Error::Precondition(format!("{p} fails its functional equation")));
    };
    let (_, mu_minus) = real_weil_multiplicities(p, q, i)?;
    let congruent = (u32::from(epsilon) + p.degree() as u32 + mu_minus).is_multiple_of(2);
    Ok(congruent && (i.is_multiple_of(2) || epsilon == 0))
}

struct DegreeOutcome {
    row: DegreeRow,
    checks: Vec<CheckResult>,
}

fn error_witness(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn check_degree(model: &VarietyModel, i: u32, primes: &[BigInt], precision: u32) -> DegreeOutcome {
    let q = model.q();
    let d = model.dimension();
    let action = model.action(i).expect("degree in range");
    let p = &action.charpoly;
    let deg = Some(i);
    let empty = action.betti == 0;
    let mut checks = Vec::with_capacity(6 + 3 * primes.len());

    let fe = if empty { None } else { Some(functional_equation_check(p, q, i)) };
    let epsilon = fe.as_ref().and_then(|r| r.as_ref().ok()).and_then(|r| r.epsilon);
    checks.push(match &fe {
        None => CheckResult::not_applicable(CheckId::FunctionalEquation, deg, None, "b_i = 0"),
        Some(Ok(r)) => CheckResult::verdict(
            CheckId::FunctionalEquation,
            deg,
            None,
            r.holds,
            json!({ "epsilon": r.epsilon, "failure_index": r.failure_index }),
        ),
        Some(Err(e)) => CheckResult::verdict(CheckId::FunctionalEquation, deg, None, false, error_witness(e)),
    });

    let partner = &model.action(2 * d - i).expect("dual degree").charpoly;
    checks.push(if empty && partner.degree() == 0 {
        CheckResult::not_applicable(CheckId::CrossDuality, deg, None, "b_i = 0")
    } else {
        match cross_duality_check(p, partner, q, d, i) {
            Ok(r) => CheckResult::verdict(
                CheckId::CrossDuality,
                deg,
                None,
                r.holds,
                json!({ "dual_degree": 2 * d - i, "sign": r.sign, "matches_functional_sign": r.matches_functional_sign }),
            ),
            Err(e) => CheckResult::verdict(CheckId::CrossDuality, deg, None, false, error_witness(&e)),
        }
    });

    checks.push(match (&action.matrix, empty) {
        (_, true) => CheckResult::not_applicable(CheckId::JordanSymmetry, deg, None, "b_i = 0"),
        (None, _) => CheckResult::not_applicable(CheckId::JordanSymmetry, deg, None, "no matrix supplied"),
        (Some(m), _) => match jordan_symmetry_check(m, q, i) {
            Ok(ok) => CheckResult::verdict(CheckId::JordanSymmetry, deg, None, ok, Value::Null),
            Err(e) => CheckResult::verdict(CheckId::JordanSymmetry, deg, None, false, error_witness(&e)),
        },
    });

    checks.push(if empty {
        CheckResult::not_applicable(CheckId::WeilWeight, deg, None, "b_i = 0")
    } else {
        match weil_weight_check(p, q, i, precision) {
            Ok(r) => {
                let witness = serde_json::to_value(&r).expect("serializable");
                CheckResult::verdict(CheckId::WeilWeight, deg, None, r.passed, witness)
            }
            Err(e) => CheckResult::verdict(CheckId::WeilWeight, deg, None, false, error_witness(&e)),
        }
    });

    let mu = if empty { None } else { real_weil_multiplicities(p, q, i).ok() };
    checks.push(match (empty, epsilon) {
        (true, _) => CheckResult::not_applicable(CheckId::EpsilonCongruence, deg, None, "b_i = 0"),
        (false, None) => {
            CheckResult::not_applicable(CheckId::EpsilonCongruence, deg, None, "functional equation fails")
        }
        (false, Some(eps)) => match epsilon_congruence_check(p, q, i) {
            Ok(ok) => CheckResult::verdict(
                CheckId::EpsilonCongruence,
                deg,
                None,
                ok,
                json!({ "epsilon": eps, "betti": action.betti, "mu_minus": mu.map(|m| m.1) }),
            ),
            Err(e) => CheckResult::verdict(CheckId::EpsilonCongruence, deg, None, false, error_witness(&e)),
        },
    });

    checks.push(if i.is_multiple_of(2) {
        CheckResult::not_applicable(CheckId::EvenMultiplicity, deg, None, "even degree")
    } else if empty {
        CheckResult::not_applicable(CheckId::EvenMultiplicity, deg, None, "b_i = 0")
    } else {
        match mu {
            Some((plus, minus)) => CheckResult::verdict(
                CheckId::EvenMultiplicity,
                deg,
                None,
                plus % 2 == 0 && minus % 2 == 0,
                json!({ "mu_plus": plus, "mu_minus": minus }),
            ),
            None => CheckResult::verdict(
                CheckId::EvenMultiplicity,
                deg,
                None,
                false,
                json!({ "error": "multiplicities unavailable" }),
            ),
        }
    });

    let mut polygons = Vec::with_capacity(primes.len());
    for prime in primes {
        let (prime_checks, row) = check_prime(model, i, prime);
        checks.extend(prime_checks);
        polygons.push(row);
    }

    DegreeOutcome {
        row: DegreeRow {
            degree: i,
            betti: action.betti,
            charpoly: p.to_strings(),
            epsilon,
            mu_plus: mu.map(|m| m.0),
            mu_minus: mu.map(|m| m.1),
            polygons,
        },
        checks,
    }
}

fn check_prime(model: &VarietyModel, i: u32, prime: &BigInt) -> (Vec<CheckResult>, PolygonRow) {
    let deg = Some(i);
    let ell = Some(prime);
    let action = model.action(i).expect("degree in range");
    let v = NormalizedValuation::new(prime.clone(), model.q().clone()).expect("validated prime");
    let divides = v.divides_q();
    let hodge = model.hodge(i).and_then(|h| hodge_polygon(i, h).ok());
    let mut row = PolygonRow {
        prime: prime.to_string(),
        newton: None,
        hodge: hodge.as_ref().map(Polygon::to_json),
    };
    if action.betti == 0 {
        let checks = CheckId::PER_PRIME
            .iter()
            .map(|&c| CheckResult::not_applicable(c, deg, ell, "b_i = 0"))
            .collect();
        return (checks, row);
    }
    let np = match newton_polygon(&action.charpoly, &v) {
        Ok(np) => np,
        Err(e) => {
            let checks = CheckId::PER_PRIME
                .iter()
                .map(|&c| {
                    if c.is_advisory() {
                        CheckResult::not_applicable(c, deg, ell, &e.to_string())
                    } else {
                        CheckResult::verdict(c, deg, ell, false, error_witness(&e))
                    }
                })
                .collect();
            return (checks, row);
        }
    };
    let np_json = np.to_json();
    row.newton = Some(np_json.clone());
    let vertices = serde_json::to_value(&np_json).expect("serializable");

    let mut checks = Vec::with_capacity(3);
    checks.push(if divides {
        CheckResult::not_applicable(CheckId::SlopeZero, deg, ell, "prime divides q")
    } else {
        CheckResult::verdict(CheckId::SlopeZero, deg, ell, slope_zero_check(&np), vertices.clone())
    });
    if !divides {
        checks.push(CheckResult::not_applicable(CheckId::NpSymmetry, deg, ell, "prime does not divide q"));
        checks.push(CheckResult::not_applicable(CheckId::NpGeHp, deg, ell, "prime does not divide q"));
        return (checks, row);
    }
    checks.push(CheckResult::verdict(CheckId::NpSymmetry, deg, ell, symmetry_check(&np, i), vertices));
    checks.push(match &hodge {
        None => CheckResult::not_applicable(CheckId::NpGeHp, deg, ell, "no Hodge numbers"),
        Some(hp) => {
            let cmp = np_ge_hp(&np, hp);
            let witness = serde_json::to_value(&cmp).expect("serializable");
            let status = match cmp {
                NpHpComparison::Holds { .. } => Status::Pass,
                NpHpComparison::FailsAt { .. } => Status::Fail,
                NpHpComparison::Incomparable => Status::Incomparable,
            };
            CheckResult::new(CheckId::NpGeHp, deg, ell, status, witness)
        }
    });
    (checks, row)
}

fn zeta_check(model: &VarietyModel) -> (CheckResult, ZetaSummary) {
    let z = ZetaFunction::of(model);
    let mut summary = ZetaSummary {
        numerator: z.numerator.to_strings(),
        denominator: z.denominator.to_strings(),
        chi: z.chi,
        sign: None,
        expected_sign: None,
    };
    let id = CheckId::ZetaFunctionalEquation;
    let result = match zeta_functional_equation(model) {
        Ok(r) => {
            summary.sign = r.sign;
            summary.expected_sign = Some(r.expected_sign);
            let witness = serde_json::to_value(&r).expect("serializable");
            CheckResult::verdict(id, None, None, r.holds && r.sign_matches(), witness)
        }
        Err(Error::NotApplicable(reason)) => CheckResult::not_applicable(id, None, None, &reason),
        Err(e) => CheckResult::verdict(id, None, None, false, error_witness(&e)),
    };
    (result, summary)
}

/// Runs every check on `model` for each prime in `primes`.
///
/// Degrees are processed in parallel and reassembled in order, so identical
/// inputs give identical reports. Duplicate primes are dropped; order is
/// otherwise preserved.
pub fn full_report(model: &VarietyModel, primes: &[BigInt], precision: u32) -> Result<VerificationReport> {
    if primes.is_empty() {
        return Err(Error::Domain("at least one prime is required".into()));
    }
    let mut distinct: Vec<BigInt> = Vec::with_capacity(primes.len());
    for p in primes {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if precision < 30 {
        return Err(Error::Domain(format!("precision {precision} is below 30 digits")));
    }
    let top = 2 * model.dimension();
    let outcomes: Vec<DegreeOutcome> = (0..=top)
        .into_par_iter()
        .map(|i| check_degree(model, i, &distinct, precision))
        .collect();
    let (zeta_result, zeta) = zeta_check(model);

    let mut degrees = Vec::with_capacity(outcomes.len());
    let mut checks = Vec::new();
    for o in outcomes {
        degrees.push(o.row);
        checks.extend(o.checks);
    }
    checks.push(zeta_result);

    Ok(VerificationReport {
        model: ModelSummary {
            kind: model.kind(),
            dimension: model.dimension(),
            q: model.q().to_string(),
            betti: model.betti_numbers(),
            euler_characteristic: model.euler_characteristic(),
            polarization_witness: model.polarization_witness().map(|d| d.to_strings()),
            warnings: model.warnings().to_vec(),
        },
        primes: distinct.iter().map(BigInt::to_string).collect(),
        precision,
        degrees,
        checks,
        zeta,
    })
}
